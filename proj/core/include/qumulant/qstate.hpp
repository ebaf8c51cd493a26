// Exact linear algebra on pure and mixed multi-qubit states.
//
// Index convention used throughout: basis index i with binary digits
// b1 b2 ... bn (b1 most significant) represents |b1 b2 ... bn>, so
// particle 1 maps to the most significant bit. Particle indices in the
// public API are 1-based.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qumulant {

using cxd = std::complex<double>;

inline constexpr double kTol = 1e-10;        // equality / normalization
inline constexpr double kEigenTol = 1e-12;   // eigensolver convergence

namespace qstate {

enum class Axis : char { I = 'i', X = 'x', Y = 'y', Z = 'z' };

// Per-particle Pauli axis labels; length equals the register it applies to.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::vector<Axis> axes) : axes_(std::move(axes)) {}

    // Parses e.g. "xxzxx"; 'i' (or 'I') marks an identity position.
    static PauliString parse(std::string_view text);

    int size() const { return static_cast<int>(axes_.size()); }
    Axis axis(int particle) const { return axes_.at(particle - 1); }
    const std::vector<Axis>& axes() const { return axes_; }
    bool has_identity() const;
    bool all_identity() const;
    std::string str() const;

    // Restriction keeping the given particles, identity elsewhere.
    PauliString restricted_to(std::uint32_t particle_mask) const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    std::vector<Axis> axes_;
};

// Pure state of n qubits, 2^n amplitudes.
class StateVector {
public:
    explicit StateVector(int num_qubits);
    StateVector(int num_qubits, std::vector<cxd> amplitudes);
    static StateVector basis(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cxd>& amplitudes() const { return amps_; }
    cxd& operator[](std::size_t i) { return amps_[i]; }
    const cxd& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    void normalize();
    bool is_normalized(double tol = kTol) const;

    // <this|other>
    cxd inner(const StateVector& other) const;

    // Bit of `index` carried by the given particle (particle 1 = MSB).
    int bit(std::size_t index, int particle) const {
        return static_cast<int>((index >> (num_qubits_ - particle)) & 1u);
    }

private:
    int num_qubits_ = 0;
    std::vector<cxd> amps_;
};

// 2^n x 2^n Hermitian PSD unit-trace matrix (row-major storage).
class DensityMatrix {
public:
    explicit DensityMatrix(int num_qubits);
    DensityMatrix(int num_qubits, std::vector<cxd> entries);
    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix mixture(const std::vector<std::pair<double, StateVector>>& parts);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }
    cxd& at(std::size_t r, std::size_t c) { return m_[r * dim_ + c]; }
    const cxd& at(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }
    const std::vector<cxd>& entries() const { return m_; }

    cxd trace() const;
    bool is_hermitian(double tol = kTol) const;
    void check_valid(double tol = kTol) const;  // hermitian, unit trace, eigenvalues >= -tol

private:
    int num_qubits_ = 0;
    std::size_t dim_ = 0;
    std::vector<cxd> m_;
};

// One branch of a complete measurement.
struct Outcome {
    std::string label;
    double probability = 0.0;
    StateVector post_state;
};

StateVector tensor_product(const StateVector& a, const StateVector& b);

// New particle j carries what old particle perm[j-1] carried; perm is a
// bijection of 1..n. permute_particles(s, {2,1}) swaps particles 1 and 2.
StateVector permute_particles(const StateVector& s, const std::vector<int>& perm);

// <P> for a Hermitian Pauli product; throws if the imaginary residue
// exceeds tolerance (that signals a numeric bug, P being Hermitian).
double expectation(const StateVector& s, const PauliString& p);
double expectation(const DensityMatrix& rho, const PauliString& p);

// Matrix-free application of a Pauli string to a pure state.
StateVector apply_pauli(const StateVector& s, const PauliString& p);

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// S(rho) = -sum lambda log2 lambda, with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Applies a k-qubit unitary (k <= 3, row-major 2^k x 2^k) to the listed
// particles. Particles must be distinct and ascending; the first listed
// particle is the most significant bit of the local register.
StateVector apply_unitary(const StateVector& s, const std::vector<int>& particles,
                          const std::vector<cxd>& matrix);

// Projects the given particles onto |basis_state> and returns the branch
// probability together with the normalized post-state on the remaining
// particles (particles ascending). Probability 0 yields a zero post-state.
std::pair<double, StateVector> project(const StateVector& psi,
                                       const std::vector<int>& particles,
                                       const StateVector& basis_state);

// Same, but returns the raw (unnormalized) branch amplitudes.
StateVector project_unnormalized(const StateVector& psi, const std::vector<int>& particles,
                                 const StateVector& basis_state);

}  // namespace qstate
}  // namespace qumulant
