#include "qumulant/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qumulant/linalg.hpp"

namespace qumulant::qstate {

namespace {

void check_particle(int particle, int n) {
    if (particle < 1 || particle > n) {
        throw std::invalid_argument("particle index " + std::to_string(particle) +
                                    " out of range 1.." + std::to_string(n));
    }
}

void check_ascending_particles(const std::vector<int>& particles, int n) {
    if (particles.empty()) throw std::invalid_argument("empty particle set");
    int prev = 0;
    for (int p : particles) {
        check_particle(p, n);
        if (p <= prev) throw std::invalid_argument("particle list must be strictly ascending");
        prev = p;
    }
}

struct PauliMasks {
    std::size_t flip = 0;   // bits toggled by x or y
    std::size_t phase = 0;  // bits contributing (-1)^bit (y or z)
    int num_y = 0;
};

PauliMasks masks_for(const PauliString& p, int n) {
    if (p.size() != n) throw std::invalid_argument("Pauli string length does not match register");
    PauliMasks m;
    for (int k = 1; k <= n; ++k) {
        std::size_t bit = std::size_t{1} << (n - k);
        switch (p.axis(k)) {
            case Axis::I: break;
            case Axis::X: m.flip |= bit; break;
            case Axis::Y: m.flip |= bit; m.phase |= bit; ++m.num_y; break;
            case Axis::Z: m.phase |= bit; break;
        }
    }
    return m;
}

cxd i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

double sign_of(std::size_t index, std::size_t mask) {
    return (std::popcount(index & mask) & 1) ? -1.0 : 1.0;
}

}  // namespace

// ---- PauliString ----------------------------------------------------------

PauliString PauliString::parse(std::string_view text) {
    std::vector<Axis> axes;
    axes.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'i': case 'I': axes.push_back(Axis::I); break;
            case 'x': case 'X': axes.push_back(Axis::X); break;
            case 'y': case 'Y': axes.push_back(Axis::Y); break;
            case 'z': case 'Z': axes.push_back(Axis::Z); break;
            default:
                throw std::invalid_argument(std::string("bad Pauli axis character '") + c + "'");
        }
    }
    return PauliString(std::move(axes));
}

bool PauliString::has_identity() const {
    return std::any_of(axes_.begin(), axes_.end(), [](Axis a) { return a == Axis::I; });
}

bool PauliString::all_identity() const {
    return std::all_of(axes_.begin(), axes_.end(), [](Axis a) { return a == Axis::I; });
}

std::string PauliString::str() const {
    std::string s;
    s.reserve(axes_.size());
    for (Axis a : axes_) s.push_back(static_cast<char>(a));
    return s;
}

PauliString PauliString::restricted_to(std::uint32_t particle_mask) const {
    std::vector<Axis> axes(axes_.size(), Axis::I);
    for (std::size_t k = 0; k < axes_.size(); ++k) {
        if (particle_mask & (1u << k)) axes[k] = axes_[k];
    }
    return PauliString(std::move(axes));
}

// ---- StateVector ----------------------------------------------------------

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 24) throw std::invalid_argument("bad qubit count");
    amps_.assign(std::size_t{1} << num_qubits, cxd{0, 0});
    amps_[0] = cxd{1, 0};
}

StateVector::StateVector(int num_qubits, std::vector<cxd> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits < 1 || num_qubits > 24) throw std::invalid_argument("bad qubit count");
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude vector has wrong length");
    }
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
    s.amps_[0] = cxd{0, 0};
    s.amps_[index] = cxd{1, 0};
    return s;
}

double StateVector::norm() const {
    double n2 = 0.0;
    for (const cxd& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

void StateVector::normalize() {
    double n = norm();
    if (n < 1e-300) throw std::runtime_error("cannot normalize zero vector");
    for (cxd& a : amps_) a /= n;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

cxd StateVector::inner(const StateVector& other) const {
    if (num_qubits_ != other.num_qubits_) throw std::invalid_argument("size mismatch");
    cxd r{0, 0};
    for (std::size_t i = 0; i < amps_.size(); ++i) r += std::conj(amps_[i]) * other.amps_[i];
    return r;
}

// ---- DensityMatrix --------------------------------------------------------

DensityMatrix::DensityMatrix(int num_qubits)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits) {
    if (num_qubits < 1 || num_qubits > 12) throw std::invalid_argument("bad qubit count");
    m_.assign(dim_ * dim_, cxd{0, 0});
}

DensityMatrix::DensityMatrix(int num_qubits, std::vector<cxd> entries)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits), m_(std::move(entries)) {
    if (m_.size() != dim_ * dim_) throw std::invalid_argument("entry vector has wrong length");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    DensityMatrix rho(psi.num_qubits());
    for (std::size_t r = 0; r < rho.dim_; ++r) {
        for (std::size_t c = 0; c < rho.dim_; ++c) {
            rho.at(r, c) = psi[r] * std::conj(psi[c]);
        }
    }
    return rho;
}

DensityMatrix DensityMatrix::mixture(const std::vector<std::pair<double, StateVector>>& parts) {
    if (parts.empty()) throw std::invalid_argument("empty mixture");
    DensityMatrix rho(parts.front().second.num_qubits());
    for (const auto& [w, psi] : parts) {
        if (psi.num_qubits() != rho.num_qubits_) throw std::invalid_argument("size mismatch in mixture");
        for (std::size_t r = 0; r < rho.dim_; ++r) {
            for (std::size_t c = 0; c < rho.dim_; ++c) {
                rho.at(r, c) += w * psi[r] * std::conj(psi[c]);
            }
        }
    }
    return rho;
}

cxd DensityMatrix::trace() const {
    cxd t{0, 0};
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

bool DensityMatrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
        }
    }
    return true;
}

void DensityMatrix::check_valid(double tol) const {
    if (!is_hermitian(tol)) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(trace() - cxd{1, 0}) > tol) throw std::invalid_argument("density matrix trace is not 1");
    auto lambda = linalg::hermitian_eigenvalues(m_, dim_);
    if (!lambda.empty() && lambda.back() < -tol) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

// ---- operations -----------------------------------------------------------

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    StateVector r(a.num_qubits() + b.num_qubits());
    r[0] = cxd{0, 0};
    const std::size_t db = b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < db; ++j) {
            r[i * db + j] = a[i] * b[j];
        }
    }
    return r;
}

StateVector permute_particles(const StateVector& s, const std::vector<int>& perm) {
    const int n = s.num_qubits();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation length mismatch");
    std::vector<bool> seen(n + 1, false);
    for (int p : perm) {
        check_particle(p, n);
        if (seen[p]) throw std::invalid_argument("permutation is not a bijection");
        seen[p] = true;
    }
    StateVector r(n);
    r[0] = cxd{0, 0};
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t j = 0;
        for (int q = 1; q <= n; ++q) {
            if (s.bit(i, perm[q - 1])) j |= std::size_t{1} << (n - q);
        }
        r[j] = s[i];
    }
    return r;
}

StateVector apply_pauli(const StateVector& s, const PauliString& p) {
    const auto m = masks_for(p, s.num_qubits());
    const cxd global = i_power(m.num_y);
    StateVector r(s.num_qubits());
    r[0] = cxd{0, 0};
    for (std::size_t i = 0; i < s.dim(); ++i) {
        r[i ^ m.flip] += global * sign_of(i, m.phase) * s[i];
    }
    return r;
}

double expectation(const StateVector& s, const PauliString& p) {
    const auto m = masks_for(p, s.num_qubits());
    const cxd global = i_power(m.num_y);
    cxd e{0, 0};
    for (std::size_t i = 0; i < s.dim(); ++i) {
        e += std::conj(s[i ^ m.flip]) * global * sign_of(i, m.phase) * s[i];
    }
    if (std::abs(e.imag()) > 1e-9) {
        throw std::runtime_error("expectation of Hermitian observable has imaginary residue");
    }
    return e.real();
}

double expectation(const DensityMatrix& rho, const PauliString& p) {
    const auto m = masks_for(p, rho.num_qubits());
    const cxd global = i_power(m.num_y);
    cxd e{0, 0};
    for (std::size_t j = 0; j < rho.dim(); ++j) {
        e += rho.at(j, j ^ m.flip) * global * sign_of(j, m.phase);
    }
    if (std::abs(e.imag()) > 1e-9) {
        throw std::runtime_error("expectation of Hermitian observable has imaginary residue");
    }
    return e.real();
}

namespace {

// Splits a global index into (kept bits, environment bits) given the kept
// particle list; both sub-registers keep the ascending-particle order.
struct Splitter {
    int n;
    std::vector<int> keep;  // ascending
    std::vector<int> env;   // ascending complement

    Splitter(int num_qubits, const std::vector<int>& kept) : n(num_qubits), keep(kept) {
        check_ascending_particles(kept, num_qubits);
        std::vector<bool> is_kept(n + 1, false);
        for (int p : kept) is_kept[p] = true;
        for (int p = 1; p <= n; ++p) {
            if (!is_kept[p]) env.push_back(p);
        }
    }

    std::size_t merge(std::size_t kept_bits, std::size_t env_bits) const {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < keep.size(); ++a) {
            if (kept_bits & (std::size_t{1} << (keep.size() - 1 - a))) {
                idx |= std::size_t{1} << (n - keep[a]);
            }
        }
        for (std::size_t a = 0; a < env.size(); ++a) {
            if (env_bits & (std::size_t{1} << (env.size() - 1 - a))) {
                idx |= std::size_t{1} << (n - env[a]);
            }
        }
        return idx;
    }
};

}  // namespace

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep) {
    Splitter sp(psi.num_qubits(), keep);
    const std::size_t dk = std::size_t{1} << sp.keep.size();
    const std::size_t de = std::size_t{1} << sp.env.size();
    DensityMatrix rho(static_cast<int>(sp.keep.size()));
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            cxd v{0, 0};
            for (std::size_t e = 0; e < de; ++e) {
                v += psi[sp.merge(r, e)] * std::conj(psi[sp.merge(c, e)]);
            }
            rho.at(r, c) = v;
        }
    }
    return rho;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    Splitter sp(rho.num_qubits(), keep);
    const std::size_t dk = std::size_t{1} << sp.keep.size();
    const std::size_t de = std::size_t{1} << sp.env.size();
    DensityMatrix out(static_cast<int>(sp.keep.size()));
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            cxd v{0, 0};
            for (std::size_t e = 0; e < de; ++e) {
                v += rho.at(sp.merge(r, e), sp.merge(c, e));
            }
            out.at(r, c) = v;
        }
    }
    return out;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    auto lambda = linalg::hermitian_eigenvalues(rho.entries(), rho.dim());
    double s = 0.0;
    for (double l : lambda) {
        if (l < -1e-9) throw std::invalid_argument("density matrix has a negative eigenvalue");
        if (l > 1e-15) s -= l * std::log2(l);
    }
    return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(a.inner(b));
}

StateVector apply_unitary(const StateVector& s, const std::vector<int>& particles,
                          const std::vector<cxd>& matrix) {
    const int n = s.num_qubits();
    check_ascending_particles(particles, n);
    const std::size_t k = particles.size();
    if (k > 3) throw std::invalid_argument("apply_unitary supports at most 3 particles");
    const std::size_t dk = std::size_t{1} << k;
    if (matrix.size() != dk * dk) throw std::invalid_argument("matrix size mismatch");

    std::size_t pmask = 0;
    std::vector<std::size_t> scatter(dk, 0);
    for (std::size_t a = 0; a < k; ++a) pmask |= std::size_t{1} << (n - particles[a]);
    for (std::size_t sidx = 0; sidx < dk; ++sidx) {
        std::size_t g = 0;
        for (std::size_t a = 0; a < k; ++a) {
            if (sidx & (std::size_t{1} << (k - 1 - a))) g |= std::size_t{1} << (n - particles[a]);
        }
        scatter[sidx] = g;
    }

    StateVector r = s;
    std::vector<cxd> in(dk), out(dk);
    for (std::size_t base = 0; base < s.dim(); ++base) {
        if (base & pmask) continue;
        for (std::size_t a = 0; a < dk; ++a) in[a] = s[base | scatter[a]];
        for (std::size_t a = 0; a < dk; ++a) {
            cxd v{0, 0};
            for (std::size_t b = 0; b < dk; ++b) v += matrix[a * dk + b] * in[b];
            out[a] = v;
        }
        for (std::size_t a = 0; a < dk; ++a) r[base | scatter[a]] = out[a];
    }
    return r;
}

StateVector project_unnormalized(const StateVector& psi, const std::vector<int>& particles,
                                 const StateVector& basis_state) {
    Splitter sp(psi.num_qubits(), particles);
    if (basis_state.num_qubits() != static_cast<int>(sp.keep.size())) {
        throw std::invalid_argument("projector size mismatch");
    }
    if (sp.env.empty()) throw std::invalid_argument("cannot project away every particle");
    const std::size_t dk = basis_state.dim();
    const std::size_t de = std::size_t{1} << sp.env.size();
    std::vector<cxd> rest(de, cxd{0, 0});
    for (std::size_t e = 0; e < de; ++e) {
        cxd v{0, 0};
        for (std::size_t s = 0; s < dk; ++s) {
            v += std::conj(basis_state[s]) * psi[sp.merge(s, e)];
        }
        rest[e] = v;
    }
    return StateVector(static_cast<int>(sp.env.size()), std::move(rest));
}

std::pair<double, StateVector> project(const StateVector& psi, const std::vector<int>& particles,
                                       const StateVector& basis_state) {
    StateVector post = project_unnormalized(psi, particles, basis_state);
    double p = 0.0;
    for (std::size_t i = 0; i < post.dim(); ++i) p += std::norm(post[i]);
    if (p > 1e-24) post.normalize();
    return {p, post};
}

}  // namespace qumulant::qstate
