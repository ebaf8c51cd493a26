#include "qumulant/measures.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qumulant/linalg.hpp"

namespace qumulant::measures {

namespace {

// (sigma_y (x) sigma_y) |b1 b2> = -(-1)^(b1+b2) |~b1 ~b2>
std::vector<cxd> spin_flip_conjugate(const DensityMatrix& rho) {
    // rho~ = (y(x)y) rho* (y(x)y)
    const std::size_t d = 4;
    std::vector<cxd> out(d * d);
    auto sgn = [](std::size_t i) { return (std::popcount(i) & 1) ? -1.0 : 1.0; };
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            // entry (r,c) of rho~: sum over the flipped pair
            out[r * d + c] = sgn(r) * sgn(c) * std::conj(rho.at(r ^ 3, c ^ 3));
        }
    }
    return out;
}

double sqrt_clamped(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

// Descending square roots of the eigenvalues of rho rho~, computed from the
// similar Hermitian matrix sqrt(rho) rho~ sqrt(rho).
std::array<double, 4> concurrence_lambdas(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) throw std::invalid_argument("two-qubit density matrix required");
    const std::size_t d = 4;
    auto tilde = spin_flip_conjugate(rho);
    auto root = linalg::hermitian_function(rho.entries(), d, &sqrt_clamped);
    auto prod = linalg::matmul(linalg::matmul(root, tilde, d), root, d);
    auto lambda = linalg::hermitian_eigenvalues(prod, d);
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (lambda[i] < -1e-9) {
            throw std::runtime_error("rho rho~ produced a negative eigenvalue beyond tolerance");
        }
        out[i] = sqrt_clamped(lambda[i]);
    }
    return out;
}

}  // namespace

double concurrence_signed(const StateVector& psi) {
    if (psi.num_qubits() != 2) throw std::invalid_argument("two-qubit pure state required");
    // <psi| yy |psi*> = 2 (a01 a10 - a00 a11)^*
    cxd c{0, 0};
    for (std::size_t b = 0; b < 4; ++b) {
        const double sgn = (std::popcount(b) & 1) ? 1.0 : -1.0;
        c += sgn * std::conj(psi[b]) * std::conj(psi[b ^ 3]);
    }
    if (std::abs(c.imag()) > 1e-9) {
        throw std::runtime_error("signed concurrence has imaginary residue; state is not in the real class");
    }
    return c.real();
}

double wootters_concurrence(const DensityMatrix& rho) {
    const auto l = concurrence_lambdas(rho);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

TangleReport three_tangle(const StateVector& psi) {
    if (psi.num_qubits() != 3) throw std::invalid_argument("three-qubit pure state required");

    TangleReport rep;
    const auto rho_a = qstate::partial_trace(psi, {1});
    const double det_a =
        rho_a.at(0, 0).real() * rho_a.at(1, 1).real() - std::norm(rho_a.at(0, 1));
    rep.c_sq_a_bc = 4.0 * det_a;

    const auto rho_ab = qstate::partial_trace(psi, {1, 2});
    const auto rho_ac = qstate::partial_trace(psi, {1, 3});
    rep.lambda_ab = concurrence_lambdas(rho_ab);
    rep.lambda_ac = concurrence_lambdas(rho_ac);

    const double c_ab = std::max(0.0, rep.lambda_ab[0] - rep.lambda_ab[1] - rep.lambda_ab[2] - rep.lambda_ab[3]);
    const double c_ac = std::max(0.0, rep.lambda_ac[0] - rep.lambda_ac[1] - rep.lambda_ac[2] - rep.lambda_ac[3]);
    rep.c_sq_ab = c_ab * c_ab;
    rep.c_sq_ac = c_ac * c_ac;

    rep.tau = rep.c_sq_a_bc - rep.c_sq_ab - rep.c_sq_ac;
    rep.tau_pair_form = 2.0 * (rep.lambda_ab[0] * rep.lambda_ab[1] + rep.lambda_ac[0] * rep.lambda_ac[1]);
    return rep;
}

double w_avg_sq_concurrence(int n) {
    if (n < 2) throw std::invalid_argument("W state needs at least 2 particles");
    return 4.0 / (static_cast<double>(n) * n);
}

}  // namespace qumulant::measures
