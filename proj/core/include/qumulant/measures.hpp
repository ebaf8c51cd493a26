// Comparison baselines: signed two-qubit concurrence, Wootters concurrence
// for mixed pairs, the 3-tangle, and the W-state average squared concurrence.

#pragma once

#include <array>

#include "qumulant/qstate.hpp"

namespace qumulant::measures {

using qstate::DensityMatrix;
using qstate::StateVector;

// <psi| sigma_y (x) sigma_y |psi*>. Real for the states considered here;
// throws if the imaginary residue exceeds tolerance.
double concurrence_signed(const StateVector& psi);

// max(0, l1 - l2 - l3 - l4), li the descending square roots of the
// eigenvalues of rho rho~, rho~ = (y(x)y) rho* (y(x)y). The non-Hermitian
// product is diagonalized as sqrt(rho) rho~ sqrt(rho), a similar Hermitian
// matrix with the same spectrum.
double wootters_concurrence(const DensityMatrix& rho);

struct TangleReport {
    double tau = 0.0;          // c_sq_a_bc - c_sq_ab - c_sq_ac
    double tau_pair_form = 0.0;  // 2 (l1l2|AB + l1l2|AC), the equivalent pair expression
    double c_sq_a_bc = 0.0;    // 4 det(rho_A); the standard pure-state A|(BC) tangle
    double c_sq_ab = 0.0;
    double c_sq_ac = 0.0;
    std::array<double, 4> lambda_ab{};  // descending
    std::array<double, 4> lambda_ac{};
};

// 3-qubit pure states only. Both equivalent expressions for tau are
// evaluated and stored.
TangleReport three_tangle(const StateVector& psi);

// Average squared pairwise concurrence of the N-particle W state: 4/N^2.
double w_avg_sq_concurrence(int n);

}  // namespace qumulant::measures
