// Dense Hermitian eigenproblems via cyclic Jacobi rotations. Sizes here
// stay small (<= 128), where Jacobi is unconditionally stable and needs
// no external dependency.

#pragma once

#include <cstddef>
#include <vector>

#include "qumulant/qstate.hpp"

namespace qumulant::linalg {

struct EigenSystem {
    std::vector<double> values;   // descending
    std::vector<cxd> vectors;     // column k = eigenvector of values[k], row-major dim x dim
    std::size_t dim = 0;

    const cxd& vector(std::size_t k, std::size_t i) const { return vectors[i * dim + k]; }
};

// matrix: row-major dim x dim, Hermitian within `hermitian_tol` (checked).
EigenSystem hermitian_eigensystem(const std::vector<cxd>& matrix, std::size_t dim,
                                  double convergence_tol = kEigenTol,
                                  double hermitian_tol = kTol);

std::vector<double> hermitian_eigenvalues(const std::vector<cxd>& matrix, std::size_t dim);
std::vector<double> hermitian_eigenvalues(const qstate::DensityMatrix& m);

// V diag(f(lambda)) V^dagger for a Hermitian matrix.
std::vector<cxd> hermitian_function(const std::vector<cxd>& matrix, std::size_t dim,
                                    double (*f)(double));

std::vector<cxd> matmul(const std::vector<cxd>& a, const std::vector<cxd>& b, std::size_t dim);

}  // namespace qumulant::linalg
