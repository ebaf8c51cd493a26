#include "qumulant/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qumulant::linalg {

namespace {

double off_diagonal_norm(const std::vector<cxd>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            s += std::norm(a[p * n + q]);
        }
    }
    return std::sqrt(2.0 * s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const std::vector<cxd>& matrix, std::size_t dim,
                                  double convergence_tol, double hermitian_tol) {
    if (matrix.size() != dim * dim) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r; c < dim; ++c) {
            if (std::abs(matrix[r * dim + c] - std::conj(matrix[c * dim + r])) > hermitian_tol) {
                throw std::invalid_argument("matrix is not Hermitian");
            }
        }
    }

    std::vector<cxd> a = matrix;
    std::vector<cxd> v(dim * dim, cxd{0, 0});
    for (std::size_t i = 0; i < dim; ++i) v[i * dim + i] = cxd{1, 0};

    double scale = 0.0;
    for (std::size_t i = 0; i < dim; ++i) scale = std::max(scale, std::abs(a[i * dim + i]));
    scale = std::max(scale, off_diagonal_norm(a, dim));
    const double stop = convergence_tol * std::max(1.0, scale);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a, dim) <= stop) break;
        for (std::size_t p = 0; p < dim; ++p) {
            for (std::size_t q = p + 1; q < dim; ++q) {
                const cxd apq = a[p * dim + q];
                const double mag = std::abs(apq);
                if (mag <= stop / (dim * dim)) continue;

                const double app = a[p * dim + p].real();
                const double aqq = a[q * dim + q].real();
                const cxd phase = apq / mag;  // e^{i phi}

                // tan(2theta) = 2|apq| / (app - aqq), stable branch
                double t;
                const double diff = app - aqq;
                if (std::abs(diff) < 1e-300 * mag) {
                    t = 1.0;
                } else {
                    const double tau = diff / (2.0 * mag);
                    t = ((tau >= 0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: col_p' = c col_p + s e^{-i phi} col_q,
                //          col_q' = -s e^{i phi} col_p + c col_q.
                const cxd se_m = s * std::conj(phase);
                const cxd se_p = s * phase;
                for (std::size_t r = 0; r < dim; ++r) {
                    const cxd arp = a[r * dim + p];
                    const cxd arq = a[r * dim + q];
                    a[r * dim + p] = c * arp + se_m * arq;
                    a[r * dim + q] = -se_p * arp + c * arq;
                }
                // Rows: row_p' = c row_p + s e^{i phi} row_q, etc.
                for (std::size_t col = 0; col < dim; ++col) {
                    const cxd apc = a[p * dim + col];
                    const cxd aqc = a[q * dim + col];
                    a[p * dim + col] = c * apc + se_p * aqc;
                    a[q * dim + col] = -se_m * apc + c * aqc;
                }
                a[p * dim + q] = cxd{0, 0};
                a[q * dim + p] = cxd{0, 0};
                a[p * dim + p] = cxd{a[p * dim + p].real(), 0};
                a[q * dim + q] = cxd{a[q * dim + q].real(), 0};

                for (std::size_t r = 0; r < dim; ++r) {
                    const cxd vrp = v[r * dim + p];
                    const cxd vrq = v[r * dim + q];
                    v[r * dim + p] = c * vrp + se_m * vrq;
                    v[r * dim + q] = -se_p * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a[i * dim + i].real() > a[j * dim + j].real();
    });

    EigenSystem out;
    out.dim = dim;
    out.values.resize(dim);
    out.vectors.assign(dim * dim, cxd{0, 0});
    for (std::size_t k = 0; k < dim; ++k) {
        out.values[k] = a[order[k] * dim + order[k]].real();
        for (std::size_t i = 0; i < dim; ++i) {
            out.vectors[i * dim + k] = v[i * dim + order[k]];
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const std::vector<cxd>& matrix, std::size_t dim) {
    return hermitian_eigensystem(matrix, dim).values;
}

std::vector<double> hermitian_eigenvalues(const qstate::DensityMatrix& m) {
    return hermitian_eigenvalues(m.entries(), m.dim());
}

std::vector<cxd> hermitian_function(const std::vector<cxd>& matrix, std::size_t dim,
                                    double (*f)(double)) {
    EigenSystem es = hermitian_eigensystem(matrix, dim);
    std::vector<cxd> out(dim * dim, cxd{0, 0});
    for (std::size_t k = 0; k < dim; ++k) {
        const double fk = f(es.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t r = 0; r < dim; ++r) {
            const cxd vr = es.vectors[r * dim + k];
            for (std::size_t c = 0; c < dim; ++c) {
                out[r * dim + c] += fk * vr * std::conj(es.vectors[c * dim + k]);
            }
        }
    }
    return out;
}

std::vector<cxd> matmul(const std::vector<cxd>& a, const std::vector<cxd>& b, std::size_t dim) {
    std::vector<cxd> out(dim * dim, cxd{0, 0});
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t k = 0; k < dim; ++k) {
            const cxd ark = a[r * dim + k];
            if (ark == cxd{0, 0}) continue;
            for (std::size_t c = 0; c < dim; ++c) {
                out[r * dim + c] += ark * b[k * dim + c];
            }
        }
    }
    return out;
}

}  // namespace qumulant::linalg
