#pragma once

// Finite compressions of composition operators on D_alpha.
//
// In the orthonormal basis f_n = z^n / sqrt(weight(n)) the compression of
// C_phi to polynomials of degree < N has entries
//
//     T(m, n) = sqrt(weight(m) / weight(n)) * [z^m] phi^n,     0 <= m, n < N.
//
// Because weight(n, gamma) = weight(n, alpha)^{1-t} weight(n, beta)^t exactly
// when gamma = (1-t) alpha + t beta, the three compressions at alpha, gamma
// and beta are D^{1/2} C D^{-1/2} for one fixed matrix C and a log-linear
// family of diagonal weights, so ||T_gamma|| <= ||T_alpha||^{1-t} ||T_beta||^t
// holds for the finite sections themselves.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "oplab/boundary_analysis.hpp"
#include "oplab/error.hpp"
#include "oplab/kernels.hpp"
#include "oplab/power_series.hpp"
#include "oplab/weighted_spaces.hpp"

namespace oplab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class TruncatedOperator {
public:
    TruncatedOperator(Matrix entries, WeightIndex alpha, std::vector<SymbolMap> symbols)
        : entries_(std::move(entries)), alpha_(alpha), symbols_(std::move(symbols)) {}

    const Matrix& entries() const noexcept { return entries_; }
    WeightIndex alpha() const noexcept { return alpha_; }
    std::size_t order() const noexcept { return static_cast<std::size_t>(entries_.cols()); }
    // phi for C_phi, (phi, psi) for C_phi - C_psi.
    std::span<const SymbolMap> symbols() const noexcept { return symbols_; }

private:
    Matrix entries_;
    WeightIndex alpha_;
    std::vector<SymbolMap> symbols_;
};

// sqrt(weight(n)) a_n: coordinates of f in the orthonormal monomial basis.
inline Vector orthonormal_coordinates(const CoefficientVector& f, WeightIndex alpha, std::size_t n_max) {
    Vector x = Vector::Zero(static_cast<Eigen::Index>(n_max));
    for (std::size_t n = 0; n < std::min(n_max, f.size()); ++n) {
        x(static_cast<Eigen::Index>(n)) = std::sqrt(weight(n, alpha)) * f[n];
    }
    return x;
}

namespace detail {

inline Matrix compression_matrix(const CoefficientVector& taylor, WeightIndex alpha, TruncationOrder order) {
    const auto n_max = static_cast<Eigen::Index>(order.value());
    std::vector<double> sqrt_w(order.value());
    for (std::size_t n = 0; n < sqrt_w.size(); ++n) {
        sqrt_w[n] = std::sqrt(weight(n, alpha));
    }
    Matrix entries(n_max, n_max);
    const auto column_powers = powers(taylor, order.value(), order);
    for (Eigen::Index n = 0; n < n_max; ++n) {
        const auto& col = column_powers[static_cast<std::size_t>(n)];
        for (Eigen::Index m = 0; m < n_max; ++m) {
            entries(m, n) = (sqrt_w[static_cast<std::size_t>(m)] / sqrt_w[static_cast<std::size_t>(n)]) *
                            col[static_cast<std::size_t>(m)];
        }
    }
    return entries;
}

}  // namespace detail

inline TruncatedOperator assemble(const SymbolMap& phi, WeightIndex alpha, TruncationOrder order) {
    return {detail::compression_matrix(phi.taylor(order), alpha, order), alpha, {phi}};
}

// Compression of C_phi - C_psi in the same basis.
inline TruncatedOperator assemble_difference(const SymbolMap& phi, const SymbolMap& psi, WeightIndex alpha,
                                             TruncationOrder order) {
    Matrix entries = detail::compression_matrix(phi.taylor(order), alpha, order) -
                     detail::compression_matrix(psi.taylor(order), alpha, order);
    return {std::move(entries), alpha, {phi, psi}};
}

// All singular values, nonincreasing.
inline std::vector<double> singular_values(const TruncatedOperator& op) {
    Eigen::BDCSVD<Matrix> svd(op.entries());
    if (svd.info() != Eigen::Success) {
        throw no_convergence("singular value decomposition failed for an order-" + std::to_string(op.order()) +
                             " compression (Eigen info " + std::to_string(static_cast<int>(svd.info())) + ")");
    }
    const auto& values = svd.singularValues();
    return {values.data(), values.data() + values.size()};
}

// Largest singular value.  Computed by a direct bidiagonal SVD, accurate to a
// few ulps of the largest singular value; `tol` is the relative accuracy the
// caller needs and must not be below that floor.
inline double operator_norm(const TruncatedOperator& op, double tol = 1e-12) {
    if (!(tol >= 64.0 * std::numeric_limits<double>::epsilon())) {
        throw invalid_argument("operator norm tolerance below the direct SVD accuracy floor");
    }
    return singular_values(op).front();
}

// Top-k singular values, nonincreasing.
inline std::vector<double> singular_value_profile(const TruncatedOperator& op, std::size_t k) {
    if (k == 0 || k > op.order()) {
        throw invalid_argument("profile length must satisfy 1 <= k <= N");
    }
    auto values = singular_values(op);
    values.resize(k);
    return values;
}

// ---------------------------------------------------------------------------
// Adjoint identity C_phi^* K_w^(1) = conj(phi'(w)) K_{phi(w)}^(1) on truncations.
//
// With P the projection onto degree < N and x the full orthonormal coordinate
// vector of K_w^(1), the truncated residual is P C^* (I - P) x, whose n-th
// entry is weight(n)^{-1/2} |sum_{m>=N} [z^m]phi^n m w^{m-1}|.  For a disk
// self-map ||phi^n||_{H^2} <= 1, so Cauchy-Schwarz bounds that sum by
// S = (sum_{m>=N} m^2 |w|^{2(m-1)})^{1/2} and the residual by
//
//     sqrt(sum_{1<=n<N} n^{alpha-1}) * S.

inline double adjoint_tail_bound(double w_abs, WeightIndex alpha, TruncationOrder order) {
    const std::size_t n_max = order.value();
    double inverse_weights = 0.0;
    for (std::size_t n = 1; n < n_max; ++n) {
        inverse_weights += 1.0 / weight(n, alpha);
    }
    const double tail = weighted_geometric_tail(2.0, w_abs * w_abs, n_max - 1);
    return std::sqrt(inverse_weights) * std::sqrt(tail);
}

struct AdjointCheck {
    double residual;
    double tail_bound;
    // Floating-point allowance N eps (||T||_F ||x|| + ||y||) for the matrix-vector product.
    double rounding_allowance;

    double bound() const noexcept { return tail_bound + rounding_allowance; }
    bool within_bound() const noexcept { return residual <= bound(); }
};

inline AdjointCheck adjoint_kernel_check(const SymbolMap& phi, complex w, WeightIndex alpha, TruncationOrder order) {
    const KernelSpec spec(w, alpha, KernelOrder::derivative);
    const auto op = assemble(phi, alpha, order);
    const std::size_t n_max = order.value();
    const Vector x = orthonormal_coordinates(kernel_coeffs(spec, order), alpha, n_max);
    const Vector y = orthonormal_coordinates(adjoint_on_deriv_kernel(phi.at(w), spec, order), alpha, n_max);
    const Vector lhs = op.entries().adjoint() * x;
    AdjointCheck out{};
    out.residual = (lhs - y).norm();
    out.tail_bound = adjoint_tail_bound(std::abs(w), alpha, order);
    out.rounding_allowance = static_cast<double>(n_max) * std::numeric_limits<double>::epsilon() *
                             (op.entries().norm() * x.norm() + y.norm());
    return out;
}

// ---------------------------------------------------------------------------

struct InterpolationCheck {
    WeightIndex gamma;
    double norm_alpha;
    double norm_beta;
    double lhs;  // ||T_gamma||
    double rhs;  // ||T_alpha||^{1-t} ||T_beta||^t
    double margin;
};

namespace detail {

template <typename Assemble>
InterpolationCheck interpolation_check(Assemble&& make, WeightIndex alpha, WeightIndex beta, double t) {
    const WeightIndex gamma = interpolation_gamma(alpha, beta, t);
    const double n_alpha = operator_norm(make(alpha));
    const double n_beta = operator_norm(make(beta));
    const double lhs = operator_norm(make(gamma));
    const double rhs = std::pow(n_alpha, 1.0 - t) * std::pow(n_beta, t);
    return {gamma, n_alpha, n_beta, lhs, rhs, rhs - lhs};
}

}  // namespace detail

inline InterpolationCheck interpolation_inequality_check(const SymbolMap& phi, WeightIndex alpha, WeightIndex beta,
                                                         double t, TruncationOrder order) {
    return detail::interpolation_check([&](WeightIndex a) { return assemble(phi, a, order); }, alpha, beta, t);
}

// Same check for the difference C_phi - C_psi.
inline InterpolationCheck interpolation_inequality_check(const SymbolMap& phi, const SymbolMap& psi,
                                                         WeightIndex alpha, WeightIndex beta, double t,
                                                         TruncationOrder order) {
    return detail::interpolation_check([&](WeightIndex a) { return assemble_difference(phi, psi, a, order); },
                                       alpha, beta, t);
}

// ---------------------------------------------------------------------------

struct LowerBoundScan {
    double best = 0.0;  // kernel obstruction level
    complex witness{};
    std::vector<ScanRow> rows;   // all paths, in order
    std::vector<double> bound;   // running maximum of kernel_diff over rows
};

// Largest ||(C_phi - C_psi)^* K_w^(1)||^2 / ||K_w^(1)||^2 over every path point.
inline LowerBoundScan essential_lower_bound_scan(const SymbolMap& phi, const SymbolMap& psi, WeightIndex alpha,
                                                 std::span<const ApproachPath> paths, unsigned threads = 1) {
    if (paths.empty()) {
        throw invalid_argument("lower bound scan needs at least one path");
    }
    LowerBoundScan out;
    bool first = true;
    for (const auto& path : paths) {
        for (const auto& row : boundary_scan(phi, psi, alpha, path, threads)) {
            if (first || row.kernel_diff > out.best) {
                out.best = row.kernel_diff;
                out.witness = row.w;
                first = false;
            }
            out.rows.push_back(row);
            out.bound.push_back(out.best);
        }
    }
    return out;
}

}  // namespace oplab
