#pragma once

// Reproducing kernels of D_alpha.
//
// Matching <f, K> = sum weight(n) a_n conj(b_n) against f(w) = sum a_n w^n and
// f'(w) = sum n a_n w^{n-1} gives the kernel coefficients
//
//     point evaluation       K_w:      b_0 = 1, b_n = n^{alpha-1} conj(w)^n
//     derivative evaluation  K_w^(1):  b_0 = 0, b_n = n^{alpha}   conj(w)^{n-1}
//
// and hence the derivative-kernel Gram entries
//
//     <K_v^(1), K_w^(1)> = sum_{n>=1} n^{1+alpha} (conj(v) w)^{n-1}.
//
// Closed forms exist for alpha = -1, 0, 1; every other alpha is summed as a
// series truncated where an explicit tail bound drops below the requested
// tolerance.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "oplab/error.hpp"
#include "oplab/power_series.hpp"
#include "oplab/weighted_spaces.hpp"

namespace oplab {

enum class KernelOrder { point = 0, derivative = 1 };

struct KernelSpec {
    KernelSpec(complex w_, WeightIndex alpha_, KernelOrder order_) : w(w_), alpha(alpha_), order(order_) {
        if (!(std::abs(w_) < 1.0)) {
            throw invalid_argument("w must lie in the open disk");
        }
    }

    complex w;
    WeightIndex alpha;
    KernelOrder order;
};

inline CoefficientVector kernel_coeffs(const KernelSpec& spec, TruncationOrder order) {
    const std::size_t n_max = order.value();
    const complex wbar = std::conj(spec.w);
    const double a = spec.alpha.alpha();
    std::vector<complex> b(n_max);
    if (spec.order == KernelOrder::point) {
        b[0] = 1.0;
        complex wpow = 1.0;
        for (std::size_t n = 1; n < n_max; ++n) {
            wpow *= wbar;
            b[n] = std::pow(static_cast<double>(n), a - 1.0) * wpow;
        }
    } else {
        complex wpow = 1.0;
        for (std::size_t n = 1; n < n_max; ++n) {
            b[n] = std::pow(static_cast<double>(n), a) * wpow;
            wpow *= wbar;
        }
    }
    return CoefficientVector(std::move(b));
}

// |<f, K>_alpha - f(w)| (point) or |<f, K^(1)>_alpha - f'(w)| (derivative).
// Exact up to rounding when f is a polynomial of length <= N.
inline double reproducing_check(const CoefficientVector& f, const KernelSpec& spec, TruncationOrder order) {
    if (f.size() > order.value()) {
        throw invalid_argument("reproducing check needs len(f) <= N");
    }
    const complex paired = inner_product(f, kernel_coeffs(spec, order), spec.alpha);
    const complex direct = spec.order == KernelOrder::point ? f(spec.w) : f.derivative(spec.w);
    return std::abs(paired - direct);
}

// ---------------------------------------------------------------------------
// Series sum_{n>=1} n^p x^{n-1} with |x| < 1.

// Upper bound on sum_{k>n} k^p r^{k-1} for 0 <= r < 1.  From k = n+1 on the
// term ratio ((k+1)/k)^p r is bounded by q = ((n+2)/(n+1))^max(p,0) r, so the
// tail is dominated by a geometric series; +infinity while q >= 1.
inline double weighted_geometric_tail(double p, double r, std::size_t n) {
    if (r == 0.0) {
        return n >= 1 ? 0.0 : 1.0;
    }
    const double k = static_cast<double>(n) + 1.0;
    const double q = p > 0.0 ? r * std::pow((k + 1.0) / k, p) : r;
    if (!(q < 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double first = std::exp(p * std::log(k) + (k - 1.0) * std::log(r));
    return first / (1.0 - q);
}

inline constexpr std::size_t kMaxSeriesTerms = std::size_t{1} << 27;

// Smallest N with weighted_geometric_tail(p, r, N) < eps: doubling, then
// bisection (the bound is monotone once it is finite).
inline std::size_t truncation_for(double p, double r, double eps) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw invalid_argument("series radius must lie in [0, 1)");
    }
    if (!(eps > 0.0)) {
        throw invalid_argument("series tolerance must be positive");
    }
    std::size_t hi = 1;
    while (!(weighted_geometric_tail(p, r, hi) < eps)) {
        if (hi >= kMaxSeriesTerms) {
            throw no_convergence("series needs more than 2^27 terms at radius " + std::to_string(r));
        }
        hi *= 2;
    }
    std::size_t lo = hi / 2;  // tail(lo) >= eps, or lo == 0
    if (lo == 0) {
        return hi;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (weighted_geometric_tail(p, r, mid) < eps) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

struct SeriesSum {
    complex value;
    std::size_t terms;
    double tail_bound;
};

namespace detail {

// Neumaier-compensated complex accumulator.
class CompensatedSum {
public:
    void add(complex term) {
        add_part(sum_re_, comp_re_, term.real());
        add_part(sum_im_, comp_im_, term.imag());
    }
    complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

private:
    static void add_part(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
};

inline complex weighted_geometric_partial(double p, complex x, std::size_t terms) {
    CompensatedSum acc;
    const double r = std::abs(x);
    const double theta = std::arg(x);
    complex xpow = 1.0;
    for (std::size_t n = 1; n <= terms; ++n) {
        // Resynchronize x^{n-1} periodically so the running product does not drift.
        if ((n & 255u) == 0 && r > 0.0) {
            const double m = static_cast<double>(n - 1);
            xpow = std::polar(std::exp(m * std::log(r)), m * theta);
        }
        acc.add(std::exp(p * std::log(static_cast<double>(n))) * xpow);
        xpow *= x;
    }
    return acc.value();
}

}  // namespace detail

// sum_{n>=1} n^p x^{n-1} to relative accuracy rel_tol (certified by the tail bound).
inline SeriesSum weighted_geometric_sum(double p, complex x, double rel_tol = 1e-14) {
    const double r = std::abs(x);
    if (!(r < 1.0)) {
        throw invalid_argument("series argument must satisfy |x| < 1");
    }
    double eps = rel_tol;
    for (int attempt = 0; attempt < 16; ++attempt) {
        const std::size_t terms = truncation_for(p, r, eps);
        const complex value = detail::weighted_geometric_partial(p, x, terms);
        const double tail = weighted_geometric_tail(p, r, terms);
        const double magnitude = std::abs(value);
        if (tail <= rel_tol * (magnitude - tail)) {
            return {value, terms, tail};
        }
        eps = magnitude > 0.0 ? rel_tol * magnitude / 4.0 : eps * 1e-4;
    }
    throw no_convergence("weighted geometric series did not reach the requested relative accuracy");
}

// ---------------------------------------------------------------------------
// Derivative-kernel pairings.

enum class Evaluation { automatic, series };

// <K_v^(1), K_w^(1)>_alpha in closed form when alpha is -1, 0 or 1.
inline std::optional<complex> deriv_kernel_pairing_closed_form(complex w, complex v, WeightIndex alpha) {
    const complex x = std::conj(v) * w;
    const complex one_minus = 1.0 - x;
    if (alpha.alpha() == 0.0) {
        return 1.0 / (one_minus * one_minus);
    }
    if (alpha.alpha() == -1.0) {
        return 1.0 / one_minus;
    }
    if (alpha.alpha() == 1.0) {
        return (1.0 + x) / (one_minus * one_minus * one_minus);
    }
    return std::nullopt;
}

inline SeriesSum deriv_kernel_pairing_series(complex w, complex v, WeightIndex alpha, double rel_tol = 1e-14) {
    return weighted_geometric_sum(1.0 + alpha.alpha(), std::conj(v) * w, rel_tol);
}

inline complex deriv_kernel_pairing(complex w, complex v, WeightIndex alpha,
                                    Evaluation mode = Evaluation::automatic) {
    if (!(std::abs(w) < 1.0 && std::abs(v) < 1.0)) {
        throw invalid_argument("kernel points must lie in the open disk");
    }
    if (mode == Evaluation::automatic) {
        if (auto closed = deriv_kernel_pairing_closed_form(w, v, alpha)) {
            return *closed;
        }
    }
    return deriv_kernel_pairing_series(w, v, alpha).value;
}

// ||K_w^(1)||_alpha.
inline double deriv_kernel_norm(complex w, WeightIndex alpha, Evaluation mode = Evaluation::automatic) {
    return std::sqrt(deriv_kernel_pairing(w, w, alpha, mode).real());
}

// <K_v, K_w>_alpha = 1 + x sum n^{alpha-1} x^{n-1}, x = conj(v) w.  Closed
// forms for the Hardy (1/(1-x)) and Dirichlet (1 + log 1/(1-x)) spaces.
inline complex point_kernel_pairing(complex w, complex v, WeightIndex alpha,
                                    Evaluation mode = Evaluation::automatic) {
    if (!(std::abs(w) < 1.0 && std::abs(v) < 1.0)) {
        throw invalid_argument("kernel points must lie in the open disk");
    }
    const complex x = std::conj(v) * w;
    if (mode == Evaluation::automatic) {
        if (alpha.alpha() == 1.0) {
            return 1.0 / (1.0 - x);
        }
        if (alpha.alpha() == 0.0) {
            return 1.0 - std::log(1.0 - x);
        }
    }
    return 1.0 + x * weighted_geometric_sum(alpha.alpha() - 1.0, x).value;
}

inline double point_kernel_norm(complex w, WeightIndex alpha, Evaluation mode = Evaluation::automatic) {
    return std::sqrt(point_kernel_pairing(w, w, alpha, mode).real());
}

// ---------------------------------------------------------------------------

// phi(w) and phi'(w) for a symbol evaluated at a disk point.
struct SymbolValue {
    complex value;
    complex derivative;
};

// C_phi^* K_w^(1) = conj(phi'(w)) K_{phi(w)}^(1).
inline CoefficientVector adjoint_on_deriv_kernel(const SymbolValue& at_w, const KernelSpec& spec,
                                                 TruncationOrder order) {
    if (spec.order != KernelOrder::derivative) {
        throw invalid_argument("adjoint action is implemented for derivative kernels");
    }
    if (!(std::abs(at_w.value) < 1.0)) {
        throw image_on_boundary("phi(w) must lie in the open disk");
    }
    auto image = kernel_coeffs(KernelSpec(at_w.value, spec.alpha, KernelOrder::derivative), order);
    image *= std::conj(at_w.derivative);
    return image;
}

}  // namespace oplab
