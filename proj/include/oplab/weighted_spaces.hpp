#pragma once

// The weighted Dirichlet scale D_alpha.
//
// A function f(z) = sum a_n z^n belongs to D_alpha when
//
//     ||f||^2 = |a_0|^2 + sum_{n>=1} n^{1-alpha} |a_n|^2 < infinity,
//
// with alpha >= -1.  alpha = -1 is S^2, alpha = 0 the Dirichlet space,
// alpha = 1 the Hardy space and alpha = beta + 2 the weighted Bergman space
// A^2_beta (series norm, equivalent to the integral norm).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oplab/error.hpp"

namespace oplab {

using complex = std::complex<double>;

class WeightIndex {
public:
    explicit WeightIndex(double alpha) : alpha_(alpha) {
        if (!std::isfinite(alpha) || alpha < -1.0) {
            throw invalid_argument("weight index must satisfy alpha >= -1, got " + std::to_string(alpha));
        }
    }

    double alpha() const noexcept { return alpha_; }

    static WeightIndex s2() { return WeightIndex(-1.0); }
    static WeightIndex dirichlet() { return WeightIndex(0.0); }
    static WeightIndex hardy() { return WeightIndex(1.0); }
    // A^2_beta for beta > -1.
    static WeightIndex bergman(double beta) {
        if (!(beta > -1.0)) {
            throw invalid_argument("Bergman index must satisfy beta > -1");
        }
        return WeightIndex(beta + 2.0);
    }

    friend bool operator==(const WeightIndex&, const WeightIndex&) = default;
    friend auto operator<=>(const WeightIndex&, const WeightIndex&) = default;

private:
    double alpha_;
};

// Weight of |a_n|^2 in the D_alpha norm: 1 for n = 0, n^{1-alpha} otherwise.
inline double weight(std::size_t n, WeightIndex index) {
    if (n == 0) {
        return 1.0;
    }
    return std::exp((1.0 - index.alpha()) * std::log(static_cast<double>(n)));
}

// Truncated Taylor coefficients a_0 ... a_{N-1}.  Index n holds the
// coefficient of z^n; evaluation is the finite sum, nothing is implied
// about the discarded tail.
class CoefficientVector {
public:
    CoefficientVector() : coeffs_(1, complex{}) {}

    explicit CoefficientVector(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw invalid_argument("coefficient vector must hold at least one coefficient");
        }
    }

    CoefficientVector(std::initializer_list<complex> coeffs) : CoefficientVector(std::vector<complex>(coeffs)) {}

    static CoefficientVector zeros(std::size_t length) {
        if (length == 0) {
            throw invalid_argument("coefficient vector must hold at least one coefficient");
        }
        return CoefficientVector(std::vector<complex>(length));
    }

    // z^k stored in a vector of the given length (> k).
    static CoefficientVector monomial(std::size_t k, std::size_t length) {
        if (length <= k) {
            throw invalid_argument("monomial degree must be below the vector length");
        }
        auto v = zeros(length);
        v[k] = 1.0;
        return v;
    }

    std::size_t size() const noexcept { return coeffs_.size(); }

    complex operator[](std::size_t n) const { return coeffs_[n]; }
    complex& operator[](std::size_t n) { return coeffs_[n]; }

    // Zero beyond the stored coefficients.
    complex at_or_zero(std::size_t n) const noexcept { return n < coeffs_.size() ? coeffs_[n] : complex{}; }

    std::span<const complex> coeffs() const noexcept { return coeffs_; }
    std::span<complex> coeffs() noexcept { return coeffs_; }

    auto begin() const noexcept { return coeffs_.begin(); }
    auto end() const noexcept { return coeffs_.end(); }

    // Copy truncated or zero-padded to the given length.
    CoefficientVector resized(std::size_t length) const {
        std::vector<complex> out(coeffs_.begin(), coeffs_.begin() + std::min(length, coeffs_.size()));
        out.resize(length);
        return CoefficientVector(std::move(out));
    }

    // sum a_n z^n (Horner).
    complex operator()(complex z) const noexcept {
        complex acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * z + *it;
        }
        return acc;
    }

    // sum n a_n z^{n-1}.
    complex derivative(complex z) const noexcept {
        complex acc{};
        for (std::size_t n = coeffs_.size(); n-- > 1;) {
            acc = acc * z + static_cast<double>(n) * coeffs_[n];
        }
        return acc;
    }

    CoefficientVector& operator*=(complex s) {
        for (auto& c : coeffs_) {
            c *= s;
        }
        return *this;
    }

    friend CoefficientVector operator*(complex s, CoefficientVector v) { return v *= s; }

    friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

private:
    std::vector<complex> coeffs_;
};

// <f, g>_alpha = sum weight(n) a_n conj(b_n); the shorter vector is zero padded.
inline complex inner_product(const CoefficientVector& f, const CoefficientVector& g, WeightIndex index) {
    const auto n_max = std::min(f.size(), g.size());
    complex acc{};
    for (std::size_t n = 0; n < n_max; ++n) {
        acc += weight(n, index) * f[n] * std::conj(g[n]);
    }
    return acc;
}

inline double norm(const CoefficientVector& f, WeightIndex index) {
    double acc = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
        acc += weight(n, index) * std::norm(f[n]);
    }
    return std::sqrt(acc);
}

// gamma = (1 - t) alpha + t beta, the index of the complex interpolation
// space [D_alpha, D_beta]_t.
inline WeightIndex interpolation_gamma(WeightIndex alpha, WeightIndex beta, double t) {
    if (!(alpha.alpha() < beta.alpha())) {
        throw invalid_argument("interpolation requires alpha < beta");
    }
    if (!(t > 0.0 && t < 1.0)) {
        throw invalid_argument("interpolation parameter t must lie strictly in (0, 1)");
    }
    return WeightIndex((1.0 - t) * alpha.alpha() + t * beta.alpha());
}

// Inverse of interpolation_gamma: t = (gamma - alpha) / (beta - alpha).
inline double interpolation_parameter(WeightIndex alpha, WeightIndex beta, WeightIndex gamma) {
    if (!(alpha.alpha() < beta.alpha())) {
        throw invalid_argument("interpolation requires alpha < beta");
    }
    if (!(gamma.alpha() > alpha.alpha() && gamma.alpha() < beta.alpha())) {
        throw invalid_argument("gamma must lie strictly between alpha and beta");
    }
    return (gamma.alpha() - alpha.alpha()) / (beta.alpha() - alpha.alpha());
}

}  // namespace oplab
