#pragma once

// Truncated power-series arithmetic.  Plain O(N^2) Cauchy products; the
// operator assembly needs every power phi^0 .. phi^{N-1}, which `powers`
// produces by one convolution per power.

#include <cstddef>
#include <vector>

#include "oplab/error.hpp"
#include "oplab/moebius.hpp"
#include "oplab/weighted_spaces.hpp"

namespace oplab {

// Number of retained coefficients (degrees 0 .. N-1).
class TruncationOrder {
public:
    explicit TruncationOrder(std::size_t n) : n_(n) {
        if (n == 0) {
            throw invalid_argument("truncation order must be positive");
        }
    }

    std::size_t value() const noexcept { return n_; }

    friend bool operator==(const TruncationOrder&, const TruncationOrder&) = default;

private:
    std::size_t n_;
};

inline CoefficientVector multiply(const CoefficientVector& p, const CoefficientVector& q, TruncationOrder order) {
    const std::size_t n_out = order.value();
    std::vector<complex> out(n_out);
    const std::size_t np = std::min(p.size(), n_out);
    for (std::size_t i = 0; i < np; ++i) {
        const complex pi = p[i];
        if (pi == complex{}) {
            continue;
        }
        const std::size_t nq = std::min(q.size(), n_out - i);
        for (std::size_t j = 0; j < nq; ++j) {
            out[i + j] += pi * q[j];
        }
    }
    return CoefficientVector(std::move(out));
}

// p^0, p^1, ..., p^{count-1}, each truncated to `order`.
inline std::vector<CoefficientVector> powers(const CoefficientVector& p, std::size_t count, TruncationOrder order) {
    std::vector<CoefficientVector> out;
    out.reserve(count);
    if (count == 0) {
        return out;
    }
    out.push_back(CoefficientVector::monomial(0, order.value()));
    for (std::size_t k = 1; k < count; ++k) {
        out.push_back(multiply(out.back(), p, order));
    }
    return out;
}

inline CoefficientVector power(const CoefficientVector& p, std::size_t k, TruncationOrder order) {
    auto acc = CoefficientVector::monomial(0, order.value());
    for (std::size_t i = 0; i < k; ++i) {
        acc = multiply(acc, p, order);
    }
    return acc;
}

// Taylor coefficients of (a z + b)/(c z + 1): a_0 = b, a_n = (a - b c)(-c)^{n-1}.
inline CoefficientVector lft_taylor(const LinearFractionalMap& phi, TruncationOrder order) {
    if (phi.c() != complex{} && !(std::abs(phi.c()) < 1.0)) {
        throw pole_inside_disk("pole -1/c lies in the closed unit disk; Taylor series does not converge on D");
    }
    std::vector<complex> out(order.value());
    out[0] = phi.b();
    complex term = phi.determinant();
    const complex ratio = -phi.c();
    for (std::size_t n = 1; n < out.size(); ++n) {
        out[n] = term;
        term *= ratio;
    }
    return CoefficientVector(std::move(out));
}

}  // namespace oplab
