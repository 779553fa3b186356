#include <gtest/gtest.h>

#include <cmath>

#include "oplab/power_series.hpp"
#include "support/oracles.hpp"

using namespace oplab;

namespace {

CoefficientVector random_vector(oracle::RandomMaps& rng, std::size_t n) {
    std::vector<complex> v(n);
    for (auto& c : v) c = rng.in_disk(1.0);
    return CoefficientVector(std::move(v));
}

double max_diff(const CoefficientVector& p, const CoefficientVector& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i) {
        d = std::max(d, std::abs(p.at_or_zero(i) - q.at_or_zero(i)));
    }
    return d;
}

}  // namespace

TEST(Multiply, Examples) {
    const CoefficientVector one_plus_z{1.0, 1.0};
    EXPECT_EQ(multiply(one_plus_z, one_plus_z, TruncationOrder(3)), (CoefficientVector{1.0, 2.0, 1.0}));
    const CoefficientVector p{1.0, complex(0, 2), -3.0};
    EXPECT_EQ(multiply(p, CoefficientVector{1.0}, TruncationOrder(3)), p);
    const CoefficientVector ones{1.0, 1.0, 1.0, 1.0};
    EXPECT_EQ(multiply(ones, ones, TruncationOrder(4)), (CoefficientVector{1.0, 2.0, 3.0, 4.0}));
}

TEST(Multiply, TruncatesAndPads) {
    const CoefficientVector p{1.0, 1.0};
    EXPECT_EQ(multiply(p, p, TruncationOrder(2)), (CoefficientVector{1.0, 2.0}));
    EXPECT_EQ(multiply(p, p, TruncationOrder(5)), (CoefficientVector{1.0, 2.0, 1.0, 0.0, 0.0}));
    EXPECT_THROW(TruncationOrder(0), invalid_argument);
}

TEST(Multiply, CommutativeAndAssociative) {
    oracle::RandomMaps rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_vector(rng, 1 + trial % 17);
        const auto q = random_vector(rng, 1 + trial % 11);
        const auto r = random_vector(rng, 1 + trial % 13);
        const TruncationOrder n(24);
        EXPECT_LT(max_diff(multiply(p, q, n), multiply(q, p, n)), 1e-12);
        EXPECT_LT(max_diff(multiply(multiply(p, q, n), r, n), multiply(p, multiply(q, r, n), n)), 1e-12);
    }
}

TEST(Power, Examples) {
    const CoefficientVector p{0.3, 2.0};
    EXPECT_EQ(power(p, 0, TruncationOrder(4)), CoefficientVector::monomial(0, 4));
    EXPECT_EQ(power(CoefficientVector{0.0, 1.0}, 3, TruncationOrder(5)), CoefficientVector::monomial(3, 5));
    const auto taylor = lft_taylor(LinearFractionalMap(1.0, 0.0, -1.0, 2.0), TruncationOrder(4));
    const auto sq = power(taylor, 2, TruncationOrder(4));
    EXPECT_LT(max_diff(sq, CoefficientVector{0.0, 0.0, 0.25, 0.25}), 1e-16);
}

TEST(Power, MatchesRepeatedMultiplicationAndPowersTable) {
    oracle::RandomMaps rng(3);
    for (std::size_t n : {8u, 32u, 64u}) {
        const auto p = random_vector(rng, 6);
        const TruncationOrder order(n);
        const auto table = powers(p, 9, order);
        auto acc = CoefficientVector::monomial(0, n);
        for (std::size_t k = 0; k <= 8; ++k) {
            EXPECT_LT(max_diff(power(p, k, order), acc), 1e-10);
            EXPECT_LT(max_diff(table[k], acc), 1e-10);
            acc = multiply(acc, p, order);
        }
    }
}

TEST(LftTaylor, Examples) {
    EXPECT_EQ(lft_taylor(LinearFractionalMap::identity(), TruncationOrder(4)), (CoefficientVector{0.0, 1.0, 0.0, 0.0}));
    EXPECT_EQ(lft_taylor(LinearFractionalMap(0.5, 0.5), TruncationOrder(4)), (CoefficientVector{0.5, 0.5, 0.0, 0.0}));
    const auto t = lft_taylor(LinearFractionalMap(1.0, 0.0, -1.0, 2.0), TruncationOrder(30));
    EXPECT_EQ(t[0], complex{});
    for (std::size_t n = 1; n < 30; ++n) {
        EXPECT_NEAR(std::abs(t[n] - std::ldexp(1.0, -static_cast<int>(n))), 0.0, 1e-17);
    }
}

TEST(LftTaylor, MatchesContourIntegral) {
    oracle::RandomMaps rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = rng.self_map();
        const auto t = lft_taylor(phi, TruncationOrder(12));
        const auto ref = oracle::taylor_by_contour([&](complex z) { return phi(z); }, 12);
        EXPECT_LT(max_diff(t, CoefficientVector(ref)), 1e-9);
    }
}

TEST(LftTaylor, TailBound) {
    oracle::RandomMaps rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto phi = rng.self_map();
        const std::size_t n = 40;
        const auto t = lft_taylor(phi, TruncationOrder(n));
        for (int j = 0; j < 10; ++j) {
            const complex z = rng.in_disk(0.9);
            const double cz = std::abs(phi.c() * z);
            const double bound = 2.0 * std::pow(cz, static_cast<double>(n)) / (1.0 - cz) + 1e-14;
            EXPECT_LE(std::abs(t(z) - phi(z)), bound);
        }
    }
}

TEST(LftTaylor, RejectsPoleInClosedDisk) {
    EXPECT_THROW(lft_taylor(LinearFractionalMap(1.0, 0.0, 1.0, 1.0), TruncationOrder(4)), pole_inside_disk);
    EXPECT_THROW(lft_taylor(LinearFractionalMap(1.0, 0.0, 2.0, 1.0), TruncationOrder(4)), pole_inside_disk);
}
