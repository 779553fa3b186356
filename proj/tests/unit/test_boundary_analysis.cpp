#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oplab/boundary_analysis.hpp"
#include "support/oracles.hpp"

using namespace oplab;

namespace {

const LinearFractionalMap kIdentity = LinearFractionalMap::identity();
const LinearFractionalMap kMinus(-1.0, 0.0);
const LinearFractionalMap kHalfShift(0.5, 0.5);
const LinearFractionalMap kTangentDisk(1.0, 0.0, -1.0, 2.0);
const LinearFractionalMap kHalf(0.5, 0.0);
const LinearFractionalMap kThird(1.0 / 3.0, 0.0);

// Direct series: ||(C_phi - C_psi)^* K_w^(1)||^2 / ||K_w^(1)||^2 from explicit
// coefficient vectors.
double kernel_difference_by_coefficients(const LinearFractionalMap& phi, const LinearFractionalMap& psi, complex w,
                                         WeightIndex a, std::size_t n) {
    const KernelSpec spec(w, a, KernelOrder::derivative);
    const TruncationOrder order(n);
    const auto kp = adjoint_on_deriv_kernel({phi(w), phi.derivative(w)}, spec, order);
    const auto ks = adjoint_on_deriv_kernel({psi(w), psi.derivative(w)}, spec, order);
    std::vector<complex> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = kp[i] - ks[i];
    const double num = std::pow(norm(CoefficientVector(diff), a), 2);
    const double den = std::pow(norm(kernel_coeffs(spec, order), a), 2);
    return num / den;
}

}  // namespace

TEST(SymbolMap, FromLftAndCoefficients) {
    const SymbolMap s(kHalfShift);
    EXPECT_EQ(s.value(0.0), complex(0.5));
    EXPECT_EQ(s.derivative(0.3), complex(0.5));
    EXPECT_NE(s.lft(), nullptr);
    EXPECT_THROW(SymbolMap(LinearFractionalMap(2.0, 0.0)), invalid_argument);

    const auto poly = SymbolMap::from_coefficients(CoefficientVector{0.0, 0.5, 0.25});
    EXPECT_EQ(poly.lft(), nullptr);
    EXPECT_LT(std::abs(poly.value(0.5) - (0.25 + 0.0625)), 1e-16);
    EXPECT_LT(std::abs(poly.derivative(0.5) - (0.5 + 0.25)), 1e-16);
    EXPECT_EQ(poly.taylor(TruncationOrder(5)), (CoefficientVector{0.0, 0.5, 0.25, 0.0, 0.0}));
    EXPECT_THROW(SymbolMap::from_coefficients(CoefficientVector{0.0, 1.5}), invalid_argument);
    EXPECT_THROW(SymbolMap::from_coefficients(CoefficientVector{0.0, 0.5}, 1.5), invalid_argument);

    const auto local = SymbolMap::from_coefficients(CoefficientVector{0.0, 0.5}, 0.5);
    EXPECT_THROW(local.value(0.8), invalid_argument);
}

TEST(Paths, Radial) {
    const std::vector<double> radii{0.9, 0.99};
    const auto path = make_path(1.0, PathKind::radial, 1.0, radii);
    ASSERT_EQ(path.points.size(), 2u);
    EXPECT_EQ(path.points[0], complex(0.9));
    EXPECT_EQ(path.points[1], complex(0.99));
    const std::vector<double> bad{0.9, 0.8};
    EXPECT_THROW(make_path(1.0, PathKind::radial, 1.0, bad), invalid_argument);
    EXPECT_THROW(make_path(0.5, PathKind::radial, 1.0, radii), invalid_argument);
    EXPECT_THROW(make_path(1.0, PathKind::radial, 1.0, std::vector<double>{}), invalid_argument);
}

TEST(Paths, GeometricRadii) {
    const auto r = geometric_radii();
    ASSERT_EQ(r.size(), 20u);
    EXPECT_EQ(r.front(), 0.5);
    EXPECT_EQ(r.back(), 1.0 - std::ldexp(1.0, -20));
    EXPECT_THROW(geometric_radii(0, 3), invalid_argument);
}

TEST(Paths, GammaMConstraint) {
    const auto radii = geometric_radii(1, 24);
    for (double m : {1.0, 2.0, 10.0, 100.0}) {
        for (complex zeta : {complex(1.0), std::polar(1.0, 2.0)}) {
            const auto path = make_path(zeta, PathKind::gamma_m, m, radii);
            EXPECT_EQ(path.points.size() + path.skipped_radii.size(), radii.size());
            double previous = INFINITY;
            for (std::size_t i = 0; i < path.points.size(); ++i) {
                const complex w = path.points[i];
                EXPECT_LT(std::abs(w), 1.0);
                EXPECT_NEAR(std::abs(w), path.radii[i], 1e-15);
                // One ulp in |w| moves 1 - |w| by eps / (1 - |w|) relative.
                const double slack = 1e-9 + 4 * std::numeric_limits<double>::epsilon() / (1 - path.radii[i]);
                EXPECT_LE(std::abs(gamma_m_ratio(w, zeta) - m), slack * m);
                // Inside the nontangential region |zeta - w| < M' (1 - |w|), M' = M (1 + |w|) (1 + slack).
                EXPECT_LT(std::abs(zeta - w), m * (1 + std::abs(w)) * (1 + slack) * (1 - std::abs(w)));
                EXPECT_LT(std::abs(zeta - w), previous);
                previous = std::abs(zeta - w);
            }
        }
    }
}

TEST(Paths, GammaMSkipsRadiiThatCannotReachTheCurve) {
    // A solution exists iff 1 - r <= M (1 - r^2), i.e. r >= 1 - 1/M.
    const std::vector<double> radii{0.5, 0.8, 0.95, 0.99};
    const auto path = make_path(1.0, PathKind::gamma_m, 10.0, radii);
    EXPECT_EQ(path.skipped_radii, (std::vector<double>{0.5, 0.8}));
    EXPECT_THROW(make_path(1.0, PathKind::gamma_m, 100.0, std::vector<double>{0.5, 0.8}), empty_path);
    EXPECT_THROW(make_path(1.0, PathKind::gamma_m, 0.5, radii), invalid_argument);
}

TEST(PseudoDistance, Examples) {
    oracle::RandomMaps rng(31);
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(pseudo_distance(kHalfShift, kHalfShift, rng.in_disk(0.99)), 0.0);
    }
    const SymbolMap half_const = SymbolMap::from_coefficients(CoefficientVector{0.5, 1e-3});
    const SymbolMap zero = SymbolMap::from_coefficients(CoefficientVector{0.0, 1e-3});
    EXPECT_NEAR(pseudo_distance(half_const, zero, 0.0), 0.5, 1e-16);
}

TEST(PseudoDistance, IdentitySymmetryAndInvariance) {
    oracle::RandomMaps rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto phi = rng.self_map();
        const auto psi = rng.self_map();
        const complex z = rng.in_disk(0.95);
        const double rho = pseudo_distance(phi, psi, z);
        const complex u = phi(z), v = psi(z);
        const double rhs = (1 - std::norm(u)) * (1 - std::norm(v)) / std::norm(1.0 - std::conj(u) * v);
        EXPECT_NEAR(1 - rho * rho, rhs, 1e-12);
        EXPECT_EQ(rho, pseudo_distance(psi, phi, z));
        const auto a = LinearFractionalMap::automorphism(rng.in_disk(0.9), rng.unimodular());
        EXPECT_NEAR(pseudo_distance(a.compose(phi), a.compose(psi), z), rho, 1e-10);
    }
}

TEST(JcQuotient, Examples) {
    for (double r : {0.1, 0.5, 0.9, 0.999}) {
        EXPECT_NEAR(jc_quotient(kIdentity, r), 1.0, 1e-12);
        EXPECT_NEAR(jc_quotient(kHalfShift, r), 0.5, 1e-12);
        EXPECT_NEAR(jc_quotient(kTangentDisk, r), 2.0 / (2.0 - r), 1e-9);
    }
    EXPECT_THROW(jc_quotient(kIdentity, 1.0), invalid_argument);
}

TEST(AngularDerivative, Examples) {
    const auto radii = geometric_radii(1, 20);
    const auto radial = make_path(1.0, PathKind::radial, 1.0, radii);
    const auto shift = angular_derivative_estimate(kHalfShift, 1.0, radial);
    EXPECT_FALSE(shift.no_contact);
    EXPECT_NEAR(shift.d_est, 0.5, 1e-9);
    EXPECT_NEAR(std::abs(shift.eta_est - 1.0), 0.0, 1e-9);
    ASSERT_TRUE(shift.exact.has_value());
    EXPECT_EQ(shift.exact->first, complex(0.5));

    const auto tangent = angular_derivative_estimate(kTangentDisk, 1.0, radial);
    EXPECT_NEAR(tangent.d_est, 2.0, 1e-6);
    EXPECT_NEAR(tangent.d_last, 2.0, 2e-6);

    const auto half = angular_derivative_estimate(kHalf, 1.0, radial);
    EXPECT_TRUE(half.no_contact);
    EXPECT_TRUE(std::isinf(half.d_est));
    EXPECT_THROW(angular_derivative_estimate(kHalf, -1.0, radial), invalid_argument);
}

TEST(AngularDerivative, ConvergesToExactForRandomContactMaps) {
    oracle::RandomMaps rng(33);
    const auto radii = geometric_radii(1, 24);
    for (int trial = 0; trial < 30; ++trial) {
        const auto phi = rng.with_sup_norm(1.0);
        const auto contact = boundary_contact_set(phi);
        const complex zeta = contact.kind == BoundaryContact::Kind::point ? contact.zeta : rng.unimodular();
        const auto est = angular_derivative_estimate(phi, zeta, make_path(zeta, PathKind::radial, 1.0, radii));
        ASSERT_TRUE(est.exact.has_value());
        EXPECT_FALSE(est.no_contact);
        EXPECT_LT(std::abs(est.d_est - std::abs(est.exact->first)), 1e-5) << trial;
        EXPECT_LT(std::abs(est.eta_est - est.exact->value), 1e-5);
    }
}

TEST(Obstruction, Examples) {
    oracle::RandomMaps rng(34);
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(obstruction_quantity(kHalfShift, kHalfShift, rng.in_disk(0.99), WeightIndex(0)), 0.0);
    }
    double previous = INFINITY;
    for (double r : geometric_radii(1, 20)) {
        const double q = obstruction_quantity(kHalf, kThird, r, WeightIndex(0));
        EXPECT_LT(q, previous);
        previous = q;
    }
    EXPECT_LT(previous, 1e-5);
    for (double r : {0.99, 0.9999, 0.999999}) {
        const auto t = obstruction_terms(kIdentity, kHalfShift, r, WeightIndex(0));
        EXPECT_NEAR(t.rho, 1.0 / (2.0 + r), 1e-9);
        EXPECT_NEAR(t.t_phi, 1.0, 1e-12);
        EXPECT_GT(t.q, 0.3);
    }
    EXPECT_THROW(obstruction_quantity(kHalf, kThird, 0.5, WeightIndex(1)), invalid_argument);
}

TEST(Obstruction, S2TermUsesSquaredDerivative) {
    const auto d = obstruction_terms(kTangentDisk, kHalf, 0.5, WeightIndex(0));
    const auto s = obstruction_terms(kTangentDisk, kHalf, 0.5, WeightIndex(-1));
    const double deriv = std::abs(kTangentDisk.derivative(0.5));
    EXPECT_NEAR(s.t_phi, d.t_phi * deriv, 1e-14);
    EXPECT_EQ(s.rho, d.rho);
}

TEST(KernelDifference, Examples) {
    for (double r : {0.0, 0.3, 0.7, 0.99}) {
        EXPECT_EQ(kernel_difference_quantity(kHalfShift, kHalfShift, r, WeightIndex(0)), 0.0);
        // (z, -z): 2 + 2 (1-r^2)^2 / (1+r^2)^2, decreasing to 2.
        const double x = r * r;
        EXPECT_NEAR(kernel_difference_quantity(kIdentity, kMinus, r, WeightIndex(0)),
                    2.0 + 2.0 * (1 - x) * (1 - x) / ((1 + x) * (1 + x)), 1e-12);
    }
    EXPECT_NEAR(kernel_difference_quantity(kIdentity, kMinus, 0.0, WeightIndex(0)), 4.0, 1e-15);
    EXPECT_NEAR(kernel_difference_quantity(kIdentity, kHalfShift, 0.9999, WeightIndex(0)), 2.0 / 9.0, 1e-3);
    EXPECT_NEAR(kernel_difference_quantity(kIdentity, kHalfShift, 0.9999, WeightIndex(-1)), 1.0 / 6.0, 1e-3);
    EXPECT_THROW(kernel_difference_quantity(kIdentity, kMinus, 1.0, WeightIndex(0)), invalid_argument);
}

TEST(KernelDifference, SymmetricAndMatchesDirectSeries) {
    oracle::RandomMaps rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        const auto phi = rng.self_map();
        const auto psi = rng.self_map();
        const complex w = rng.in_disk(0.8);
        const WeightIndex a(rng.uniform(-1.0, 2.0));
        const double q = kernel_difference_quantity(phi, psi, w, a);
        EXPECT_NEAR(q, kernel_difference_quantity(psi, phi, w, a), 1e-12 * std::max(1.0, q));
        EXPECT_NEAR(q, kernel_difference_by_coefficients(phi, psi, w, a, 800), 1e-9 * std::max(1.0, q));
    }
}

TEST(KernelDifference, DistinctBoundaryImagesWitness) {
    double best = 0.0;
    for (double r : {0.9, 0.99, 0.999}) {
        best = std::max(best, kernel_difference_quantity(kIdentity, kMinus, r, WeightIndex(0)));
        EXPECT_GE(best, 1.0);
    }
}

TEST(BoundaryScan, Columns) {
    const auto path = make_path(1.0, PathKind::radial, 1.0, geometric_radii(1, 20));
    const auto rows = boundary_scan(kHalfShift, kHalfShift, WeightIndex(0), path);
    ASSERT_EQ(rows.size(), 20u);
    for (const auto& row : rows) {
        EXPECT_EQ(row.rho, 0.0);
        EXPECT_EQ(row.q, 0.0);
        EXPECT_EQ(row.kernel_diff, 0.0);
    }
    const auto compact = boundary_scan(kHalf, kThird, WeightIndex(0), path);
    for (std::size_t i = 1; i < compact.size(); ++i) {
        EXPECT_LT(compact[i].q, compact[i - 1].q);
    }
    const auto antipodal = boundary_scan(kIdentity, kMinus, WeightIndex(0), path);
    for (std::size_t i = 1; i < antipodal.size(); ++i) {
        EXPECT_LE(antipodal[i].kernel_diff, antipodal[i - 1].kernel_diff);
        EXPECT_GE(antipodal[i].kernel_diff, 2.0);
    }
}

TEST(BoundaryScan, ThreadedMatchesSerial) {
    const auto radii = geometric_radii(1, 20);
    const auto path = make_path(std::polar(1.0, 0.4), PathKind::gamma_m, 10.0, radii);
    const auto serial = boundary_scan(kIdentity, kHalfShift, WeightIndex(-1), path, 1);
    const auto threaded = boundary_scan(kIdentity, kHalfShift, WeightIndex(-1), path, 4);
    ASSERT_EQ(serial.size(), threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].w, threaded[i].w);
        EXPECT_EQ(serial[i].q, threaded[i].q);
        EXPECT_EQ(serial[i].kernel_diff, threaded[i].kernel_diff);
    }
}

TEST(BoundaryScan, ThreadedPropagatesErrors) {
    const auto path = make_path(1.0, PathKind::radial, 1.0, geometric_radii(1, 8));
    EXPECT_THROW(boundary_scan(kHalf, kThird, WeightIndex(2), path, 4), invalid_argument);
}
