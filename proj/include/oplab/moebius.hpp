#pragma once

// Linear fractional self-maps of the unit disk.
//
// Maps are stored in the normalized form phi(z) = (a z + b) / (c z + 1);
// a raw quadruple (a, b, c, d) with d != 0 is divided through by d at
// construction.  The image of the unit circle under a map whose pole lies
// outside the closed disk (|c| < 1) is the circle with
//
//     center = (b - a conj(c)) / (1 - |c|^2),   radius = |a - b c| / (1 - |c|^2),
//
// and all boundary questions (self-map test, sup norm, contact set) are
// answered from that circle rather than by sampling.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <string_view>

#include "oplab/error.hpp"
#include "oplab/weighted_spaces.hpp"

namespace oplab {

inline constexpr double kPoleTolerance = 1e-14;
inline constexpr double kMapEqualityTolerance = 1e-10;
inline constexpr double kTangencyTolerance = 1e-9;
inline constexpr double kCompactnessTolerance = 1e-9;
inline constexpr double kUnimodularTolerance = 1e-9;

class LinearFractionalMap {
public:
    // (a z + b) / (c z + d), normalized by d.
    LinearFractionalMap(complex a, complex b, complex c = 0.0, complex d = 1.0) {
        if (d == complex{}) {
            throw invalid_argument("linear fractional map requires d != 0");
        }
        const double scale = std::max(std::abs(a * d), std::abs(b * c));
        if (!(scale > 0.0) || std::abs(a * d - b * c) <= 1e-14 * scale) {
            throw invalid_argument("linear fractional map is degenerate (ad - bc = 0)");
        }
        a_ = a / d;
        b_ = b / d;
        c_ = c / d;
    }

    static LinearFractionalMap identity() { return {1.0, 0.0}; }

    // z -> lambda z with |lambda| = 1.
    static LinearFractionalMap rotation(complex lambda) {
        if (std::abs(std::abs(lambda) - 1.0) > kUnimodularTolerance) {
            throw invalid_argument("rotation factor must be unimodular");
        }
        return {lambda, 0.0};
    }

    static LinearFractionalMap rotation_by_angle(double theta) { return rotation(std::polar(1.0, theta)); }

    // lambda (p - z) / (1 - conj(p) z), the disk automorphism swapping 0 and p.
    static LinearFractionalMap automorphism(complex p, complex lambda = 1.0) {
        if (!(std::abs(p) < 1.0)) {
            throw invalid_argument("automorphism center must lie in the open disk");
        }
        return {-lambda, lambda * p, -std::conj(p), 1.0};
    }

    complex a() const noexcept { return a_; }
    complex b() const noexcept { return b_; }
    complex c() const noexcept { return c_; }
    complex determinant() const noexcept { return a_ - b_ * c_; }

    complex operator()(complex z) const {
        const complex den = checked_denominator(z);
        return (a_ * z + b_) / den;
    }

    complex derivative(complex z) const {
        const complex den = checked_denominator(z);
        return determinant() / (den * den);
    }

    complex second_derivative(complex z) const {
        const complex den = checked_denominator(z);
        return -2.0 * c_ * determinant() / (den * den * den);
    }

    // (w - b) / (a - c w).
    complex inverse(complex w) const {
        const complex den = a_ - c_ * w;
        if (std::abs(den) < kPoleTolerance) {
            throw pole_hit("inverse map evaluated at its pole");
        }
        return (w - b_) / den;
    }

    // this o other.
    LinearFractionalMap compose(const LinearFractionalMap& other) const {
        const complex a = a_ * other.a_ + b_ * other.c_;
        const complex b = a_ * other.b_ + b_;
        const complex c = c_ * other.a_ + other.c_;
        const complex d = c_ * other.b_ + 1.0;
        if (std::abs(d) < kPoleTolerance) {
            throw invalid_argument("composition sends 0 to infinity; no normalized form");
        }
        return {a, b, c, d};
    }

private:
    complex checked_denominator(complex z) const {
        const complex den = c_ * z + 1.0;
        if (std::abs(den) < kPoleTolerance) {
            throw pole_hit("linear fractional map evaluated at its pole");
        }
        return den;
    }

    complex a_;
    complex b_;
    complex c_;
};

// Coefficient-wise comparison of the normalized forms.
inline bool approx_equal(const LinearFractionalMap& phi, const LinearFractionalMap& psi,
                         double tol = kMapEqualityTolerance) {
    return std::abs(phi.a() - psi.a()) <= tol && std::abs(phi.b() - psi.b()) <= tol &&
           std::abs(phi.c() - psi.c()) <= tol;
}

// Value, first and second derivative at a boundary point.
struct BoundaryData {
    complex zeta;
    complex value;
    complex first;
    complex second;
};

inline BoundaryData derivatives_at(const LinearFractionalMap& phi, complex zeta) {
    if (std::abs(std::abs(zeta) - 1.0) > kUnimodularTolerance) {
        throw invalid_argument("boundary data requires |zeta| = 1");
    }
    return {zeta, phi(zeta), phi.derivative(zeta), phi.second_derivative(zeta)};
}

// Rebuilds the unique linear fractional map with the given second order data.
// At zeta = 1 the data equations read
//     phi(1) = (a+b)/(c+1),  phi'(1) = (a-bc)/(c+1)^2,  phi''(1) = -2c(a-bc)/(c+1)^3,
// so phi''/phi' fixes c/(c+1), then b and a follow linearly.  General zeta is
// reduced to zeta = 1 through z -> phi(zeta z), whose coefficients are
// (a zeta, b, c zeta).
inline LinearFractionalMap from_second_order_data(const BoundaryData& data) {
    if (std::abs(std::abs(data.zeta) - 1.0) > kUnimodularTolerance) {
        throw invalid_argument("boundary data requires |zeta| = 1");
    }
    const complex first = data.zeta * data.first;
    const complex second = data.zeta * data.zeta * data.second;
    if (std::abs(first) == 0.0) {
        throw invalid_argument("second order data with vanishing first derivative has no linear fractional solution");
    }
    const complex q = -second / (2.0 * first);  // c / (c + 1)
    if (std::abs(1.0 - q) < kPoleTolerance) {
        throw invalid_argument("second order data forces c = infinity");
    }
    const complex c1 = q / (1.0 - q);
    const complex b = data.value - first * (c1 + 1.0);
    const complex a1 = data.value * (c1 + 1.0) - b;
    return {a1 / data.zeta, b, c1 / data.zeta, 1.0};
}

inline bool same_second_order_data(const LinearFractionalMap& phi, const LinearFractionalMap& psi, complex zeta,
                                   double tol = kMapEqualityTolerance) {
    const auto p = derivatives_at(phi, zeta);
    const auto q = derivatives_at(psi, zeta);
    return std::abs(p.value - q.value) <= tol && std::abs(p.first - q.first) <= tol &&
           std::abs(p.second - q.second) <= tol;
}

struct ImageCircle {
    complex center;
    double radius;
};

// Image of the unit circle; requires the pole -1/c to lie outside the closed disk.
inline ImageCircle image_circle(const LinearFractionalMap& phi) {
    const double c2 = std::norm(phi.c());
    if (!(c2 < 1.0)) {
        throw pole_inside_disk("pole of the map lies in the closed unit disk");
    }
    const double den = 1.0 - c2;
    return {(phi.b() - phi.a() * std::conj(phi.c())) / den, std::abs(phi.determinant()) / den};
}

struct SelfMapCheck {
    bool is_self_map;
    // max over |z| = 1 of |phi(z)|; +infinity when the pole is on the circle.
    double boundary_max;
    // Boundary point attaining boundary_max (or nearest the pole when |c| >= 1).
    complex witness;
};

namespace detail {

// Boundary point where |phi| is largest, for |c| < 1.
inline complex farthest_boundary_point(const LinearFractionalMap& phi, const ImageCircle& circle) {
    const double m = std::abs(circle.center);
    const complex direction = m > 0.0 ? circle.center / m : complex{1.0};
    const complex z = phi.inverse(circle.center + circle.radius * direction);
    return z / std::abs(z);
}

}  // namespace detail

inline SelfMapCheck is_disk_self_map(const LinearFractionalMap& phi, double tol = 0.0) {
    const double cabs = std::abs(phi.c());
    if (cabs >= 1.0) {
        // The pole -1/c sits in the closed disk, so phi cannot map D into D.
        const complex nearest = -std::conj(phi.c()) / cabs;
        double boundary_max = std::numeric_limits<double>::infinity();
        if (cabs > 1.0) {
            const double den = cabs * cabs - 1.0;
            boundary_max = std::abs(phi.a() * std::conj(phi.c()) - phi.b()) / den + std::abs(phi.determinant()) / den;
        }
        return {false, boundary_max, nearest};
    }
    const auto circle = image_circle(phi);
    const double boundary_max = std::abs(circle.center) + circle.radius;
    return {boundary_max <= 1.0 + tol, boundary_max, detail::farthest_boundary_point(phi, circle)};
}

// ||phi||_inf over the closed disk; +infinity unless the pole is outside it.
inline double sup_norm(const LinearFractionalMap& phi) {
    if (!(std::norm(phi.c()) < 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const auto circle = image_circle(phi);
    return std::abs(circle.center) + circle.radius;
}

// Points of the unit circle sent to the unit circle.
struct BoundaryContact {
    enum class Kind { empty, point, all };
    Kind kind;
    complex zeta;  // meaningful only for Kind::point
};

inline BoundaryContact boundary_contact_set(const LinearFractionalMap& phi, double tol = kTangencyTolerance) {
    const auto check = is_disk_self_map(phi, tol);
    if (!check.is_self_map) {
        throw invalid_argument("boundary contact set requires a self-map of the disk");
    }
    if (check.boundary_max < 1.0 - tol) {
        return {BoundaryContact::Kind::empty, {}};
    }
    const auto circle = image_circle(phi);
    if (std::abs(circle.center) <= tol && std::abs(circle.radius - 1.0) <= tol) {
        return {BoundaryContact::Kind::all, {}};
    }
    return {BoundaryContact::Kind::point, check.witness};
}

inline void require_self_map(const LinearFractionalMap& phi, std::string_view what) {
    if (!is_disk_self_map(phi, kTangencyTolerance).is_self_map) {
        throw invalid_argument(std::string(what) + " requires a self-map of the disk");
    }
}

// C_phi is compact on D_gamma exactly when ||phi||_inf < 1, for every gamma >= -1.
inline bool is_compact_composition(const LinearFractionalMap& phi, WeightIndex /*gamma*/,
                                   double tol_boundary = kCompactnessTolerance) {
    require_self_map(phi, "compactness verdict");
    return sup_norm(phi) < 1.0 - tol_boundary;
}

struct DifferenceVerdict {
    enum class Reason { equal_maps, both_compact, only_one_compact, neither_compact_maps_differ };
    bool compact;
    Reason reason;
};

inline std::string_view describe(DifferenceVerdict::Reason reason) {
    switch (reason) {
        case DifferenceVerdict::Reason::equal_maps:
            return "equal maps";
        case DifferenceVerdict::Reason::both_compact:
            return "both compact";
        case DifferenceVerdict::Reason::only_one_compact:
            return "exactly one compact";
        case DifferenceVerdict::Reason::neither_compact_maps_differ:
            return "neither compact; maps differ";
    }
    return "unknown";
}

// C_phi - C_psi is compact on D_gamma iff phi = psi or both C_phi, C_psi are compact.
inline DifferenceVerdict compact_difference_verdict(const LinearFractionalMap& phi, const LinearFractionalMap& psi,
                                                    WeightIndex gamma) {
    using Reason = DifferenceVerdict::Reason;
    require_self_map(phi, "compact difference verdict");
    require_self_map(psi, "compact difference verdict");
    if (approx_equal(phi, psi)) {
        return {true, Reason::equal_maps};
    }
    const bool phi_compact = is_compact_composition(phi, gamma);
    const bool psi_compact = is_compact_composition(psi, gamma);
    if (phi_compact && psi_compact) {
        return {true, Reason::both_compact};
    }
    if (phi_compact || psi_compact) {
        return {false, Reason::only_one_compact};
    }
    return {false, Reason::neither_compact_maps_differ};
}

}  // namespace oplab
