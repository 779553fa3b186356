#pragma once

// Boundary behaviour of disk self-maps: Julia-Caratheodory quotients,
// pseudo-hyperbolic distance, the obstruction quantities that must vanish at
// the boundary for a compact difference C_phi - C_psi on D (alpha = 0) and S^2
// (alpha = -1), and the normalized derivative-kernel lower bound
//
//     || (C_phi - C_psi)^* K_w^(1) ||^2 / ||K_w^(1)||^2,
//
// sampled along radial or gamma_M approach paths.  Nothing here certifies a
// limit; the scans report values along the requested paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "oplab/error.hpp"
#include "oplab/kernels.hpp"
#include "oplab/moebius.hpp"
#include "oplab/power_series.hpp"
#include "oplab/weighted_spaces.hpp"

namespace oplab {

inline constexpr std::size_t kSelfMapSamples = 1024;
inline constexpr double kSelfMapSampleRadius = 0.999;
inline constexpr double kSelfMapSampleTolerance = 1e-9;

// An analytic self-map of the disk: either a linear fractional map (exact
// evaluation) or a polynomial given by its coefficients, trusted on
// |z| <= validity radius.
class SymbolMap {
public:
    // Implicit on purpose: a LinearFractionalMap is a SymbolMap.
    SymbolMap(const LinearFractionalMap& phi) : rep_(phi) {  // NOLINT(google-explicit-constructor)
        require_self_map(phi, "symbol");
    }

    // Polynomial symbol.  With `check` the self-map property is sampled at
    // kSelfMapSamples points on |z| = kSelfMapSampleRadius.
    static SymbolMap from_coefficients(CoefficientVector coeffs, double validity_radius = 1.0, bool check = true) {
        if (!(validity_radius > 0.0 && validity_radius <= 1.0)) {
            throw invalid_argument("validity radius must lie in (0, 1]");
        }
        if (check) {
            const double r = std::min(kSelfMapSampleRadius, validity_radius);
            for (std::size_t k = 0; k < kSelfMapSamples; ++k) {
                const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / kSelfMapSamples;
                const complex v = coeffs(std::polar(r, theta));
                if (!(std::abs(v) < 1.0 + kSelfMapSampleTolerance)) {
                    throw invalid_argument("coefficient symbol leaves the disk at sampled point theta = " +
                                           std::to_string(theta));
                }
            }
        }
        return SymbolMap(Polynomial{std::move(coeffs), validity_radius});
    }

    complex value(complex z) const {
        return std::visit(
            [&](const auto& rep) -> complex {
                if constexpr (std::is_same_v<std::decay_t<decltype(rep)>, LinearFractionalMap>) {
                    return rep(z);
                } else {
                    check_radius(rep, z);
                    return rep.coeffs(z);
                }
            },
            rep_);
    }

    complex derivative(complex z) const {
        return std::visit(
            [&](const auto& rep) -> complex {
                if constexpr (std::is_same_v<std::decay_t<decltype(rep)>, LinearFractionalMap>) {
                    return rep.derivative(z);
                } else {
                    check_radius(rep, z);
                    return rep.coeffs.derivative(z);
                }
            },
            rep_);
    }

    SymbolValue at(complex z) const { return {value(z), derivative(z)}; }

    const LinearFractionalMap* lft() const noexcept { return std::get_if<LinearFractionalMap>(&rep_); }

    const CoefficientVector* coefficients() const noexcept {
        const auto* poly = std::get_if<Polynomial>(&rep_);
        return poly ? &poly->coeffs : nullptr;
    }

    // First N Taylor coefficients.
    CoefficientVector taylor(TruncationOrder order) const {
        if (const auto* phi = lft()) {
            return lft_taylor(*phi, order);
        }
        return std::get<Polynomial>(rep_).coeffs.resized(order.value());
    }

private:
    struct Polynomial {
        CoefficientVector coeffs;
        double radius;
    };

    explicit SymbolMap(Polynomial poly) : rep_(std::move(poly)) {}

    static void check_radius(const Polynomial& poly, complex z) {
        if (std::abs(z) > poly.radius) {
            throw invalid_argument("coefficient symbol evaluated outside its radius of validity");
        }
    }

    std::variant<LinearFractionalMap, Polynomial> rep_;
};

// ---------------------------------------------------------------------------
// Approach paths.

enum class PathKind { radial, gamma_m };

struct ApproachPath {
    complex zeta;
    PathKind kind;
    double M;  // gamma_M parameter; unused for radial paths
    std::vector<double> radii;
    std::vector<complex> points;
    std::vector<double> skipped_radii;  // gamma_M radii where the curve does not reach
};

// r_k = 1 - 2^{-k}, k = first .. last.
inline std::vector<double> geometric_radii(int first = 1, int last = 20) {
    if (first < 1 || last < first) {
        throw invalid_argument("geometric radii need 1 <= first <= last");
    }
    std::vector<double> out;
    for (int k = first; k <= last; ++k) {
        out.push_back(1.0 - std::ldexp(1.0, -k));
    }
    return out;
}

// |1 - w conj(zeta)| / (1 - |w|^2); equals M on gamma_M rotated to zeta.
inline double gamma_m_ratio(complex w, complex zeta) {
    const double r = std::abs(w);
    return std::abs(1.0 - w * std::conj(zeta)) / ((1.0 - r) * (1.0 + r));
}

namespace detail {

// theta in [0, pi] with |1 - r e^{i theta}| = M (1 - r^2), by bisection; the
// left side is increasing in theta, from 1 - r to 1 + r.
inline std::optional<double> gamma_m_angle(double r, double M) {
    const double target = M * (1.0 - r) * (1.0 + r);
    auto chord = [r](double theta) {
        const double s = std::sin(0.5 * theta);
        return std::sqrt((1.0 - r) * (1.0 - r) + 4.0 * r * s * s);
    };
    if (target < chord(0.0) || target > chord(std::numbers::pi)) {
        return std::nullopt;
    }
    double lo = 0.0;
    double hi = std::numbers::pi;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        (chord(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline ApproachPath make_path(complex zeta, PathKind kind, double M, std::span<const double> radii) {
    if (std::abs(std::abs(zeta) - 1.0) > kUnimodularTolerance) {
        throw invalid_argument("approach point zeta must be unimodular");
    }
    if (radii.empty()) {
        throw invalid_argument("approach path needs at least one radius");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0.0 && radii[i] < 1.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
            throw invalid_argument("radii must be strictly increasing in [0, 1)");
        }
    }
    ApproachPath path{zeta / std::abs(zeta), kind, M, {}, {}, {}};
    if (kind == PathKind::radial) {
        path.radii.assign(radii.begin(), radii.end());
        for (double r : radii) {
            path.points.push_back(r * path.zeta);
        }
        return path;
    }
    if (!(M >= 1.0)) {
        throw invalid_argument("gamma_M path needs M >= 1");
    }
    for (double r : radii) {
        if (auto theta = detail::gamma_m_angle(r, M)) {
            path.radii.push_back(r);
            path.points.push_back(path.zeta * std::polar(r, *theta));
        } else {
            path.skipped_radii.push_back(r);
        }
    }
    if (path.points.empty()) {
        throw empty_path("no radius in the grid reaches gamma_M for M = " + std::to_string(M));
    }
    return path;
}

// ---------------------------------------------------------------------------
// Pointwise quantities.

namespace detail {

inline double one_minus_abs2(complex z) {
    const double r = std::abs(z);
    return (1.0 - r) * (1.0 + r);
}

inline double pseudo_hyperbolic(complex u, complex v) {
    if (u == v) {
        return 0.0;
    }
    return std::abs(u - v) / std::abs(1.0 - std::conj(u) * v);
}

}  // namespace detail

// |(phi(z) - psi(z)) / (1 - conj(phi(z)) psi(z))|, 0 when phi(z) = psi(z).
inline double pseudo_distance(const SymbolMap& phi, const SymbolMap& psi, complex z) {
    return detail::pseudo_hyperbolic(phi.value(z), psi.value(z));
}

// (1 - |phi(z)|) / (1 - |z|).
inline double jc_quotient(const SymbolMap& phi, complex z) {
    if (!(std::abs(z) < 1.0)) {
        throw invalid_argument("z must lie in the open disk");
    }
    return (1.0 - std::abs(phi.value(z))) / (1.0 - std::abs(z));
}

struct AngularDerivativeEstimate {
    // Richardson extrapolation of the last two quotients toward 1 - |z| = 0;
    // +infinity when no_contact.
    double d_est;
    double d_last;  // (1 - |phi|)/(1 - |z|) at the last path point
    double trend;   // d_last minus the previous quotient
    // Exponent e in quotient ~ (1 - |z|)^{-e} over the last step: about 0
    // with a finite angular derivative, about 1 when |phi| stays away from 1.
    double growth_exponent;
    complex eta_est;  // phi(last point) / |phi(last point)|
    bool no_contact;
    std::optional<BoundaryData> exact;  // linear fractional symbols only
};

inline constexpr double kNoContactExponent = 0.5;

inline AngularDerivativeEstimate angular_derivative_estimate(const SymbolMap& phi, complex zeta,
                                                             const ApproachPath& path) {
    if (std::abs(path.zeta - zeta) > kUnimodularTolerance) {
        throw invalid_argument("approach path does not tend to zeta");
    }
    if (path.points.size() < 2) {
        throw invalid_argument("angular derivative estimate needs at least two path points");
    }
    const complex z_prev = path.points[path.points.size() - 2];
    const complex z_last = path.points.back();
    const double h_prev = 1.0 - std::abs(z_prev);
    const double h_last = 1.0 - std::abs(z_last);
    const double q_prev = jc_quotient(phi, z_prev);
    const double q_last = jc_quotient(phi, z_last);

    AngularDerivativeEstimate est{};
    est.d_last = q_last;
    est.trend = q_last - q_prev;
    est.growth_exponent = std::log(q_last / q_prev) / std::log(h_prev / h_last);
    const complex v = phi.value(z_last);
    est.eta_est = std::abs(v) > 0.0 ? v / std::abs(v) : complex{};
    est.no_contact = est.growth_exponent > kNoContactExponent;
    est.d_est = est.no_contact ? std::numeric_limits<double>::infinity()
                               : q_last + (q_last - q_prev) * h_last / (h_prev - h_last);
    if (const auto* lft = phi.lft()) {
        est.exact = derivatives_at(*lft, path.zeta);
    }
    return est;
}

struct ObstructionTerms {
    double rho;
    double t_phi;
    double t_psi;
    double q;  // rho (t_phi + t_psi)
};

// alpha = 0:  T = |phi'| (1-|z|^2) / (1-|phi|^2);
// alpha = -1: T = |phi'|^2 (1-|z|^2) / (1-|phi|^2).
inline ObstructionTerms obstruction_terms(const SymbolMap& phi, const SymbolMap& psi, complex z, WeightIndex alpha) {
    int exponent = 0;
    if (alpha.alpha() == 0.0) {
        exponent = 1;
    } else if (alpha.alpha() == -1.0) {
        exponent = 2;
    } else {
        throw invalid_argument("obstruction quantity is defined for alpha = 0 and alpha = -1 only");
    }
    if (!(std::abs(z) < 1.0)) {
        throw invalid_argument("z must lie in the open disk");
    }
    const auto p = phi.at(z);
    const auto s = psi.at(z);
    const double one_minus_z = detail::one_minus_abs2(z);
    auto term = [&](const SymbolValue& f) {
        const double d = std::abs(f.derivative);
        return (exponent == 1 ? d : d * d) * one_minus_z / detail::one_minus_abs2(f.value);
    };
    ObstructionTerms out{};
    out.rho = detail::pseudo_hyperbolic(p.value, s.value);
    out.t_phi = term(p);
    out.t_psi = term(s);
    out.q = out.rho * (out.t_phi + out.t_psi);
    return out;
}

inline double obstruction_quantity(const SymbolMap& phi, const SymbolMap& psi, complex z, WeightIndex alpha) {
    return obstruction_terms(phi, psi, z, alpha).q;
}

// ||(C_phi - C_psi)^* K_w^(1)||^2 / ||K_w^(1)||^2 from the kernel Gram entries:
//   [ |phi'|^2 P(phi,phi) + |psi'|^2 P(psi,psi) - 2 Re(conj(phi') psi' <K_phi, K_psi>) ] / P(w,w).
inline double kernel_difference_quantity(const SymbolMap& phi, const SymbolMap& psi, complex w, WeightIndex alpha) {
    if (!(std::abs(w) < 1.0)) {
        throw invalid_argument("w must lie in the open disk");
    }
    const auto p = phi.at(w);
    const auto s = psi.at(w);
    if (!(std::abs(p.value) < 1.0 && std::abs(s.value) < 1.0)) {
        throw image_on_boundary("phi(w) and psi(w) must lie in the open disk");
    }
    const double norm_w = deriv_kernel_pairing(w, w, alpha).real();
    const double pp = deriv_kernel_pairing(p.value, p.value, alpha).real();
    const double ss = deriv_kernel_pairing(s.value, s.value, alpha).real();
    // <K_{phi(w)}, K_{psi(w)}> = P(psi(w), phi(w)).
    const complex ps = deriv_kernel_pairing(s.value, p.value, alpha);
    const double numerator = std::norm(p.derivative) * pp + std::norm(s.derivative) * ss -
                             2.0 * (std::conj(p.derivative) * s.derivative * ps).real();
    return std::max(0.0, numerator / norm_w);
}

// ---------------------------------------------------------------------------

struct ScanRow {
    complex w;
    double rho;
    double t_phi;
    double t_psi;
    double q;
    double kernel_diff;
};

// One row per path point; rows are filled concurrently by up to `threads` workers.
inline std::vector<ScanRow> boundary_scan(const SymbolMap& phi, const SymbolMap& psi, WeightIndex alpha,
                                          const ApproachPath& path, unsigned threads = 1) {
    std::vector<ScanRow> rows(path.points.size());
    auto fill = [&](std::size_t i) {
        const complex w = path.points[i];
        const auto terms = obstruction_terms(phi, psi, w, alpha);
        rows[i] = {w, terms.rho, terms.t_phi, terms.t_psi, terms.q, kernel_difference_quantity(phi, psi, w, alpha)};
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rows.size(), 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            fill(i);
        }
        return rows;
    }
    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < rows.size(); i += workers) {
                        fill(i);
                    }
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    return rows;
}

}  // namespace oplab
