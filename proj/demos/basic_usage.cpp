// Compactness of C_phi - C_psi for a pair of linear fractional self-maps, and
// the kernel lower bound along a radius and a gamma_M curve.

#include <cstdio>

#include "oplab/oplab.hpp"

int main() {
    using namespace oplab;

    const LinearFractionalMap phi = LinearFractionalMap::identity();
    const LinearFractionalMap psi(0.5, 0.5);  // (z + 1)/2
    const WeightIndex dirichlet = WeightIndex::dirichlet();

    const auto verdict = compact_difference_verdict(phi, psi, dirichlet);
    std::printf("difference compact: %s (%s)\n", verdict.compact ? "true" : "false",
                std::string(describe(verdict.reason)).c_str());

    const auto radii = geometric_radii(1, 20);
    const ApproachPath paths[] = {make_path(1.0, PathKind::radial, 1.0, radii),
                                  make_path(1.0, PathKind::gamma_m, 100.0, radii)};
    for (const auto& path : paths) {
        const auto scan = essential_lower_bound_scan(phi, psi, dirichlet, std::span(&path, 1));
        std::printf("%-8s best %.6f at w = %.6f%+.6fi\n", path.kind == PathKind::radial ? "radial" : "gamma_M",
                    scan.best, scan.witness.real(), scan.witness.imag());
    }

    const auto op = assemble(psi, WeightIndex::hardy(), TruncationOrder(64));
    std::printf("||C_psi|| on H^2, N = 64: %.6f\n", operator_norm(op));
}
