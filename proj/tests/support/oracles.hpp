#pragma once

// Independent reference computations for the tests.  Everything here is
// deliberately naive: long double brute-force sums, finite differences,
// power iteration, and direct rational arithmetic.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "oplab/oplab.hpp"

namespace oracle {

using cld = std::complex<long double>;
using oplab::complex;

// sum_{n=1}^{terms} n^p x^{n-1} in long double, powers recomputed from scratch.
inline complex weighted_geometric(double p, complex x, std::size_t terms) {
    cld acc = 0;
    const cld xl(x.real(), x.imag());
    for (std::size_t n = 1; n <= terms; ++n) {
        acc += std::pow(static_cast<long double>(n), static_cast<long double>(p)) *
               std::pow(xl, static_cast<long double>(n - 1));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// <K_v^(1), K_w^(1)> from explicit kernel coefficient vectors and the weighted
// inner product, with no use of the series machinery.
inline complex deriv_pairing_from_coefficients(complex w, complex v, double alpha, std::size_t terms) {
    cld acc = 0;
    const cld wb(w.real(), -w.imag());
    const cld vb(v.real(), -v.imag());
    for (std::size_t n = 1; n <= terms; ++n) {
        const long double nn = static_cast<long double>(n);
        const long double weight = std::pow(nn, 1.0L - alpha);
        const cld bw = std::pow(nn, static_cast<long double>(alpha)) * std::pow(wb, static_cast<long double>(n - 1));
        const cld bv = std::pow(nn, static_cast<long double>(alpha)) * std::pow(vb, static_cast<long double>(n - 1));
        acc += weight * bv * std::conj(bw);
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Central finite difference of f at z along the real axis.
template <typename F>
complex derivative_fd(F&& f, complex z, double h = 1e-6) {
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Taylor coefficients of f at 0 by the trapezoid rule on |z| = r (Cauchy integral).
template <typename F>
std::vector<complex> taylor_by_contour(F&& f, std::size_t count, double r = 0.5, std::size_t samples = 256) {
    std::vector<complex> out(count);
    for (std::size_t j = 0; j < samples; ++j) {
        const double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(samples);
        const complex z = std::polar(r, theta);
        const complex fz = f(z);
        for (std::size_t n = 0; n < count; ++n) {
            out[n] += fz * std::polar(std::pow(r, -static_cast<double>(n)), -static_cast<double>(n) * theta);
        }
    }
    for (auto& c : out) {
        c /= static_cast<double>(samples);
    }
    return out;
}

// Largest singular value by power iteration on A^* A.
inline double power_iteration_norm(const Eigen::MatrixXcd& a, int iterations = 5000) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(a.cols());
    x.normalize();
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXcd y = a.adjoint() * (a * x);
        const double lambda = y.norm();
        if (lambda == 0.0) {
            return 0.0;
        }
        x = y / lambda;
        const double next = std::sqrt(lambda);
        if (std::abs(next - sigma) <= 1e-15 * next) {
            return next;
        }
        sigma = next;
    }
    return sigma;
}

// u + rho * lambda (p - z)/(1 - conj(p) z): image of the circle has center u
// and radius rho, so the sup norm is |u| + rho.
inline oplab::LinearFractionalMap shifted_automorphism(complex u, double rho, complex p, complex lambda) {
    return {-u * std::conj(p) - rho * lambda, u + rho * lambda * p, -std::conj(p), 1.0};
}

class RandomMaps {
public:
    explicit RandomMaps(unsigned seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

    complex in_disk(double radius) { return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2 * M_PI)); }

    complex unimodular() { return std::polar(1.0, uniform(0.0, 2 * M_PI)); }

    // Self-map with sup norm exactly `sup` (before rounding).
    oplab::LinearFractionalMap with_sup_norm(double sup) {
        const double rho = uniform(0.05, 1.0) * sup;
        const complex u = std::polar(sup - rho, uniform(0.0, 2 * M_PI));
        return shifted_automorphism(u, rho, in_disk(0.7), unimodular());
    }

    oplab::LinearFractionalMap self_map() { return with_sup_norm(uniform(0.1, 1.0)); }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace oracle
