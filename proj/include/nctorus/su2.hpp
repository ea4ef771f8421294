#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/errors.hpp"

namespace nctorus {

inline constexpr double pi = std::numbers::pi;

/// A point (phi, theta, psi) of SU(2) in Euler angles together with its
/// quadrature weight (Haar density sin(theta)/(16 pi^2) folded in).
struct EulerPoint {
    double phi = 0.0;    // [0, 2 pi]
    double theta = 0.0;  // [0, pi]
    double psi = 0.0;    // [0, 4 pi]
    double weight = 0.0;
};

inline void check_euler_ranges(double phi, double theta, double psi) {
    if (!(phi >= 0.0 && phi <= 2.0 * pi))
        throw std::invalid_argument("euler: phi out of [0, 2pi]");
    if (!(theta >= 0.0 && theta <= pi))
        throw std::invalid_argument("euler: theta out of [0, pi]");
    if (!(psi >= 0.0 && psi <= 4.0 * pi))
        throw std::invalid_argument("euler: psi out of [0, 4pi]");
}

/// g(phi,theta,psi) =
///   [ cos(t/2) e^{i(phi+psi)/2}   i sin(t/2) e^{i(phi-psi)/2} ]
///   [ i sin(t/2) e^{-i(phi-psi)/2}  cos(t/2) e^{-i(phi+psi)/2} ]
inline Eigen::Matrix2cd euler_matrix(double phi, double theta, double psi) {
    check_euler_ranges(phi, theta, psi);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::complex<double> i{0.0, 1.0};
    Eigen::Matrix2cd g;
    g(0, 0) = c * std::exp(i * ((phi + psi) / 2.0));
    g(0, 1) = i * s * std::exp(i * ((phi - psi) / 2.0));
    g(1, 0) = i * s * std::exp(-i * ((phi - psi) / 2.0));
    g(1, 1) = c * std::exp(-i * ((phi + psi) / 2.0));
    return g;
}

inline Eigen::Matrix2cd euler_matrix(const EulerPoint& p) {
    return euler_matrix(p.phi, p.theta, p.psi);
}

/// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

/// Tensor-product quadrature grid for the normalized Haar measure
/// d mu = sin(theta)/(16 pi^2) d theta d phi d psi: Gauss-Legendre in theta
/// with the sin(theta) density folded into the weights, midpoint-uniform
/// periodic nodes in phi and psi. Total weight sums to 1.
inline std::vector<EulerPoint> haar_grid(int n_theta, int n_phi, int n_psi) {
    if (n_theta < 2 || n_phi < 2 || n_psi < 2)
        throw std::invalid_argument("haar_grid: all counts must be >= 2");
    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre(n_theta, gl_nodes, gl_weights);

    // Pin the theta mass to its exact value (int_0^pi sin = 2) so the grid is
    // normalized at every resolution, not just once Gauss-Legendre has
    // converged on the sine density.
    double sin_mass = 0.0;
    for (int it = 0; it < n_theta; ++it)
        sin_mass += gl_weights[it] * std::sin(0.5 * pi * (gl_nodes[it] + 1.0));
    const double mass_fix = (4.0 / pi) / sin_mass;

    const double dphi = 2.0 * pi / n_phi;
    const double dpsi = 4.0 * pi / n_psi;
    std::vector<EulerPoint> grid;
    grid.reserve(static_cast<std::size_t>(n_theta) * n_phi * n_psi);
    for (int it = 0; it < n_theta; ++it) {
        const double theta = 0.5 * pi * (gl_nodes[it] + 1.0);
        const double wt = mass_fix * 0.5 * pi * gl_weights[it] * std::sin(theta) /
                          (16.0 * pi * pi);
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = (ip + 0.5) * dphi;
            for (int is = 0; is < n_psi; ++is) {
                const double psi = (is + 0.5) * dpsi;
                grid.push_back({phi, theta, psi, wt * dphi * dpsi});
            }
        }
    }
    return grid;
}

/// The closed-form Polyakov action of the inner automorphism Ad g(phi,theta,psi)
/// on the 2x2 representation, as a function of the Euler angles:
///
///   S_P(g) = (1/(16 r^2)) e^{-2i(phi+psi)} [ -4(-1+e^{4i phi})(-1+e^{4i psi}) cos(theta)
///            - (1+e^{2i phi})^2 (1+e^{2i psi})^2 cos(2 theta)
///            + 4 e^{2i(phi+psi)} (21 + cos(2 phi)(1 - 3 cos(2 psi)) + cos(2 psi)) ].
///
/// The expression is evaluated term by term in exactly this form; the
/// imaginary part must vanish and is asserted against 1e-9 before the real
/// part is returned.
inline double closed_form_action(double phi, double theta, double psi, double r) {
    check_euler_ranges(phi, theta, psi);
    if (!(r > 0.0)) throw std::invalid_argument("closed_form_action: r must be positive");
    const std::complex<double> i{0.0, 1.0};
    const auto e2p = std::exp(2.0 * i * phi);
    const auto e2s = std::exp(2.0 * i * psi);
    const auto e4p = std::exp(4.0 * i * phi);
    const auto e4s = std::exp(4.0 * i * psi);
    const std::complex<double> bracket =
        -4.0 * (-1.0 + e4p) * (-1.0 + e4s) * std::cos(theta) -
        (1.0 + e2p) * (1.0 + e2p) * (1.0 + e2s) * (1.0 + e2s) * std::cos(2.0 * theta) +
        4.0 * std::exp(2.0 * i * (phi + psi)) *
            (21.0 + std::cos(2.0 * phi) * (1.0 - 3.0 * std::cos(2.0 * psi)) +
             std::cos(2.0 * psi));
    const std::complex<double> val =
        std::exp(-2.0 * i * (phi + psi)) * bracket / (16.0 * r * r);
    if (std::abs(val.imag()) > 1e-9)
        throw consistency_error("closed_form_action: imaginary residue " +
                                std::to_string(val.imag()));
    return val.real();
}

inline double closed_form_action(const EulerPoint& p, double r) {
    return closed_form_action(p.phi, p.theta, p.psi, r);
}

/// Maps arbitrary reals onto the fundamental Euler ranges using the
/// periodicity of the action (period 2pi in phi and psi, reflection in theta),
/// so derivative-free search can roam freely.
inline EulerPoint wrap_euler(double phi, double theta, double psi) {
    auto mod_pos = [](double x, double period) {
        double y = std::fmod(x, period);
        return y < 0.0 ? y + period : y;
    };
    double t = mod_pos(theta, 2.0 * pi);
    if (t > pi) t = 2.0 * pi - t;
    return {mod_pos(phi, 2.0 * pi), t, mod_pos(psi, 4.0 * pi), 0.0};
}

}  // namespace nctorus
