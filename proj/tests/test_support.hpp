#pragma once

// Shared test-only helpers: random element generators and the brute-force
// clock/shift matrix oracle for the symbolic algebra. The oracle maps
// U -> clock(N, p), V -> shift(N), which satisfy uv = e^{2 pi i p/N} vu, so a
// symbolic identity at rational theta = p/N can be checked by plain matrix
// arithmetic, independent of the normal-ordering bookkeeping under test.

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "nctorus/ncpoly.hpp"

namespace testsupport {

inline Eigen::MatrixXcd clock_matrix(int N, int p) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j)
        u(j, j) = std::polar(1.0, nctorus::two_pi * p * j / N);
    return u;
}

inline Eigen::MatrixXcd shift_matrix(int N) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j) v((j + 1) % N, j) = 1.0;
    return v;
}

inline Eigen::MatrixXcd int_power(const Eigen::MatrixXcd& m, std::int64_t e) {
    const int N = static_cast<int>(m.rows());
    Eigen::MatrixXcd base = e >= 0 ? m : Eigen::MatrixXcd(m.adjoint());
    std::int64_t k = e >= 0 ? e : -e;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(N, N);
    for (; k > 0; --k) out = out * base;
    return out;
}

/// Evaluates the element in the N-dimensional representation at theta = p/N.
inline Eigen::MatrixXcd to_matrix(const nctorus::NCPoly& poly, int N, int p) {
    const auto u = clock_matrix(N, p);
    const auto v = shift_matrix(N);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& [w, pc] : poly.terms())
        out += poly.coeff(w.m, w.n) * (int_power(u, w.m) * int_power(v, w.n));
    return out;
}

struct PolyGen {
    std::mt19937 rng;
    explicit PolyGen(unsigned seed) : rng(seed) {}

    nctorus::NCPoly random_poly(double theta, int max_terms = 4, int max_exp = 5) {
        std::uniform_int_distribution<int> nterms(1, max_terms);
        std::uniform_int_distribution<std::int64_t> expo(-max_exp, max_exp);
        std::uniform_int_distribution<std::int64_t> ph(-3, 3);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        nctorus::NCPoly out(theta);
        const int n = nterms(rng);
        for (int i = 0; i < n; ++i)
            out.add_term({expo(rng), expo(rng)},
                         {{coef(rng), coef(rng)}, ph(rng)});
        return out;
    }

    double random_theta() {
        std::uniform_real_distribution<double> d(0.05, 0.95);
        return d(rng);
    }
};

}  // namespace testsupport
