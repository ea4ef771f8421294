#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "nctorus/errors.hpp"

namespace nctorus {

using Matrix = Eigen::MatrixXcd;

/// The n-dimensional clock/shift representation of the quantum torus:
/// unitaries u, v with uv = q vu and u^n = v^n = 1, hermitian x, y with
/// u = e^{ix/r}, v = e^{iy/r}, the rank-one projections P, Q entering the
/// commutator identities, and the Fourier matrix relating the u- and
/// v-eigenbases. The scale k is tied to (n, r) by n = 2 pi r^2 / k.
struct ClockShiftRep {
    int n;
    double r;
    double k;
    std::complex<double> q;
    Matrix u, v, x, y, P, Q, F;
};

inline ClockShiftRep build_rep(int n, double r) {
    if (n < 2) throw std::invalid_argument("build_rep: n must be >= 2");
    if (!(r > 0.0)) throw std::invalid_argument("build_rep: r must be positive");

    ClockShiftRep rep;
    rep.n = n;
    rep.r = r;
    rep.k = 2.0 * std::numbers::pi * r * r / n;
    const double step = 2.0 * std::numbers::pi / n;  // = k / r^2
    rep.q = std::polar(1.0, step);

    rep.u = Matrix::Zero(n, n);
    rep.v = Matrix::Zero(n, n);
    rep.x = Matrix::Zero(n, n);
    rep.F = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        rep.u(j, j) = std::polar(1.0, step * j);
        rep.v((j + 1) % n, j) = 1.0;
        rep.x(j, j) = (rep.k / r) * j;
        for (int l = 0; l < n; ++l)
            rep.F(j, l) = std::polar(1.0 / std::sqrt(double(n)),
                                     -step * double(j) * double(l));
    }
    // y is diagonal with eigenvalues (k/r) l in the Fourier basis |l>_2.
    rep.y = rep.F * rep.x * rep.F.adjoint();

    rep.P = Matrix::Zero(n, n);
    rep.P(n - 1, n - 1) = 1.0;
    rep.Q = rep.F.col(0) * rep.F.col(0).adjoint();
    return rep;
}

/// delta_1 = -(1/ik) ad y, delta_2 = -(1/ik) ad x.
inline Matrix rep_derivation(int j, const ClockShiftRep& rep, const Matrix& a) {
    if (j != 1 && j != 2)
        throw std::invalid_argument("rep_derivation: j must be 1 or 2");
    if (a.rows() != rep.n || a.cols() != rep.n)
        throw std::invalid_argument("rep_derivation: dimension mismatch");
    const Matrix& h = (j == 1) ? rep.y : rep.x;
    const std::complex<double> scale{0.0, 1.0 / rep.k};  // -1/(ik) = i/k
    return scale * (h * a - a * h);
}

inline double unitarity_defect(const Matrix& W) {
    return (W.adjoint() * W - Matrix::Identity(W.rows(), W.cols()))
        .cwiseAbs()
        .maxCoeff();
}

/// Action of the inner *-automorphism Ad W:
///   S(W) = sum_{k,l} Tr[ delta_k(W u_l W^*)^dagger delta_k(W u_l W^*) ].
/// W is rejected (not re-unitarized) when its unitarity defect exceeds 1e-10.
inline double conj_action(const ClockShiftRep& rep, const Matrix& W) {
    if (W.rows() != rep.n || W.cols() != rep.n)
        throw std::invalid_argument("conj_action: dimension mismatch");
    double defect = unitarity_defect(W);
    if (defect > 1e-10)
        throw std::invalid_argument("conj_action: W not unitary (defect " +
                                    std::to_string(defect) + ")");
    std::complex<double> total{0.0, 0.0};
    for (const Matrix* gen : {&rep.u, &rep.v}) {
        Matrix conj = W * (*gen) * W.adjoint();
        for (int j = 1; j <= 2; ++j) {
            Matrix d = rep_derivation(j, rep, conj);
            total += (d.adjoint() * d).trace();
        }
    }
    if (std::abs(total.imag()) > 1e-10)
        throw consistency_error("conj_action: imaginary residue " +
                                std::to_string(total.imag()));
    return total.real();
}

}  // namespace nctorus
