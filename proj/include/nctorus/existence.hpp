#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nctorus {

/// Element of GL(2, Z): integer entries, determinant +-1.
struct IntegerMatrix2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }

    friend IntegerMatrix2 operator*(const IntegerMatrix2& k, const IntegerMatrix2& l) {
        return {k.a * l.a + k.b * l.c, k.a * l.b + k.b * l.d,
                k.c * l.a + k.d * l.c, k.c * l.b + k.d * l.d};
    }
};

/// Moebius action g theta = (a theta + b)/(c theta + d). For irrational theta
/// the denominator never vanishes; composition satisfies k(l theta) = (kl) theta.
inline double mobius_act(const IntegerMatrix2& g, double theta) {
    if (g.det() != 1 && g.det() != -1)
        throw std::invalid_argument("mobius_act: matrix not in GL(2,Z)");
    return (g.a * theta + g.b) / (g.c * theta + g.d);
}

/// A candidate integer relation n Theta = c theta + d found within tolerance.
/// Flagged as an isomorphism candidate exactly when n = 1 and c = +-1 (then,
/// and only then, the unital *-homomorphism A_Theta -> M_n(A_theta) can be an
/// isomorphism onto its image).
struct RelationHit {
    int n = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;
    double residual = 0.0;
    bool isomorphism_candidate = false;
};

/// Enumerates 1 <= n <= n_max, 0 < |c| <= c_max, |d| <= d_max and returns the
/// triples with |n Theta - c theta - d| < tol, sorted by residual. Floating
/// point makes every hit a candidate, not a proof.
inline std::vector<RelationHit> relation_search(double Theta, double theta, int n_max,
                                                std::int64_t c_max, std::int64_t d_max,
                                                double tol) {
    if (!(Theta > 0.0 && Theta < 1.0) || !(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("relation_search: Theta, theta must lie in (0,1)");
    if (n_max < 1 || c_max < 1 || d_max < 1)
        throw std::invalid_argument("relation_search: bounds must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("relation_search: tol must be positive");

    std::vector<RelationHit> hits;
    for (int n = 1; n <= n_max; ++n) {
        const double lhs = n * Theta;
        for (std::int64_t c = -c_max; c <= c_max; ++c) {
            if (c == 0) continue;
            for (std::int64_t d = -d_max; d <= d_max; ++d) {
                const double residual = std::abs(lhs - c * theta - d);
                if (residual < tol)
                    hits.push_back({n, c, d, residual,
                                    n == 1 && (c == 1 || c == -1)});
            }
        }
    }
    std::sort(hits.begin(), hits.end(), [](const RelationHit& x, const RelationHit& y) {
        if (x.residual != y.residual) return x.residual < y.residual;
        if (x.n != y.n) return x.n < y.n;
        if (x.c != y.c) return x.c < y.c;
        return x.d < y.d;
    });
    return hits;
}

}  // namespace nctorus
