#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nctorus/nelder_mead.hpp"
#include "nctorus/su2.hpp"

namespace nctorus {

/// Deterministic pairwise (cascade) summation over a fixed-order range.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

/// Precomputed quadrature table: per grid point the weight and the scale-free
/// action s = r^2 S_P (i.e. S_P at r = 1), so that S_P(p, r) = s / r^2 across
/// a whole r-sweep without re-evaluating the trigonometry.
struct ActionTable {
    std::vector<double> s;
    std::vector<double> w;
};

inline ActionTable tabulate_action(const std::vector<EulerPoint>& grid) {
    ActionTable t;
    t.s.reserve(grid.size());
    t.w.reserve(grid.size());
    for (const auto& p : grid) {
        t.s.push_back(closed_form_action(p, 1.0));
        t.w.push_back(p.weight);
    }
    return t;
}

/// Z(r) = sum_i w_i exp(-S_P(p_i, r)), evaluated exactly as written.
inline double partition(double r, const std::vector<EulerPoint>& grid) {
    if (!(r > 0.0)) throw std::invalid_argument("partition: r must be positive");
    std::vector<double> terms;
    terms.reserve(grid.size());
    for (const auto& p : grid)
        terms.push_back(p.weight * std::exp(-closed_form_action(p, r)));
    return pairwise_sum(terms);
}

/// ln Z(r) in log-sum-exp form; robust far below the underflow threshold of
/// the plain sum (the action grows like 4/r^2 as r -> 0).
inline double log_partition(double r, const ActionTable& table) {
    if (!(r > 0.0)) throw std::invalid_argument("log_partition: r must be positive");
    const double inv_r2 = 1.0 / (r * r);
    double smin = std::numeric_limits<double>::infinity();
    for (double s : table.s) smin = std::min(smin, s);
    std::vector<double> terms;
    terms.reserve(table.s.size());
    for (std::size_t i = 0; i < table.s.size(); ++i)
        terms.push_back(table.w[i] * std::exp(-(table.s[i] - smin) * inv_r2));
    return -smin * inv_r2 + std::log(pairwise_sum(terms));
}

inline double partition(double r, const ActionTable& table) {
    return std::exp(log_partition(r, table));
}

inline void check_fd_step(double r, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    if (h >= r) throw std::invalid_argument("finite-difference step must be < r");
}

/// <E> = -d ln Z / d beta at beta = r, central difference with step h.
/// Negative here: Z is strictly increasing in r. Magnitude = |result|.
inline double energy(double r, const ActionTable& table, double h) {
    check_fd_step(r, h);
    return -(log_partition(r + h, table) - log_partition(r - h, table)) / (2.0 * h);
}

/// The variance in the form (1/Z^2) d^2 Z / d beta^2, via a second central
/// difference carried out in log space so the ratio survives far past the
/// underflow point of Z itself. This form differs from the fluctuation
/// identity by a 1/Z factor and the (d lnZ/d beta)^2 cross term, and the two
/// diverge quickly away from Z ~ 1; both are exposed so the curves can be
/// compared side by side (CSV columns varE_paper / varE_std).
inline double energy_variance(double r, const ActionTable& table, double h) {
    check_fd_step(r, h);
    const double l0 = log_partition(r, table);
    const double lp = log_partition(r + h, table);
    const double lm = log_partition(r - h, table);
    return (std::exp(lp - 2.0 * l0) - 2.0 * std::exp(-l0) + std::exp(lm - 2.0 * l0)) /
           (h * h);
}

/// The standard fluctuation identity d^2 ln Z / d beta^2, second central
/// difference of ln Z. This is the variance whose magnitude follows the
/// ~ 29.7 r^{-3.96} power law over r in [1,3].
inline double energy_variance_standard(double r, const ActionTable& table, double h) {
    check_fd_step(r, h);
    return (log_partition(r + h, table) - 2.0 * log_partition(r, table) +
            log_partition(r - h, table)) /
           (h * h);
}

inline constexpr double default_h_rel = 1e-3;

/// C_v = (1/T^2) <(Delta E)^2> in units k_B = 1, with beta = 1/T = r and the
/// variance taken from the fluctuation identity (the displayed variance
/// formula makes C_v diverge like e^{4/beta^2} as T grows; the identity keeps
/// C_v = d<E>/dT and the displayed C_v formula consistent with each other).
inline double specific_heat(double T, const ActionTable& table,
                            double h_rel = default_h_rel) {
    if (!(T > 0.0)) throw std::invalid_argument("specific_heat: T must be positive");
    const double r = 1.0 / T;
    return energy_variance_standard(r, table, h_rel * r) / (T * T);
}

/// S = ln Z + beta <E> with beta = 1/T = r, k_B = 1.
inline double entropy(double T, const ActionTable& table,
                      double h_rel = default_h_rel) {
    if (!(T > 0.0)) throw std::invalid_argument("entropy: T must be positive");
    const double r = 1.0 / T;
    return log_partition(r, table) + r * energy(r, table, h_rel * r);
}

// grid-level conveniences; sweeps should tabulate once and reuse
inline double energy(double r, const std::vector<EulerPoint>& grid, double h) {
    return energy(r, tabulate_action(grid), h);
}
inline double energy_variance(double r, const std::vector<EulerPoint>& grid, double h) {
    return energy_variance(r, tabulate_action(grid), h);
}
inline double energy_variance_standard(double r, const std::vector<EulerPoint>& grid,
                                       double h) {
    return energy_variance_standard(r, tabulate_action(grid), h);
}
inline double specific_heat(double T, const std::vector<EulerPoint>& grid,
                            double h_rel = default_h_rel) {
    return specific_heat(T, tabulate_action(grid), h_rel);
}
inline double entropy(double T, const std::vector<EulerPoint>& grid,
                      double h_rel = default_h_rel) {
    return entropy(T, tabulate_action(grid), h_rel);
}

struct Extrema {
    double min_value = 0.0;
    double max_value = 0.0;
    EulerPoint argmin;
    EulerPoint argmax;
    bool converged = false;
};

/// Coarse scan (default 16^3, theta including its endpoints, phi/psi periodic)
/// followed by Nelder-Mead refinement from the best cells of each sign. The
/// landscape repeats its extrema infinitely often, so multi-start suffices:
/// any one global value is the answer.
inline Extrema extremize(double r, int scan_per_axis = 16, int refine_starts = 8,
                         double size_tol = 1e-10) {
    if (!(r > 0.0)) throw std::invalid_argument("extremize: r must be positive");
    if (scan_per_axis < 2) throw std::invalid_argument("extremize: scan too coarse");

    auto objective = [r](const std::array<double, 3>& a) {
        EulerPoint p = wrap_euler(a[0], a[1], a[2]);
        return closed_form_action(p, r);
    };

    struct Cell {
        std::array<double, 3> x;
        double value;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(scan_per_axis) * scan_per_axis *
                  scan_per_axis);
    for (int it = 0; it < scan_per_axis; ++it) {
        const double theta = pi * it / (scan_per_axis - 1.0);
        for (int ip = 0; ip < scan_per_axis; ++ip) {
            const double phi = 2.0 * pi * ip / scan_per_axis;
            for (int is = 0; is < scan_per_axis; ++is) {
                const double psi = 4.0 * pi * is / scan_per_axis;
                std::array<double, 3> x{phi, theta, psi};
                cells.push_back({x, objective(x)});
            }
        }
    }

    Extrema out;
    out.converged = true;
    const double step = pi / scan_per_axis;

    auto refine = [&](bool maximize) {
        auto cmp = [maximize](const Cell& a, const Cell& b) {
            return maximize ? a.value > b.value : a.value < b.value;
        };
        std::vector<Cell> ranked = cells;
        std::sort(ranked.begin(), ranked.end(), cmp);
        const int starts = std::min<int>(refine_starts, static_cast<int>(ranked.size()));
        double best = ranked[0].value;
        std::array<double, 3> best_x = ranked[0].x;
        bool all_converged = true;
        for (int i = 0; i < starts; ++i) {
            auto f = [&](const std::array<double, 3>& a) {
                double v = objective(a);
                return maximize ? -v : v;
            };
            SimplexResult res = nelder_mead(f, ranked[i].x, step, size_tol);
            all_converged = all_converged && res.converged;
            const double v = maximize ? -res.value : res.value;
            if (maximize ? v > best : v < best) {
                best = v;
                best_x = res.x;
            }
        }
        out.converged = out.converged && all_converged;
        EulerPoint arg = wrap_euler(best_x[0], best_x[1], best_x[2]);
        if (maximize) {
            out.max_value = best;
            out.argmax = arg;
        } else {
            out.min_value = best;
            out.argmin = arg;
        }
    };
    refine(false);
    refine(true);
    return out;
}

struct PowerLawFit {
    double prefactor = 0.0;
    double exponent = 0.0;
    double residual = 0.0;  // RMS in log space
};

/// Least squares of ln y on ln x. All data must be strictly positive.
inline PowerLawFit powerlaw_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3)
        throw std::invalid_argument("powerlaw_fit: need at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("powerlaw_fit: data must be positive");
        const double lx = std::log(x);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("powerlaw_fit: degenerate abscissa");
    PowerLawFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / n;
    fit.prefactor = std::exp(intercept);
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double e = std::log(y) - (intercept + fit.exponent * std::log(x));
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

/// A sampled observable-vs-parameter table with an optional power-law fit of
/// the magnitudes.
struct ThermoCurve {
    enum class Abscissa { r, T };
    Abscissa kind = Abscissa::r;
    std::vector<std::pair<double, double>> points;
    std::optional<PowerLawFit> fit;

    void append(double x, double value) {
        if (!points.empty() && x <= points.back().first)
            throw std::invalid_argument("ThermoCurve: abscissa must be strictly increasing");
        points.push_back({x, value});
    }

    /// Fits |value| vs x; only legal with >= 3 points, all values nonzero.
    void fit_magnitudes() {
        std::vector<std::pair<double, double>> mags;
        mags.reserve(points.size());
        for (const auto& [x, y] : points) mags.push_back({x, std::abs(y)});
        fit = powerlaw_fit(mags);
    }
};

}  // namespace nctorus
