#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace nctorus {

struct SimplexResult {
    std::array<double, 3> x{};
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

/// Nelder-Mead on R^3 with standard coefficients (reflect 1, expand 2,
/// contract 1/2, shrink 1/2). Terminates when the simplex diameter falls
/// below `size_tol`.
inline SimplexResult nelder_mead(const std::function<double(const std::array<double, 3>&)>& f,
                                 std::array<double, 3> start, double initial_step,
                                 double size_tol = 1e-10, int max_iter = 2000) {
    constexpr int dim = 3;
    struct Vertex {
        std::array<double, 3> x;
        double fx;
    };
    SimplexResult result;
    auto eval = [&](const std::array<double, 3>& x) {
        ++result.evaluations;
        return f(x);
    };

    std::vector<Vertex> simplex;
    simplex.push_back({start, eval(start)});
    for (int d = 0; d < dim; ++d) {
        auto x = start;
        x[d] += initial_step;
        simplex.push_back({x, eval(x)});
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
    for (int iter = 0; iter < max_iter; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value);

        double diameter = 0.0;
        for (int v = 1; v <= dim; ++v)
            for (int d = 0; d < dim; ++d)
                diameter = std::max(diameter,
                                    std::abs(simplex[v].x[d] - simplex[0].x[d]));
        if (diameter < size_tol) {
            result.converged = true;
            break;
        }

        std::array<double, 3> centroid{};
        for (int v = 0; v < dim; ++v)
            for (int d = 0; d < dim; ++d) centroid[d] += simplex[v].x[d] / dim;

        auto blend = [&](double coef) {
            std::array<double, 3> x;
            for (int d = 0; d < dim; ++d)
                x[d] = centroid[d] + coef * (centroid[d] - simplex[dim].x[d]);
            return x;
        };

        auto xr = blend(1.0);
        double fr = eval(xr);
        if (fr < simplex[0].fx) {
            auto xe = blend(2.0);
            double fe = eval(xe);
            simplex[dim] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < simplex[dim - 1].fx) {
            simplex[dim] = {xr, fr};
        } else {
            auto xc = blend(fr < simplex[dim].fx ? 0.5 : -0.5);
            double fc = eval(xc);
            if (fc < std::min(fr, simplex[dim].fx)) {
                simplex[dim] = {xc, fc};
            } else {
                for (int v = 1; v <= dim; ++v) {
                    for (int d = 0; d < dim; ++d)
                        simplex[v].x[d] =
                            simplex[0].x[d] + 0.5 * (simplex[v].x[d] - simplex[0].x[d]);
                    simplex[v].fx = eval(simplex[v].x);
                }
            }
        }
    }

    std::sort(simplex.begin(), simplex.end(), by_value);
    result.x = simplex[0].x;
    result.value = simplex[0].fx;
    return result;
}

}  // namespace nctorus
