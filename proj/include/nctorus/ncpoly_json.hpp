#pragma once

#include <json.hpp>

#include "nctorus/ncpoly.hpp"

namespace nctorus {

/// {"theta": t, "terms": [{"m": m, "n": n, "re": re, "im": im}, ...]}
/// Terms are emitted in word order with collapsed numeric coefficients.
inline nlohmann::json to_json(const NCPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, pc] : p.terms()) {
        Complex c = p.coeff(w.m, w.n);
        terms.push_back({{"m", w.m}, {"n", w.n}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"theta", p.theta()}, {"terms", terms}};
}

inline NCPoly ncpoly_from_json(const nlohmann::json& j) {
    NCPoly p(j.at("theta").get<double>());
    for (const auto& t : j.at("terms")) {
        p.add_term({t.at("m").get<std::int64_t>(), t.at("n").get<std::int64_t>()},
                   {Complex{t.at("re").get<double>(), t.at("im").get<double>()}, 0});
    }
    return p;
}

inline nlohmann::json to_json(const TorusMorphism& phi) {
    return {{"theta_source", phi.theta_source},
            {"theta_target", phi.theta_target},
            {"image_u", to_json(phi.image_u)},
            {"image_v", to_json(phi.image_v)}};
}

inline TorusMorphism morphism_from_json(const nlohmann::json& j) {
    return {j.at("theta_source").get<double>(), j.at("theta_target").get<double>(),
            ncpoly_from_json(j.at("image_u")), ncpoly_from_json(j.at("image_v"))};
}

}  // namespace nctorus
