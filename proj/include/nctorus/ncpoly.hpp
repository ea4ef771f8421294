#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "nctorus/errors.hpp"

namespace nctorus {

using Complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// A normal-ordered word U^m V^n.
struct Word {
    std::int64_t m = 0;
    std::int64_t n = 0;
    friend auto operator<=>(const Word&, const Word&) = default;
};

/// Coefficient c * e^{2*pi*i*theta*phase} with the phase exponent kept as an
/// exact integer for as long as possible. Reordering and adjoints only ever
/// shift `phase` by integers, so monomial algebra stays exact; the phase is
/// collapsed into `c` only when two terms with different exponents are added.
struct PhasedCoeff {
    Complex c{0.0, 0.0};
    std::int64_t phase = 0;
};

/// Element of the smooth quantum torus A_theta: a finite sum of
/// normal-ordered monomials U^m V^n with nonzero coefficients.
class NCPoly {
public:
    using TermMap = std::map<Word, PhasedCoeff>;

    explicit NCPoly(double theta) : theta_(theta) {
        if (!(theta > 0.0 && theta < 1.0))
            throw std::invalid_argument("NCPoly: theta must lie in (0,1)");
    }

    static NCPoly zero(double theta) { return NCPoly(theta); }

    static NCPoly scalar(double theta, Complex c) {
        NCPoly p(theta);
        p.add_term({0, 0}, {c, 0});
        return p;
    }

    static NCPoly one(double theta) { return scalar(theta, {1.0, 0.0}); }

    static NCPoly monomial(double theta, std::int64_t m, std::int64_t n,
                           Complex c = {1.0, 0.0}, std::int64_t phase = 0) {
        NCPoly p(theta);
        p.add_term({m, n}, {c, phase});
        return p;
    }

    static NCPoly gen_u(double theta) { return monomial(theta, 1, 0); }
    static NCPoly gen_v(double theta) { return monomial(theta, 0, 1); }

    double theta() const { return theta_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// e^{2*pi*i*theta*t}
    Complex phase_value(std::int64_t t) const {
        if (t == 0) return {1.0, 0.0};
        return std::polar(1.0, two_pi * theta_ * static_cast<double>(t));
    }

    /// Numeric coefficient of U^m V^n with the phase exponent collapsed.
    Complex coeff(std::int64_t m, std::int64_t n) const {
        auto it = terms_.find({m, n});
        if (it == terms_.end()) return {0.0, 0.0};
        return it->second.c * phase_value(it->second.phase);
    }

    /// Adds c * e^{2 pi i theta phase} * U^m V^n, collapsing phases when the
    /// incoming exponent differs from the stored one, and pruning coefficients
    /// that cancel to exact zero.
    void add_term(Word w, PhasedCoeff pc) {
        if (pc.c == Complex{0.0, 0.0}) return;
        auto [it, inserted] = terms_.try_emplace(w, pc);
        if (inserted) return;
        PhasedCoeff& cur = it->second;
        if (cur.phase == pc.phase) {
            cur.c += pc.c;
        } else {
            cur.c = cur.c * phase_value(cur.phase) + pc.c * phase_value(pc.phase);
            cur.phase = 0;
        }
        if (cur.c == Complex{0.0, 0.0}) terms_.erase(it);
    }

    NCPoly& operator+=(const NCPoly& rhs) {
        require_same_theta(rhs);
        for (const auto& [w, pc] : rhs.terms_) add_term(w, pc);
        return *this;
    }

    NCPoly& operator-=(const NCPoly& rhs) {
        require_same_theta(rhs);
        for (const auto& [w, pc] : rhs.terms_) add_term(w, {-pc.c, pc.phase});
        return *this;
    }

    NCPoly& operator*=(Complex s) {
        if (s == Complex{0.0, 0.0}) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, pc] : terms_) pc.c *= s;
        return *this;
    }

    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(Complex s, NCPoly a) { return a *= s; }
    friend NCPoly operator*(NCPoly a, Complex s) { return a *= s; }
    friend NCPoly operator-(NCPoly a) { return a *= Complex{-1.0, 0.0}; }

    /// Equality of theta and of the collapsed term maps.
    friend bool operator==(const NCPoly& a, const NCPoly& b) {
        if (a.theta_ != b.theta_ || a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return false;
            if (a.coeff(ia->first.m, ia->first.n) != b.coeff(ib->first.m, ib->first.n))
                return false;
        }
        return true;
    }

    void require_same_theta(const NCPoly& other) const {
        if (theta_ != other.theta_)
            throw std::invalid_argument("NCPoly: deformation parameter mismatch");
    }

    std::string str() const {
        std::ostringstream os;
        if (terms_.empty()) return "0";
        bool first = true;
        for (const auto& [w, pc] : terms_) {
            Complex c = pc.c * phase_value(pc.phase);
            if (!first) os << " + ";
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag())
               << "i)";
            if (w.m != 0) os << " U^" << w.m;
            if (w.n != 0) os << " V^" << w.n;
            first = false;
        }
        return os.str();
    }

private:
    double theta_;
    TermMap terms_;
};

/// Largest collapsed-coefficient difference between two elements; the metric
/// used by the tolerance-based tests.
inline double max_coeff_distance(const NCPoly& a, const NCPoly& b) {
    a.require_same_theta(b);
    double worst = 0.0;
    for (const auto& [w, pc] : a.terms())
        worst = std::max(worst, std::abs(a.coeff(w.m, w.n) - b.coeff(w.m, w.n)));
    for (const auto& [w, pc] : b.terms())
        worst = std::max(worst, std::abs(a.coeff(w.m, w.n) - b.coeff(w.m, w.n)));
    return worst;
}

/// Product in normal order. Reordering V^{n1} past U^{m2} contributes the
/// exact phase exponent -n1*m2:
///   (U^{m1}V^{n1})(U^{m2}V^{n2}) = e^{-2 pi i theta n1 m2} U^{m1+m2} V^{n1+n2}.
inline NCPoly normal_product(const NCPoly& a, const NCPoly& b) {
    a.require_same_theta(b);
    NCPoly out(a.theta());
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            Word w{wa.m + wb.m, wa.n + wb.n};
            std::int64_t phase = ca.phase + cb.phase - wa.n * wb.m;
            out.add_term(w, {ca.c * cb.c, phase});
        }
    }
    return out;
}

/// Involution, extended additively from
///   (c U^m V^n)^* = conj(c) e^{-2 pi i theta m n} U^{-m} V^{-n}.
inline NCPoly adjoint(const NCPoly& a) {
    NCPoly out(a.theta());
    for (const auto& [w, pc] : a.terms())
        out.add_term({-w.m, -w.n}, {std::conj(pc.c), -pc.phase - w.m * w.n});
    return out;
}

/// The canonical trace: the collapsed coefficient of the identity word.
inline Complex trace(const NCPoly& a) { return a.coeff(0, 0); }

/// delta_1 scales U^m V^n by 2 pi i m, delta_2 by 2 pi i n.
inline NCPoly derivation(int j, const NCPoly& a) {
    if (j != 1 && j != 2) throw std::invalid_argument("derivation: j must be 1 or 2");
    NCPoly out(a.theta());
    for (const auto& [w, pc] : a.terms()) {
        double exponent = static_cast<double>(j == 1 ? w.m : w.n);
        if (exponent == 0.0) continue;
        out.add_term(w, {pc.c * Complex{0.0, two_pi * exponent}, pc.phase});
    }
    return out;
}

/// The morphism U -> U^p V^q, V -> U^r V^s preserves the defining relation
/// (with the same theta) exactly when ps - qr = 1.
inline bool validate_sl2_morphism(std::int64_t p, std::int64_t q, std::int64_t r,
                                  std::int64_t s) {
    return p * s - q * r == 1;
}

/// A *-morphism of quantum tori given by the images of the two generators.
struct TorusMorphism {
    double theta_source;
    double theta_target;
    NCPoly image_u;
    NCPoly image_v;

    static TorusMorphism identity(double theta) {
        return {theta, theta, NCPoly::gen_u(theta), NCPoly::gen_v(theta)};
    }

    static TorusMorphism sl2(double theta, std::int64_t p, std::int64_t q,
                             std::int64_t r, std::int64_t s) {
        if (!validate_sl2_morphism(p, q, r, s))
            throw std::invalid_argument("TorusMorphism::sl2: ps - qr must equal 1");
        return {theta, theta, NCPoly::monomial(theta, p, q),
                NCPoly::monomial(theta, r, s)};
    }

    /// True when both images are unit-modulus monomials c U^p V^q, c' U^r V^s
    /// whose exponent matrix preserves the defining relation. Well-definedness
    /// is only certified for this monomial family.
    bool is_well_defined() const {
        if (image_u.size() != 1 || image_v.size() != 1) return false;
        const auto& [wu, cu] = *image_u.terms().begin();
        const auto& [wv, cv] = *image_v.terms().begin();
        if (std::abs(std::abs(cu.c) - 1.0) > 1e-12) return false;
        if (std::abs(std::abs(cv.c) - 1.0) > 1e-12) return false;
        return validate_sl2_morphism(wu.m, wu.n, wv.m, wv.n);
    }
};

/// Noncommutative Polyakov action
///   S(phi) = sum_{k,l} tau[ delta_k(phi(U_l))^* delta_k(phi(U_l)) ].
/// The imaginary residue must vanish (exactly for monomial images; to 1e-12
/// in floating point otherwise).
inline double action(const TorusMorphism& phi) {
    phi.image_u.require_same_theta(phi.image_v);
    Complex total{0.0, 0.0};
    for (const NCPoly* img : {&phi.image_u, &phi.image_v}) {
        for (int k = 1; k <= 2; ++k) {
            NCPoly d = derivation(k, *img);
            total += trace(normal_product(adjoint(d), d));
        }
    }
    if (std::abs(total.imag()) > 1e-12)
        throw consistency_error("action: imaginary residue " +
                                std::to_string(total.imag()));
    return total.real();
}

}  // namespace nctorus
