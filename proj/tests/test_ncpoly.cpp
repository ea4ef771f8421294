#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include <json.hpp>

#include "nctorus/ncpoly.hpp"
#include "nctorus/ncpoly_json.hpp"
#include "test_support.hpp"

using namespace nctorus;
using testsupport::PolyGen;
using testsupport::to_matrix;
using Catch::Matchers::WithinAbs;

namespace {
const double pi2 = std::numbers::pi * std::numbers::pi;

double dist(const NCPoly& a, const NCPoly& b) { return max_coeff_distance(a, b); }
}  // namespace

TEST_CASE("normal_product reorders words") {
    const double theta = 0.3;
    auto U = NCPoly::gen_u(theta);
    auto V = NCPoly::gen_v(theta);

    SECTION("U*V is already normal-ordered") {
        auto p = normal_product(U, V);
        REQUIRE(p.size() == 1);
        CHECK(p.coeff(1, 1) == Complex{1.0, 0.0});
    }
    SECTION("V*U picks up e^{-2 pi i theta}") {
        auto p = normal_product(V, U);
        REQUIRE(p.size() == 1);
        auto expect = std::polar(1.0, -two_pi * theta);
        CHECK_THAT(std::abs(p.coeff(1, 1) - expect), WithinAbs(0.0, 1e-15));
    }
    SECTION("(U^2 V)(U V^3) = e^{-2 pi i theta} U^3 V^4") {
        auto a = NCPoly::monomial(theta, 2, 1);
        auto b = NCPoly::monomial(theta, 1, 3);
        auto p = normal_product(a, b);
        REQUIRE(p.size() == 1);
        auto expect = std::polar(1.0, -two_pi * theta);
        CHECK_THAT(std::abs(p.coeff(3, 4) - expect), WithinAbs(0.0, 1e-15));
    }
    SECTION("theta mismatch is rejected") {
        CHECK_THROWS_AS(normal_product(NCPoly::gen_u(0.3), NCPoly::gen_u(0.4)),
                        std::invalid_argument);
    }
}

TEST_CASE("normal_product agrees with the clock/shift oracle at rational theta") {
    const int N = 7, p = 3;
    const double theta = double(p) / N;
    PolyGen gen(2024);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = gen.random_poly(theta);
        auto b = gen.random_poly(theta);
        Eigen::MatrixXcd lhs = to_matrix(normal_product(a, b), N, p);
        Eigen::MatrixXcd rhs = to_matrix(a, N, p) * to_matrix(b, N, p);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("adjoint") {
    const double theta = 0.27;
    SECTION("U* = U^{-1}") {
        auto a = adjoint(NCPoly::gen_u(theta));
        REQUIRE(a.size() == 1);
        CHECK(a.coeff(-1, 0) == Complex{1.0, 0.0});
    }
    SECTION("(UV)* = e^{-2 pi i theta} U^{-1} V^{-1}") {
        auto a = adjoint(NCPoly::monomial(theta, 1, 1));
        auto expect = std::polar(1.0, -two_pi * theta);
        CHECK_THAT(std::abs(a.coeff(-1, -1) - expect), WithinAbs(0.0, 1e-15));
    }
    SECTION("(i 1)* = -i 1") {
        auto a = adjoint(NCPoly::scalar(theta, {0.0, 1.0}));
        CHECK(a.coeff(0, 0) == Complex{0.0, -1.0});
    }
    SECTION("matrix oracle") {
        const int N = 5, p = 2;
        PolyGen gen(99);
        for (int trial = 0; trial < 30; ++trial) {
            auto a = gen.random_poly(double(p) / N);
            Eigen::MatrixXcd lhs = to_matrix(adjoint(a), N, p);
            Eigen::MatrixXcd rhs = to_matrix(a, N, p).adjoint();
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("trace picks out the identity coefficient") {
    const double theta = 0.41;
    CHECK(trace(NCPoly::one(theta)) == Complex{1.0, 0.0});
    CHECK(trace(NCPoly::monomial(theta, 2, 3)) == Complex{0.0, 0.0});
    auto a = NCPoly::scalar(theta, {3.0, 0.0});
    a += NCPoly::monomial(theta, 1, -1, Complex{0.0, 2.0});
    CHECK(trace(a) == Complex{3.0, 0.0});
}

TEST_CASE("derivations") {
    const double theta = 0.35;
    auto U = NCPoly::gen_u(theta);
    SECTION("generator formulas") {
        CHECK(dist(derivation(1, U), Complex{0.0, two_pi} * U) == 0.0);
        CHECK(derivation(2, U).is_zero());
        auto m = NCPoly::monomial(theta, 2, 5);
        CHECK_THAT(dist(derivation(1, m), Complex{0.0, 2.0 * two_pi} * m),
                   WithinAbs(0.0, 1e-15));
    }
    SECTION("invalid index") {
        CHECK_THROWS_AS(derivation(3, U), std::invalid_argument);
        CHECK_THROWS_AS(derivation(0, U), std::invalid_argument);
    }
}

TEST_CASE("validate_sl2_morphism") {
    CHECK(validate_sl2_morphism(1, 0, 0, 1));
    CHECK(validate_sl2_morphism(2, 1, 1, 1));
    CHECK_FALSE(validate_sl2_morphism(1, 1, 1, 1));
    CHECK_FALSE(validate_sl2_morphism(1, 0, 0, -1));  // det -1 is not enough
}

TEST_CASE("action on morphisms") {
    const double theta = 0.2;
    SECTION("identity morphism gives 8 pi^2") {
        auto val = action(TorusMorphism::identity(theta));
        CHECK_THAT(val, WithinAbs(8.0 * pi2, 8.0 * pi2 * 1e-14));
    }
    SECTION("phi_A with (2,1,1,1) gives 28 pi^2") {
        auto val = action(TorusMorphism::sl2(theta, 2, 1, 1, 1));
        CHECK_THAT(val, WithinAbs(28.0 * pi2, 28.0 * pi2 * 1e-14));
    }
    SECTION("constant images give 0") {
        TorusMorphism phi{theta, theta, NCPoly::one(theta), NCPoly::one(theta)};
        CHECK(action(phi) == 0.0);
    }
    SECTION("theta mismatch between images") {
        TorusMorphism phi{0.2, 0.2, NCPoly::gen_u(0.2), NCPoly::gen_v(0.4)};
        CHECK_THROWS_AS(action(phi), std::invalid_argument);
    }
    SECTION("well-definedness flag on monomial morphisms") {
        CHECK(TorusMorphism::sl2(theta, 3, 2, 1, 1).is_well_defined());
        TorusMorphism bad{theta, theta, NCPoly::monomial(theta, 1, 1),
                          NCPoly::monomial(theta, 1, 1)};
        CHECK_FALSE(bad.is_well_defined());
        TorusMorphism poly{theta, theta, NCPoly::gen_u(theta) + NCPoly::gen_v(theta),
                           NCPoly::gen_v(theta)};
        CHECK_FALSE(poly.is_well_defined());
    }
}

TEST_CASE("algebraic properties on random elements") {
    PolyGen gen(7);
    for (int trial = 0; trial < 300; ++trial) {
        const double theta = gen.random_theta();
        auto a = gen.random_poly(theta);
        auto b = gen.random_poly(theta);
        auto c = gen.random_poly(theta);

        // associativity
        CHECK(dist(normal_product(a, normal_product(b, c)),
                   normal_product(normal_product(a, b), c)) < 1e-12);
        // involution
        CHECK(dist(adjoint(adjoint(a)), a) < 1e-13);
        CHECK(dist(adjoint(normal_product(a, b)),
                   normal_product(adjoint(b), adjoint(a))) < 1e-12);
        // trace property
        CHECK(std::abs(trace(normal_product(a, b)) - trace(normal_product(b, a))) <
              1e-12);
        // Leibniz and *-derivation
        for (int j = 1; j <= 2; ++j) {
            auto lhs = derivation(j, normal_product(a, b));
            auto rhs = normal_product(derivation(j, a), b) +
                       normal_product(a, derivation(j, b));
            CHECK(dist(lhs, rhs) < 1e-11);
            CHECK(dist(derivation(j, adjoint(a)), adjoint(derivation(j, a))) < 1e-12);
            // integration by parts and tau(delta_j) = 0
            CHECK(std::abs(trace(normal_product(derivation(j, a), b)) +
                           trace(normal_product(a, derivation(j, b)))) < 1e-11);
            CHECK(std::abs(trace(derivation(j, a))) < 1e-12);
        }
    }
}

TEST_CASE("monomials are unitary") {
    const double theta = 0.55;
    for (std::int64_t m = -5; m <= 5; ++m)
        for (std::int64_t n = -5; n <= 5; ++n) {
            auto mono = NCPoly::monomial(theta, m, n);
            auto prod = normal_product(adjoint(mono), mono);
            REQUIRE(prod.size() == 1);
            CHECK_THAT(std::abs(prod.coeff(0, 0) - Complex{1.0, 0.0}),
                       WithinAbs(0.0, 1e-15));
        }
}

TEST_CASE("SL(2,Z) family action values") {
    const double theta = 0.61;
    for (std::int64_t p = -3; p <= 3; ++p)
        for (std::int64_t q = -3; q <= 3; ++q)
            for (std::int64_t r = -3; r <= 3; ++r)
                for (std::int64_t s = -3; s <= 3; ++s) {
                    if (p * s - q * r != 1) continue;
                    auto val = action(TorusMorphism::sl2(theta, p, q, r, s));
                    const double expect = 4.0 * pi2 * double(p * p + q * q + r * r + s * s);
                    CHECK_THAT(val, WithinAbs(expect, expect * 1e-13));
                }
}

TEST_CASE("JSON round trip") {
    PolyGen gen(31337);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = gen.random_poly(gen.random_theta());
        auto back = ncpoly_from_json(to_json(a));
        REQUIRE(back.theta() == a.theta());
        CHECK(dist(a, back) == 0.0);  // collapsed coefficients survive exactly
        CHECK(a == back);             // equal theta + equal term maps
    }
    SECTION("through text") {
        auto a = NCPoly::monomial(0.125, 2, -3, Complex{0.5, -1.5}, 1);
        auto text = to_json(a).dump();
        auto back = ncpoly_from_json(nlohmann::json::parse(text));
        CHECK(dist(a, back) == 0.0);
    }
    SECTION("morphism round trip") {
        auto phi = TorusMorphism::sl2(0.25, 2, 1, 1, 1);
        auto back = morphism_from_json(to_json(phi));
        CHECK(action(back) == action(phi));
    }
}

TEST_CASE("zero pruning keeps the sparse form canonical") {
    const double theta = 0.5;  // rational is fine for the data structure
    auto a = NCPoly::monomial(theta, 1, 1);
    auto b = NCPoly::monomial(theta, 1, 1, Complex{-1.0, 0.0});
    CHECK((a + b).is_zero());
    CHECK((a - a).is_zero());
    auto scaled = a * Complex{0.0, 0.0};
    CHECK(scaled.is_zero());
}
