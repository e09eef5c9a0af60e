#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nullity/error.hpp"
#include "nullity/weierstrass.hpp"

using namespace nullity;

namespace {

const ComplexNum I{0.0, 1.0};

ComplexNum naive_eval(const ComplexPoly& p, ComplexNum z) {
    ComplexNum s{};
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) s += p.coeffs()[k] * std::pow(z, static_cast<int>(k));
    return s;
}

void check_close(const PolyVec& a, const PolyVec& b) {
    REQUIRE(a.dim() == b.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) {
        const ComplexPoly d = a.components[k] - b.components[k];
        CHECK(is_negligible(d, 1.0, 1e-14));
    }
}

ErrorCode code_of(const WeierstrassData& d) {
    try {
        validate(d);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidConfig;
}

} // namespace

TEST_CASE("n = 4 demo has the closed form (u, -v, u^2 - v^2, -2uv)") {
    const MinimalSurfaceRep rep = generate_surface(demo_data(4));
    check_close(rep.alpha2, PolyVec{{ComplexPoly{1.0}, ComplexPoly{I}, ComplexPoly{0.0, 2.0}, ComplexPoly{0.0, 2.0 * I}}});
    const ImmersionChart g = surface_chart(rep, {{-1, 1}, {-1, 1}});
    for (double u : {-0.4, 0.1, 0.7})
        for (double v : {-0.3, 0.25}) {
            const std::vector<double> x = g.value(std::vector<double>{u, v});
            CHECK(x[0] == doctest::Approx(u));
            CHECK(x[1] == doctest::Approx(-v));
            CHECK(x[2] == doctest::Approx(u * u - v * v));
            CHECK(x[3] == doctest::Approx(-2 * u * v));
        }
}

TEST_CASE("n = 5 demo matches the hand computation") {
    const MinimalSurfaceRep rep = generate_surface(demo_data(5));
    const double t = 1.0 / 3.0;
    check_close(rep.alpha1, PolyVec{{ComplexPoly{1.0, 0.0, -1.0}, ComplexPoly{I, 0.0, I}, ComplexPoly{0.0, 2.0}}});
    check_close(rep.alpha2, PolyVec{{ComplexPoly{1.0, 0.0, 0.0, 0.0, t}, ComplexPoly{I, 0.0, 0.0, 0.0, -t * I},
                                     ComplexPoly{0.0, 2.0, 0.0, -2.0 * t}, ComplexPoly{0.0, 2.0 * I, 0.0, 2.0 * t * I},
                                     ComplexPoly{0.0, 0.0, 2.0}}});
    check_close(rep.phi2, PolyVec{{ComplexPoly{0.0, 1.0, 0.0, 0.0, 0.0, 1.0 / 15}, ComplexPoly{0.0, I, 0.0, 0.0, 0.0, -I / 15.0},
                                   ComplexPoly{0.0, 0.0, 1.0, 0.0, -1.0 / 6}, ComplexPoly{0.0, 0.0, I, 0.0, I / 6.0},
                                   ComplexPoly{0.0, 0.0, 0.0, 2.0 / 3}}});
}

TEST_CASE("null identities on seeded random data") {
    for (int n : {4, 5, 6, 8})
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const MinimalSurfaceRep rep = generate_surface(nullity::random_data(n, seed));
            for (const auto& c : null_identities(rep)) {
                CAPTURE(n);
                CAPTURE(seed);
                CAPTURE(c.name);
                CHECK(c.pass);
                CHECK(c.relative < 1e-12);
            }
        }
}

TEST_CASE("isotropic step always yields a null curve") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const WeierstrassData d = nullity::random_data(7, seed);
        const PolyVec a = isotropic_step(d.alpha0, d.beta1);
        CHECK(a.dim() == d.alpha0.dim() + 2);
        const ComplexPoly sq = bilinear_dot(a, a);
        CHECK(is_negligible(sq, a.max_abs_coeff() * a.max_abs_coeff()));
    }
    CHECK_THROWS_AS(isotropic_step(PolyVec{}, ComplexPoly{}), Error);
}

TEST_CASE("literal reading: the isotropy defect is 16 beta1^2 beta2^2 (alpha0 . alpha0)") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        WeierstrassData d = nullity::random_data(6, seed);
        d.final_integration = false;
        const MinimalSurfaceRep rep = generate_surface(d);
        const PolyVec dd = poly_diff(poly_diff(rep.alpha2));
        const ComplexPoly defect = bilinear_dot(dd, dd);
        for (ComplexNum z : {ComplexNum{0.1, 0.2}, ComplexNum{-0.3, 0.05}, ComplexNum{0.2, -0.4}}) {
            ComplexNum a0{};
            for (const auto& c : d.alpha0.components) a0 += naive_eval(c, z) * naive_eval(c, z);
            const ComplexNum b1 = naive_eval(d.beta1, z), b2 = naive_eval(d.beta2, z);
            const ComplexNum expected = 16.0 * b1 * b1 * b2 * b2 * a0;
            CHECK(std::abs(naive_eval(defect, z) - expected) < 1e-10 * (1.0 + std::abs(expected)));
        }
        const auto checks = null_identities(rep);
        CHECK(checks[0].pass);
        CHECK(checks[1].pass);
        CHECK(checks[2].pass);
        CHECK_FALSE(checks[3].pass);
    }
}

TEST_CASE("surface chart is the real part of the potential") {
    const WeierstrassData d = nullity::random_data(6, 3);
    const MinimalSurfaceRep rep = generate_surface(d);
    const ImmersionChart g = surface_chart(rep, {{-0.5, 0.5}, {-0.5, 0.5}}, 2);
    CHECK(g.ambient_dim() == 8);
    for (ComplexNum z : {ComplexNum{0.1, 0.2}, ComplexNum{-0.35, 0.3}}) {
        const std::vector<double> x = g.value(std::vector<double>{z.real(), z.imag()});
        for (std::size_t k = 0; k < 6; ++k) CHECK(x[k] == doctest::Approx(naive_eval(rep.phi2.components[k], z).real()).epsilon(1e-13));
        CHECK(x[6] == 0.0);
        CHECK(x[7] == 0.0);
    }
}

TEST_CASE("integration constants translate the surface") {
    WeierstrassData d = demo_data(4);
    d.int_constants.phi2 = {ComplexNum{1.0, 5.0}, 0.0, ComplexNum{0.0, 2.0}, -3.0};
    const ImmersionChart g = surface_chart(generate_surface(d), {{-1, 1}, {-1, 1}});
    const std::vector<double> x = g.value(std::vector<double>{0.0, 0.0});
    CHECK(x == std::vector<double>{1.0, 0.0, 0.0, -3.0});
}

TEST_CASE("validation names the violated requirement") {
    WeierstrassData d = demo_data(5);
    d.beta1 = ComplexPoly{};
    try {
        validate(d);
        FAIL("zero beta1 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidData);
        CHECK(std::string(e.what()).find("beta1 != 0") != std::string::npos);
    }
    d = demo_data(5);
    d.beta2 = ComplexPoly{};
    CHECK(code_of(d) == ErrorCode::InvalidData);
    d = demo_data(5);
    d.alpha0.components[0] = ComplexPoly{};
    CHECK(code_of(d) == ErrorCode::InvalidData);
    d = demo_data(5);
    d.n = 6;
    CHECK(code_of(d) == ErrorCode::InvalidData);
    d = demo_data(4);
    d.n = 3;
    CHECK(code_of(d) == ErrorCode::InvalidData);
    d = demo_data(5);
    d.int_constants.phi1 = {1.0};
    CHECK(code_of(d) == ErrorCode::InvalidData);
    CHECK_THROWS_AS(nullity::random_data(3, 0), Error);
    CHECK_THROWS_AS(demo_data(6), Error);
}

TEST_CASE("random data is seeded, bounded and zero-free near the origin") {
    CHECK(nlohmann::json(nullity::random_data(6, 42)).dump() == nlohmann::json(nullity::random_data(6, 42)).dump());
    CHECK(nlohmann::json(nullity::random_data(6, 42)).dump() != nlohmann::json(nullity::random_data(6, 43)).dump());
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const WeierstrassData d = nullity::random_data(5 + static_cast<int>(seed % 4), seed);
        CHECK_NOTHROW(validate(d));
        for (const auto& c : d.alpha0.components) CHECK(c.degree() <= 4);
        for (const ComplexPoly* b : {&d.beta1, &d.beta2}) {
            CHECK((*b)[0] == ComplexNum{1.0});
            for (int k = 0; k < 64; ++k) {
                const ComplexNum z = std::polar(0.5, 2.0 * 3.141592653589793 * k / 64);
                CHECK(std::abs(naive_eval(*b, z)) > 0.3);
            }
        }
    }
}

TEST_CASE("json round trip") {
    WeierstrassData d = nullity::random_data(5, 9);
    d.int_constants.phi1 = {1.0, ComplexNum{0.0, 1.0}, 0.0};
    d.final_integration = false;
    const nlohmann::json j = d;
    const WeierstrassData back = j.get<WeierstrassData>();
    CHECK(nlohmann::json(back).dump() == j.dump());
    CHECK_THROWS_AS(nlohmann::json::parse("{\"n\": 5}").get<WeierstrassData>(), Error);
    CHECK_THROWS_AS(nlohmann::json::parse("[1]").get<WeierstrassData>(), Error);
    const nlohmann::json r = generate_surface(demo_data(5));
    CHECK(r.at("alpha2").size() == 5);
}
