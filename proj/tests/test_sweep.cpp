#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <numbers>

#include "nullity/catalog.hpp"
#include "nullity/error.hpp"
#include "nullity/geometry.hpp"
#include "nullity/sweep.hpp"

using namespace nullity;

TEST_CASE("grid parsing") {
    Grid g = parse_grid("-1:1:3,0:2:5", false);
    REQUIRE(g.axes.size() == 2);
    CHECK(g.size() == 15);
    CHECK(g.point(0) == std::vector<double>{-1.0, 0.0});
    CHECK(g.point(1) == std::vector<double>{-1.0, 0.5});
    CHECK(g.point(14) == std::vector<double>{1.0, 2.0});
    CHECK(g.index(7) == std::vector<int>{1, 2});

    g = parse_grid("0:1:1,0:1:2,0:6.283185307179586:4", true);
    CHECK(g.axes[2].periodic);
    CHECK_FALSE(g.axes[0].periodic);
    CHECK(g.axes[0].at(0) == 0.5);
    CHECK(g.axes[2].at(3) == doctest::Approx(1.5 * std::numbers::pi));
    CHECK(parse_grid("0:1:2,0:1:2,0:1:2", false).axes[2].periodic == false);

    for (const char* bad : {"", "0:1:2", "0:1:2,0:1", "0:1:0,0:1:2", "a:1:2,0:1:2", "1:0:2,0:1:2", "0:1:2.5,0:1:2",
                            "0:1:2,0:1:2,0:1:2,0:1:2", "0:inf:2,0:1:2"}) {
        CAPTURE(bad);
        try {
            parse_grid(bad, true);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InvalidConfig);
        }
    }
}

TEST_CASE("domain grids") {
    const ImmersionChart c = make_holomorphic_curve({1, 2});
    const Grid g = domain_grid(c, {3, 3, 4});
    CHECK(g.size() == 36);
    CHECK(g.axes[0].lo == c.domain()[0].lo);
    CHECK(g.axes[2].periodic);
    CHECK(g.point(3)[2] == doctest::Approx(1.5 * std::numbers::pi));
    CHECK_THROWS_AS(domain_grid(c, {0, 3}), Error);
}

TEST_CASE("parallel sweep matches the serial reference") {
    const ImmersionChart c = make_fixture("weierstrass-random").chart;
    const Grid g = domain_grid(c, {7, 7});
    auto f = [&](const std::vector<double>& p) {
        const SurfaceReport r = analyze_surface(c, p);
        return std::vector<double>{r.mean_curvature, r.ellipses.back().residual, static_cast<double>(r.isotropy_order)};
    };
    const auto serial = sweep_serial<std::vector<double>>(g, f);
    const auto parallel = sweep_parallel<std::vector<double>>(g, f);
    CHECK(serial == parallel);
    CHECK(serial.size() == g.size());
}

TEST_CASE("every index is visited once") {
    std::vector<std::atomic<int>> hits(1000);
    for_each_parallel(hits.size(), [&](std::size_t k) { hits[k]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    std::vector<std::size_t> order;
    for_each_serial(5, [&](std::size_t k) { order.push_back(k); });
    CHECK(order == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("the first failure in grid order is rethrown") {
    const Grid g = parse_grid("0:9:10,0:0:1", false);
    auto f = [](const std::vector<double>& p) -> int {
        const int k = static_cast<int>(p[0]);
        if (k == 3) throw Error(ErrorCode::DegeneratePoint, "three");
        if (k == 7) throw Error(ErrorCode::NotElliptic, "seven");
        return k;
    };
    for (bool parallel : {false, true}) {
        try {
            if (parallel) sweep_parallel<int>(g, f);
            else sweep_serial<int>(g, f);
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegeneratePoint);
        }
    }
    CHECK(sweep_parallel<int>(parse_grid("0:2:3,0:0:1", false), f) == std::vector<int>{0, 1, 2});
}
