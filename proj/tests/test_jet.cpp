#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "nullity/error.hpp"
#include "nullity/jet.hpp"

using namespace nullity;

namespace {

double fact(int n) { return n <= 1 ? 1.0 : n * fact(n - 1); }

double multi_fact(const MultiIndex& m) { return fact(m[0]) * fact(m[1]) * fact(m[2]); }

int degree(const MultiIndex& m) { return m[0] + m[1] + m[2]; }

// k-th derivative of sin at s.
double sin_derivative(double s, int k) { return std::sin(s + k * std::numbers::pi / 2); }

// k-th derivative of t^p at t.
double power_derivative(double t, double p, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c *= p - i;
    return c * std::pow(t, p - k);
}

template <class F>
double fd(F f, double x, double h = 1e-4) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12.0 * h);
}

} // namespace

TEST_CASE("table layout") {
    CHECK(jet_table_size(1, 10) == 11);
    CHECK(jet_table_size(2, 10) == 66);
    CHECK(jet_table_size(3, 7) == 120);
    CHECK(jet_table_size(3, 0) == 1);
    for (int nv = 1; nv <= 3; ++nv) {
        const int order = nv == 3 ? 7 : 10;
        int last_degree = 0;
        for (std::size_t s = 0; s < jet_table_size(nv, order); ++s) {
            const MultiIndex m = jet_index(s, nv);
            CHECK(jet_slot(m, nv) == s);
            CHECK(degree(m) >= last_degree);
            last_degree = degree(m);
        }
    }
    CHECK_THROWS_AS(Jet(3, 8), Error);
    CHECK_THROWS_AS(Jet(4, 1), Error);
    CHECK_THROWS_AS(Jet(2, 11), Error);
}

TEST_CASE("variables and constants") {
    const Jet x = Jet::variable(0, 0.5, 2, 3);
    CHECK(x.value() == 0.5);
    CHECK(x.derivative({1, 0, 0}) == 1.0);
    CHECK(x.derivative({0, 1, 0}) == 0.0);
    CHECK(x.derivative({2, 0, 0}) == 0.0);
    const Jet c = Jet::constant(3.0, 2, 3);
    CHECK(c.derivative({1, 1, 0}) == 0.0);
    CHECK_THROWS_AS(x.derivative({4, 0, 0}), Error);
    CHECK_THROWS_AS(Jet::variable(2, 0.0, 2, 3), Error);
}

TEST_CASE("sin of a sum against closed-form derivatives") {
    const double a = 0.3, b = -0.7, c = 1.1;
    const int order = 6;
    const Jet s = sin(Jet::variable(0, a, 3, order) + Jet::variable(1, b, 3, order) + Jet::variable(2, c, 3, order));
    const Jet co = cos(Jet::variable(0, a, 3, order) + Jet::variable(1, b, 3, order) + Jet::variable(2, c, 3, order));
    for (std::size_t slot = 0; slot < s.size(); ++slot) {
        const MultiIndex m = jet_index(slot, 3);
        CHECK(s.taylor(m) == doctest::Approx(sin_derivative(a + b + c, degree(m)) / multi_fact(m)).epsilon(1e-13));
        CHECK(co.taylor(m) == doctest::Approx(sin_derivative(a + b + c, degree(m) + 1) / multi_fact(m)).epsilon(1e-13));
    }
}

TEST_CASE("powers of an affine function against closed-form derivatives") {
    const double x0 = 0.4, y0 = 0.2;
    const int order = 8;
    const Jet x = Jet::variable(0, x0, 2, order);
    const Jet y = Jet::variable(1, y0, 2, order);
    const Jet t = 1.5 + x - 2.0 * y;
    const double t0 = 1.5 + x0 - 2.0 * y0;
    const Jet r = recip(t);
    const Jet q = sqrt(t);
    const Jet w = q / t;  // t^(-1/2)
    for (std::size_t slot = 0; slot < r.size(); ++slot) {
        const MultiIndex m = jet_index(slot, 2);
        const double chain = std::pow(-2.0, m[1]) / multi_fact(m);
        const int k = degree(m);
        CHECK(r.taylor(m) == doctest::Approx(power_derivative(t0, -1.0, k) * chain).epsilon(1e-12));
        CHECK(q.taylor(m) == doctest::Approx(power_derivative(t0, 0.5, k) * chain).epsilon(1e-12));
        CHECK(w.taylor(m) == doctest::Approx(power_derivative(t0, -0.5, k) * chain).epsilon(1e-12));
    }
}

TEST_CASE("composite function against finite differences") {
    const auto f = [](auto x, auto y, auto z) {
        using std::cos;
        using std::sin;
        using std::sqrt;
        return sin(x * y) * sqrt(1.0 + x * x + z) / (2.0 + cos(y));
    };
    const double p[3] = {0.3, -0.8, 0.45};
    const int order = 2;
    const Jet J = f(Jet::variable(0, p[0], 3, order), Jet::variable(1, p[1], 3, order), Jet::variable(2, p[2], 3, order));
    CHECK(J.value() == doctest::Approx(f(p[0], p[1], p[2])).epsilon(1e-15));
    auto eval = [&](int i, double t, int j, double s) {
        double q[3] = {p[0], p[1], p[2]};
        q[i] += t;
        q[j] += s;
        return f(q[0], q[1], q[2]);
    };
    for (int i = 0; i < 3; ++i) {
        MultiIndex m{0, 0, 0};
        m[static_cast<std::size_t>(i)] = 1;
        CHECK(J.derivative(m) == doctest::Approx(fd([&](double t) { return eval(i, t, i, 0.0); }, 0.0)).epsilon(1e-8));
        for (int j = 0; j < 3; ++j) {
            MultiIndex mm = m;
            mm[static_cast<std::size_t>(j)] += 1;
            const double d2 = fd([&](double s) { return fd([&](double t) { return eval(i, t, j, s); }, 0.0, 1e-3); }, 0.0, 1e-3);
            CHECK(J.derivative(mm) == doctest::Approx(d2).epsilon(1e-6));
        }
    }
}

TEST_CASE("algebraic identities on random jets") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int nv = 1 + trial % 3;
        const int order = nv == 3 ? 5 : 7;
        Jet a(nv, order), b(nv, order), c(nv, order);
        for (std::size_t s = 0; s < a.size(); ++s) {
            a.coeff(s) = u(rng);
            b.coeff(s) = u(rng);
            c.coeff(s) = u(rng);
        }
        a.coeff(0) = 2.0 + std::abs(a.coeff(0));
        const Jet one = Jet::constant(1.0, nv, order);
        const Jet checks[] = {a * b - b * a,
                              (a * b) * c - a * (b * c),
                              a * (b + c) - (a * b + a * c),
                              recip(a) * a - one,
                              sqrt(a) * sqrt(a) - a,
                              sin(b) * sin(b) + cos(b) * cos(b) - one,
                              (b / a) * a - b};
        for (const Jet& d : checks)
            for (double x : d.coeffs()) CHECK(std::abs(x) < 1e-12);
        // Product rule for differentiate.
        for (int var = 0; var < nv; ++var) {
            const Jet lhs = differentiate(a * b, var);
            const Jet rhs = differentiate(a, var) * b.truncated(order - 1) + a.truncated(order - 1) * differentiate(b, var);
            for (std::size_t s = 0; s < lhs.size(); ++s) CHECK(std::abs(lhs.coeff(s) - rhs.coeff(s)) < 1e-12);
        }
    }
}

TEST_CASE("truncation is a prefix") {
    const Jet x = Jet::variable(0, 0.2, 2, 6);
    const Jet y = Jet::variable(1, -0.1, 2, 6);
    const Jet hi = sin(x * y + x);
    const Jet lo = sin(Jet::variable(0, 0.2, 2, 3) * Jet::variable(1, -0.1, 2, 3) + Jet::variable(0, 0.2, 2, 3));
    const Jet t = hi.truncated(3);
    REQUIRE(t.size() == lo.size());
    for (std::size_t s = 0; s < t.size(); ++s) CHECK(t.coeff(s) == doctest::Approx(lo.coeff(s)).epsilon(1e-15));
    CHECK_THROWS_AS(lo.truncated(4), Error);
}

TEST_CASE("differentiate and embed") {
    const Jet x = Jet::variable(0, 1.0, 2, 4);
    const Jet y = Jet::variable(1, 2.0, 2, 4);
    const Jet f = x * x * y;
    const Jet fx = differentiate(f, 0);  // 2xy
    CHECK(fx.order() == 3);
    CHECK(fx.value() == doctest::Approx(4.0));
    CHECK(fx.derivative({1, 1, 0}) == doctest::Approx(2.0));
    const Jet e = embed(f, 3, {0, 2, 1});  // x^2 z
    CHECK(e.nvars() == 3);
    CHECK(e.derivative({2, 0, 1}) == doctest::Approx(2.0));
    CHECK(e.derivative({0, 1, 0}) == 0.0);
    CHECK_THROWS_AS(differentiate(Jet::constant(1.0, 2, 0), 0), Error);
}

TEST_CASE("error paths") {
    const Jet a = Jet::variable(0, 0.0, 2, 3);
    const Jet b = Jet::variable(0, 0.0, 2, 4);
    CHECK_THROWS_AS(a + b, Error);
    try {
        (void)sqrt(a);
        FAIL("sqrt at zero must throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateValue);
    }
    CHECK_THROWS_AS(recip(a), Error);
    CHECK_THROWS_AS(differentiate(a, 2), Error);
}

TEST_CASE("dot and values") {
    const JetVec v{Jet::variable(0, 3.0, 1, 2), Jet::constant(4.0, 1, 2)};
    const Jet n = dot(v, v);
    CHECK(n.value() == 25.0);
    CHECK(n.derivative({1, 0, 0}) == 6.0);
    CHECK(values(v) == std::vector<double>{3.0, 4.0});
}
