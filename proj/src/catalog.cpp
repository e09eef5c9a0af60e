#include "nullity/catalog.hpp"

#include <cmath>
#include <numbers>

#include "nullity/error.hpp"
#include "nullity/weierstrass.hpp"

namespace nullity {

namespace {

template <class T>
T zero_like(const T& x) {
    return x * 0.0;
}

// Inverse stereographic projection from R^k onto the unit sphere in R^(k+1),
// the pole at infinity being (0, ..., 0, 1).
template <class T>
std::vector<T> inverse_stereographic(std::span<const T> x) {
    T r2 = zero_like(x[0]);
    for (const auto& c : x) r2 += c * c;
    const T s = recip(r2 + 1.0);
    std::vector<T> out;
    for (const auto& c : x) out.push_back(2.0 * c * s);
    out.push_back((r2 - 1.0) * s);
    return out;
}

std::vector<Interval> box(int d, double lo, double hi) { return std::vector<Interval>(static_cast<std::size_t>(d), {lo, hi}); }

std::vector<std::vector<double>> surface_probes(double s) {
    return {{0.3 * s, 0.2 * s}, {-0.45 * s, 0.35 * s}, {0.6 * s, -0.5 * s}, {-0.2 * s, -0.7 * s}, {0.8 * s, 0.55 * s}};
}

} // namespace

ImmersionChart make_holomorphic_curve(const std::vector<int>& powers, int pad_by) {
    if (powers.empty() || powers.front() < 1)
        throw Error(ErrorCode::InvalidData, "holomorphic curve powers must start at 1 or more");
    for (std::size_t k = 1; k < powers.size(); ++k)
        if (powers[k] <= powers[k - 1]) throw Error(ErrorCode::InvalidData, "holomorphic curve powers must increase");
    std::string name = "curve";
    for (int p : powers) name += std::to_string(p);
    const int top = powers.back();
    auto f = [powers, top](auto x) {
        using T = typename decltype(x)::value_type;
        const T& u = x[0];
        const T& v = x[1];
        std::vector<T> re{u * 0.0 + 1.0}, im{u * 0.0};
        for (int k = 1; k <= top; ++k) {
            T r = re.back() * u - im.back() * v;
            T i = re.back() * v + im.back() * u;
            re.push_back(std::move(r));
            im.push_back(std::move(i));
        }
        std::vector<T> out;
        for (int p : powers) {
            out.push_back(re[static_cast<std::size_t>(p)]);
            out.push_back(im[static_cast<std::size_t>(p)]);
        }
        return out;
    };
    ImmersionChart chart = make_chart(name, 2, 2 * static_cast<int>(powers.size()), Ambient::Euclidean, box(2, -1.0, 1.0), f);
    return pad(chart, pad_by);
}

ImmersionChart make_veronese() {
    auto f = [](auto x) {
        using T = typename decltype(x)::value_type;
        using std::sqrt;
        const std::vector<T> s = inverse_stereographic(x);
        const T& a = s[0];
        const T& b = s[1];
        const T& c = s[2];
        const double r3 = std::sqrt(3.0);
        std::vector<T> out{r3 * b * c, r3 * c * a, r3 * a * b, 0.5 * r3 * (a * a - b * b),
                           0.5 * (a * a + b * b - 2.0 * c * c)};
        T n2 = zero_like(a);
        for (const auto& y : out) n2 += y * y;
        const T inv = recip(sqrt(n2));
        for (auto& y : out) y = y * inv;
        return out;
    };
    return make_chart("veronese", 2, 5, Ambient::Sphere, box(2, -2.0, 2.0), f);
}

ImmersionChart make_plane(int pad_by) {
    if (pad_by < 1) throw Error(ErrorCode::InvalidData, "plane needs at least one zero coordinate");
    return ImmersionChart("plane", 2, 2 + pad_by, Ambient::Euclidean, box(2, -1.0, 1.0),
                          [pad_by](std::span<const double> p, int order) {
                              JetVec out{Jet::variable(0, p[0], 2, order), Jet::variable(1, p[1], 2, order)};
                              for (int k = 0; k < pad_by; ++k) out.emplace_back(2, order);
                              return out;
                          });
}

ImmersionChart make_geodesic_sphere(double r) {
    if (!(r > 0.0 && r < std::numbers::pi / 2))
        throw Error(ErrorCode::InvalidData, "geodesic sphere radius must lie in (0, pi/2)");
    auto f = [r](auto x) {
        using T = typename decltype(x)::value_type;
        std::vector<T> s = inverse_stereographic(x);
        for (auto& c : s) c = std::sin(r) * c;
        s.push_back(zero_like(x[0]) + std::cos(r));
        return s;
    };
    return make_chart("geodesic-sphere", 3, 5, Ambient::Sphere, box(3, -1.0, 1.0), f);
}

ImmersionChart make_equator() {
    auto f = [](auto x) {
        std::vector s = inverse_stereographic(x);
        s.push_back(zero_like(x[0]));
        return s;
    };
    return make_chart("equator", 3, 5, Ambient::Sphere, box(3, -1.0, 1.0), f);
}

ImmersionChart make_great_sphere() {
    auto f = [](auto x) {
        std::vector s = inverse_stereographic(x);
        s.push_back(zero_like(x[0]));
        s.push_back(zero_like(x[0]));
        return s;
    };
    return make_chart("great-sphere", 2, 5, Ambient::Sphere, box(2, -1.0, 1.0), f);
}

ImmersionChart make_graph(double a, double c) {
    auto f = [a, c](auto x) {
        using T = typename decltype(x)::value_type;
        return std::vector<T>{x[0], x[1], a * x[0] * x[0] + c * x[1] * x[1]};
    };
    return make_chart("graph", 2, 3, Ambient::Euclidean, box(2, -1.0, 1.0), f);
}

std::vector<std::string> fixture_names() {
    return {"plane",          "curve12",          "curve12-pad",      "curve123",
            "curve13-pad",    "veronese",         "great-sphere",     "equator",
            "geodesic-sphere", "graph-elliptic",  "graph-parabolic",  "weierstrass-demo4",
            "weierstrass-demo5", "weierstrass-random"};
}

Fixture make_fixture(const std::string& name, std::uint64_t seed) {
    auto surface = [&](ImmersionChart chart, std::vector<int> dims, int iso, bool elliptic, bool minimal,
                       double probe_scale) {
        return Fixture{name, std::move(chart), std::move(dims), iso, elliptic, minimal, surface_probes(probe_scale)};
    };
    const std::vector<Interval> disk = box(2, -0.5, 0.5);
    if (name == "plane") return surface(make_plane(3), {2}, 0, true, true, 1.0);
    if (name == "curve12") return surface(make_holomorphic_curve({1, 2}), {2, 2}, 1, true, true, 1.0);
    if (name == "curve12-pad") return surface(make_holomorphic_curve({1, 2}, 1), {2, 2}, 0, true, true, 1.0);
    if (name == "curve123") return surface(make_holomorphic_curve({1, 2, 3}), {2, 2, 2}, 2, true, true, 1.0);
    if (name == "curve13-pad") return surface(make_holomorphic_curve({1, 3}, 1), {2, 2}, 0, true, true, 1.0);
    if (name == "veronese") return surface(make_veronese(), {2, 2}, 1, true, true, 2.0);
    if (name == "great-sphere") return surface(make_great_sphere(), {2}, 0, true, true, 1.0);
    if (name == "graph-elliptic") return surface(make_graph(1.0, -0.5), {2, 1}, -1, true, false, 1.0);
    if (name == "graph-parabolic") return surface(make_graph(1.0, 0.0), {2, 1}, -1, false, false, 1.0);
    if (name == "weierstrass-demo4")
        return surface(surface_chart(generate_surface(demo_data(4)), disk), {2, 2}, 1, true, true, 0.5);
    if (name == "weierstrass-demo5")
        return surface(surface_chart(generate_surface(demo_data(5)), disk), {2, 2, 1}, 1, true, true, 0.5);
    if (name == "weierstrass-random")
        return surface(surface_chart(generate_surface(random_data(6, seed)), disk), {2, 2, 2}, 1, true, true, 0.5);
    const std::vector<std::vector<double>> solid{{0.1, 0.2, -0.3}, {-0.4, 0.25, 0.5}, {0.6, -0.35, 0.15}};
    if (name == "equator") return Fixture{name, make_equator(), {}, -1, true, true, solid};
    if (name == "geodesic-sphere")
        return Fixture{name, make_geodesic_sphere(std::numbers::pi / 4), {}, -1, true, false, solid};
    throw Error(ErrorCode::InvalidConfig, "unknown fixture '" + name + "'");
}

} // namespace nullity
