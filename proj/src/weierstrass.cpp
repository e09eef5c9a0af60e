#include "nullity/weierstrass.hpp"

#include <random>

#include "nullity/error.hpp"

namespace nullity {

namespace {

const ComplexNum kI{0.0, 1.0};

template <class T>
struct Cx {
    T re;
    T im;
};

template <class T>
Cx<T> mul(const Cx<T>& a, const Cx<T>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// Real parts of every component of a polynomial map at z = u + iv.
template <class T>
std::vector<T> real_part(const PolyVec& p, const T& u, const T& v) {
    int max_deg = 0;
    for (const auto& c : p.components) max_deg = std::max(max_deg, c.degree());
    std::vector<Cx<T>> powers;
    powers.reserve(static_cast<std::size_t>(max_deg) + 1);
    T one = u * 0.0 + 1.0;
    T zero = u * 0.0;
    powers.push_back({one, zero});
    const Cx<T> z{u, v};
    for (int k = 1; k <= max_deg; ++k) powers.push_back(mul(powers.back(), z));
    std::vector<T> out;
    out.reserve(p.dim());
    for (const auto& c : p.components) {
        T acc = zero;
        for (std::size_t k = 0; k < c.coeffs().size(); ++k) {
            const ComplexNum a = c.coeffs()[k];
            // Re(a z^k)
            if (a.real() != 0.0) acc += a.real() * powers[k].re;
            if (a.imag() != 0.0) acc -= a.imag() * powers[k].im;
        }
        out.push_back(acc);
    }
    return out;
}

// Byte-stable across standard libraries, unlike std::uniform_real_distribution.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}
    double operator()(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 rng_;
};

ComplexPoly random_poly(Uniform& rnd, int degree, double magnitude) {
    std::vector<ComplexNum> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = {rnd(-magnitude, magnitude), rnd(-magnitude, magnitude)};
    return ComplexPoly(std::move(c));
}

IdentityCheck check(std::string name, const PolyVec& factor, double rel_tol) {
    IdentityCheck c;
    c.name = std::move(name);
    c.max_abs = bilinear_dot(factor, factor).max_abs_coeff();
    const double m = factor.max_abs_coeff();
    c.scale = m * m;
    c.relative = c.max_abs == 0.0 ? 0.0 : c.max_abs / c.scale;
    c.pass = c.relative < rel_tol;
    return c;
}

} // namespace

void validate(const WeierstrassData& data) {
    if (data.n < 4) throw Error(ErrorCode::InvalidData, "target dimension n must be at least 4");
    if (static_cast<int>(data.alpha0.dim()) != data.n - 4)
        throw Error(ErrorCode::InvalidData, "alpha0 must have n-4 components");
    if (data.n > 4 && data.alpha0.is_zero())
        throw Error(ErrorCode::InvalidData, "alpha0 must be a nonzero holomorphic map");
    if (data.beta1.is_zero()) throw Error(ErrorCode::InvalidData, "beta1 must be nonzero (beta1 != 0 is required)");
    if (data.beta2.is_zero()) throw Error(ErrorCode::InvalidData, "beta2 must be nonzero (beta2 != 0 is required)");
    const auto& ic = data.int_constants;
    if (!ic.phi0.empty() && static_cast<int>(ic.phi0.size()) != data.n - 4)
        throw Error(ErrorCode::InvalidData, "int_constants.phi0 must have n-4 entries");
    if (!ic.phi1.empty() && static_cast<int>(ic.phi1.size()) != data.n - 2)
        throw Error(ErrorCode::InvalidData, "int_constants.phi1 must have n-2 entries");
    if (!ic.phi2.empty() && static_cast<int>(ic.phi2.size()) != data.n)
        throw Error(ErrorCode::InvalidData, "int_constants.phi2 must have n entries");
}

PolyVec isotropic_step(const PolyVec& alpha, const ComplexPoly& beta, std::span<const ComplexNum> c0s) {
    if (beta.is_zero()) throw Error(ErrorCode::InvalidData, "isotropic_step needs a nonzero multiplier");
    const PolyVec phi = poly_int(alpha, c0s);
    const ComplexPoly sq = bilinear_dot(phi, phi);
    const ComplexPoly one = ComplexPoly::constant(1.0);
    PolyVec v;
    v.components.reserve(alpha.dim() + 2);
    v.components.push_back(one - sq);
    v.components.push_back(kI * (one + sq));
    for (const auto& c : phi.components) v.components.push_back(ComplexNum{2.0} * c);
    return scale(beta, v);
}

MinimalSurfaceRep generate_surface(const WeierstrassData& data) {
    validate(data);
    MinimalSurfaceRep rep;
    rep.n = data.n;
    rep.alpha1 = isotropic_step(data.alpha0, data.beta1, data.int_constants.phi0);
    rep.alpha2 = isotropic_step(rep.alpha1, data.beta2, data.int_constants.phi1);
    rep.phi2 = poly_int(rep.alpha2, data.int_constants.phi2);
    rep.final_integration = data.final_integration;
    return rep;
}

std::vector<IdentityCheck> null_identities(const MinimalSurfaceRep& rep, double rel_tol) {
    std::vector<IdentityCheck> out;
    out.push_back(check("alpha1.alpha1", rep.alpha1, rel_tol));
    out.push_back(check("alpha2.alpha2", rep.alpha2, rel_tol));
    const PolyVec d2 = poly_diff(rep.alpha2);
    out.push_back(check("alpha2'.alpha2'", d2, rel_tol));
    out.push_back(check("isotropy P''.P''", poly_diff(poly_diff(rep.potential())), rel_tol));
    return out;
}

ImmersionChart surface_chart(const MinimalSurfaceRep& rep, std::vector<Interval> domain, int pad_by) {
    PolyVec potential = rep.potential();
    auto f = [potential](auto x) { return real_part(potential, x[0], x[1]); };
    ImmersionChart chart = make_chart(rep.final_integration ? "weierstrass" : "weierstrass-literal", 2, rep.n,
                                      Ambient::Euclidean, std::move(domain), f);
    return pad(chart, pad_by);
}

WeierstrassData random_data(int n, std::uint64_t seed, int max_degree) {
    if (n < 4) throw Error(ErrorCode::InvalidData, "target dimension n must be at least 4");
    Uniform rnd(seed);
    WeierstrassData d;
    d.n = n;
    for (int k = 0; k < n - 4; ++k) d.alpha0.components.push_back(random_poly(rnd, rnd.integer(0, max_degree), 1.0));
    if (n > 4 && d.alpha0.is_zero()) d.alpha0.components[0] = ComplexPoly::constant(1.0);
    auto multiplier = [&] {
        ComplexPoly p = random_poly(rnd, rnd.integer(0, max_degree), 0.25);
        return ComplexPoly::constant(1.0) + (p - ComplexPoly::constant(p[0]));
    };
    d.beta1 = multiplier();
    d.beta2 = multiplier();
    return d;
}

WeierstrassData demo_data(int n) {
    if (n != 4 && n != 5) throw Error(ErrorCode::InvalidData, "demo data exists for n = 4 and n = 5");
    WeierstrassData d;
    d.n = n;
    if (n == 5) d.alpha0.components.push_back(ComplexPoly::constant(1.0));
    d.beta1 = ComplexPoly::constant(1.0);
    d.beta2 = ComplexPoly::constant(1.0);
    return d;
}

namespace {

std::vector<ComplexNum> constants_from_json(const nlohmann::json& j) {
    std::vector<ComplexNum> out;
    if (!j.is_array()) throw Error(ErrorCode::InvalidData, "integration constants must be an array");
    for (const auto& c : j) {
        if (c.is_number()) out.emplace_back(c.get<double>(), 0.0);
        else if (c.is_array() && c.size() == 2) out.emplace_back(c[0].get<double>(), c[1].get<double>());
        else throw Error(ErrorCode::InvalidData, "integration constant must be [re, im]");
    }
    return out;
}

nlohmann::json constants_to_json(const std::vector<ComplexNum>& c) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& x : c) j.push_back({x.real(), x.imag()});
    return j;
}

} // namespace

void from_json(const nlohmann::json& j, WeierstrassData& data) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidData, "surface data must be a JSON object");
    try {
        data = WeierstrassData{};
        data.n = j.at("n").get<int>();
        data.alpha0 = j.contains("alpha0") ? j.at("alpha0").get<PolyVec>() : PolyVec{};
        data.beta1 = j.at("beta1").get<ComplexPoly>();
        data.beta2 = j.at("beta2").get<ComplexPoly>();
        if (j.contains("int_constants")) {
            const auto& ic = j.at("int_constants");
            if (ic.contains("phi0")) data.int_constants.phi0 = constants_from_json(ic.at("phi0"));
            if (ic.contains("phi1")) data.int_constants.phi1 = constants_from_json(ic.at("phi1"));
            if (ic.contains("phi2")) data.int_constants.phi2 = constants_from_json(ic.at("phi2"));
        }
        data.final_integration = j.value("final_integration", true);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidData, std::string("malformed surface data: ") + e.what());
    }
}

void to_json(nlohmann::json& j, const WeierstrassData& data) {
    j = {{"n", data.n},
         {"alpha0", data.alpha0},
         {"beta1", data.beta1},
         {"beta2", data.beta2},
         {"int_constants",
          {{"phi0", constants_to_json(data.int_constants.phi0)},
           {"phi1", constants_to_json(data.int_constants.phi1)},
           {"phi2", constants_to_json(data.int_constants.phi2)}}},
         {"final_integration", data.final_integration}};
}

void to_json(nlohmann::json& j, const MinimalSurfaceRep& rep) {
    j = {{"n", rep.n},
         {"alpha1", rep.alpha1},
         {"alpha2", rep.alpha2},
         {"phi2", rep.phi2},
         {"final_integration", rep.final_integration}};
}

} // namespace nullity
