#include "nullity/cpoly.hpp"

#include <algorithm>
#include <cmath>

#include "nullity/error.hpp"

namespace nullity {

namespace {

void check_finite(ComplexNum c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw Error(ErrorCode::InvalidData, "non-finite polynomial coefficient");
}

} // namespace

ComplexPoly::ComplexPoly(std::vector<ComplexNum> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

ComplexPoly::ComplexPoly(std::initializer_list<ComplexNum> coeffs) : coeffs_(coeffs) {
    normalize();
}

ComplexPoly ComplexPoly::constant(ComplexNum c) { return ComplexPoly({c}); }

ComplexPoly ComplexPoly::monomial(ComplexNum c, std::size_t power) {
    std::vector<ComplexNum> coeffs(power + 1);
    coeffs[power] = c;
    return ComplexPoly(std::move(coeffs));
}

void ComplexPoly::normalize() {
    for (const auto& c : coeffs_) check_finite(c);
    while (!coeffs_.empty() && coeffs_.back() == ComplexNum{}) coeffs_.pop_back();
}

double ComplexPoly::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

ComplexPoly operator+(const ComplexPoly& p, const ComplexPoly& q) {
    std::vector<ComplexNum> out(std::max(p.coeffs().size(), q.coeffs().size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[k] + q[k];
    return ComplexPoly(std::move(out));
}

ComplexPoly operator-(const ComplexPoly& p, const ComplexPoly& q) {
    std::vector<ComplexNum> out(std::max(p.coeffs().size(), q.coeffs().size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[k] - q[k];
    return ComplexPoly(std::move(out));
}

ComplexPoly operator*(ComplexNum s, const ComplexPoly& p) {
    std::vector<ComplexNum> out(p.coeffs());
    for (auto& c : out) c *= s;
    return ComplexPoly(std::move(out));
}

ComplexPoly poly_mul(const ComplexPoly& p, const ComplexPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<ComplexNum> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return ComplexPoly(std::move(out));
}

ComplexPoly poly_diff(const ComplexPoly& p) {
    const auto& a = p.coeffs();
    if (a.size() <= 1) return {};
    std::vector<ComplexNum> out(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = static_cast<double>(k) * a[k];
    return ComplexPoly(std::move(out));
}

ComplexPoly poly_int(const ComplexPoly& p, ComplexNum c0) {
    check_finite(c0);
    const auto& a = p.coeffs();
    std::vector<ComplexNum> out(a.size() + 1);
    out[0] = c0;
    for (std::size_t k = 0; k < a.size(); ++k) out[k + 1] = a[k] / static_cast<double>(k + 1);
    return ComplexPoly(std::move(out));
}

ComplexNum poly_eval(const ComplexPoly& p, ComplexNum z) {
    ComplexNum acc{};
    const auto& a = p.coeffs();
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

bool is_negligible(const ComplexPoly& p, double scale, double rel_tol) {
    return p.max_abs_coeff() <= rel_tol * scale;
}

double PolyVec::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto& c : components) m = std::max(m, c.max_abs_coeff());
    return m;
}

bool PolyVec::is_zero() const noexcept {
    return std::all_of(components.begin(), components.end(),
                       [](const ComplexPoly& p) { return p.is_zero(); });
}

PolyVec poly_diff(const PolyVec& a) {
    PolyVec out;
    out.components.reserve(a.dim());
    for (const auto& c : a.components) out.components.push_back(poly_diff(c));
    return out;
}

PolyVec poly_int(const PolyVec& a, std::span<const ComplexNum> c0s) {
    if (!c0s.empty() && c0s.size() != a.dim())
        throw Error(ErrorCode::DimensionMismatch, "integration constants do not match the component count");
    PolyVec out;
    out.components.reserve(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k)
        out.components.push_back(poly_int(a.components[k], c0s.empty() ? ComplexNum{} : c0s[k]));
    return out;
}

PolyVec scale(const ComplexPoly& s, const PolyVec& a) {
    PolyVec out;
    out.components.reserve(a.dim());
    for (const auto& c : a.components) out.components.push_back(poly_mul(s, c));
    return out;
}

ComplexPoly bilinear_dot(const PolyVec& a, const PolyVec& b) {
    if (a.dim() != b.dim())
        throw Error(ErrorCode::DimensionMismatch, "bilinear_dot of vectors with different dimensions");
    ComplexPoly acc;
    for (std::size_t k = 0; k < a.dim(); ++k) acc = acc + poly_mul(a.components[k], b.components[k]);
    return acc;
}

void to_json(nlohmann::json& j, const ComplexPoly& p) {
    j = nlohmann::json::array();
    for (const auto& c : p.coeffs()) j.push_back({c.real(), c.imag()});
}

void from_json(const nlohmann::json& j, ComplexPoly& p) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidData, "polynomial must be an array of [re, im] pairs");
    std::vector<ComplexNum> coeffs;
    for (const auto& c : j) {
        if (c.is_number()) {
            coeffs.emplace_back(c.get<double>(), 0.0);
        } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
            coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        } else {
            throw Error(ErrorCode::InvalidData, "polynomial coefficient must be [re, im]");
        }
    }
    p = ComplexPoly(std::move(coeffs));
}

void to_json(nlohmann::json& j, const PolyVec& v) {
    j = nlohmann::json::array();
    for (const auto& c : v.components) j.push_back(c);
}

void from_json(const nlohmann::json& j, PolyVec& v) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidData, "polynomial vector must be an array of polynomials");
    v.components.clear();
    for (const auto& c : j) v.components.push_back(c.get<ComplexPoly>());
}

} // namespace nullity
