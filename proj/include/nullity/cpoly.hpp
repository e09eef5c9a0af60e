#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "json.hpp"

namespace nullity {

using ComplexNum = std::complex<double>;

/// Polynomial in one complex variable, coefficient k multiplies z^k.
/// The zero polynomial is the empty coefficient sequence; otherwise the
/// highest stored coefficient is nonzero.
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<ComplexNum> coeffs);
    ComplexPoly(std::initializer_list<ComplexNum> coeffs);

    static ComplexPoly constant(ComplexNum c);
    static ComplexPoly monomial(ComplexNum c, std::size_t power);

    const std::vector<ComplexNum>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    ComplexNum operator[](std::size_t k) const noexcept {
        return k < coeffs_.size() ? coeffs_[k] : ComplexNum{};
    }
    double max_abs_coeff() const noexcept;

    friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

private:
    void normalize();
    std::vector<ComplexNum> coeffs_;
};

ComplexPoly operator+(const ComplexPoly& p, const ComplexPoly& q);
ComplexPoly operator-(const ComplexPoly& p, const ComplexPoly& q);
ComplexPoly operator*(ComplexNum s, const ComplexPoly& p);

ComplexPoly poly_mul(const ComplexPoly& p, const ComplexPoly& q);
ComplexPoly poly_diff(const ComplexPoly& p);
ComplexPoly poly_int(const ComplexPoly& p, ComplexNum c0 = {});
ComplexNum poly_eval(const ComplexPoly& p, ComplexNum z);

/// True when every coefficient of p is below rel_tol * scale in magnitude.
bool is_negligible(const ComplexPoly& p, double scale, double rel_tol = 1e-12);

/// Ordered tuple of polynomials, i.e. a polynomial map C -> C^dim.
struct PolyVec {
    std::vector<ComplexPoly> components;

    std::size_t dim() const noexcept { return components.size(); }
    double max_abs_coeff() const noexcept;
    bool is_zero() const noexcept;

    friend bool operator==(const PolyVec&, const PolyVec&) = default;
};

PolyVec poly_diff(const PolyVec& a);
PolyVec poly_int(const PolyVec& a, std::span<const ComplexNum> c0s);
PolyVec scale(const ComplexPoly& s, const PolyVec& a);

/// Complex bilinear product sum_k a_k b_k, no conjugation.
ComplexPoly bilinear_dot(const PolyVec& a, const PolyVec& b);

void to_json(nlohmann::json& j, const ComplexPoly& p);
void from_json(const nlohmann::json& j, ComplexPoly& p);
void to_json(nlohmann::json& j, const PolyVec& v);
void from_json(const nlohmann::json& j, PolyVec& v);

} // namespace nullity
