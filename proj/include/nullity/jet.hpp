#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace nullity {

/// Exponents of a partial derivative; only the first nvars entries are used.
using MultiIndex = std::array<int, 3>;

/// Truncated multivariate Taylor expansion of a real function at a point.
///
/// Coefficients are stored in graded order (total degree first, then
/// lexicographic with the first variable varying slowest), so the table of
/// an order-k jet is a prefix of the table of any higher order in the same
/// number of variables.  Slot values are Taylor coefficients, i.e. partial
/// derivatives divided by the multi-index factorial.
class Jet {
public:
    static constexpr int kMaxVars = 3;
    static constexpr int kMaxOrder = 10;
    static constexpr std::size_t kCapacity = 120;
    static constexpr double kDegeneracyTol = 1e-10;

    Jet(int nvars, int order);

    static Jet constant(double value, int nvars, int order);
    static Jet variable(int index, double value, int nvars, int order);

    int nvars() const noexcept { return nvars_; }
    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return size_; }

    double value() const noexcept { return c_[0]; }
    /// Taylor coefficient in a storage slot.
    double coeff(std::size_t slot) const noexcept { return c_[slot]; }
    double& coeff(std::size_t slot) noexcept { return c_[slot]; }
    /// Taylor coefficient of a multi-index.
    double taylor(const MultiIndex& idx) const;
    /// Partial derivative value, i.e. Taylor coefficient times idx!.
    double derivative(const MultiIndex& idx) const;

    std::span<const double> coeffs() const noexcept { return {c_.data(), size_}; }

    Jet& operator+=(const Jet& b);
    Jet& operator-=(const Jet& b);
    Jet& operator*=(const Jet& b);
    Jet& operator+=(double s) noexcept { c_[0] += s; return *this; }
    Jet& operator-=(double s) noexcept { c_[0] -= s; return *this; }
    Jet& operator*=(double s) noexcept;
    Jet& operator/=(double s) noexcept { return *this *= 1.0 / s; }

    /// Same expansion truncated to a lower order.
    Jet truncated(int order) const;

private:
    void require_same_shape(const Jet& b) const;

    int nvars_;
    int order_;
    std::size_t size_;
    std::array<double, kCapacity> c_{};
};

/// Number of multi-indices of total degree <= order in nvars variables.
std::size_t jet_table_size(int nvars, int order);
/// Storage slot of a multi-index.
std::size_t jet_slot(const MultiIndex& idx, int nvars);
/// Multi-index stored in a slot.
MultiIndex jet_index(std::size_t slot, int nvars);

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator-(Jet a);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, Jet a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(const Jet& a, const Jet& b);

Jet sqrt(const Jet& a, double tol = Jet::kDegeneracyTol);
Jet recip(const Jet& a, double tol = Jet::kDegeneracyTol);
Jet sin(const Jet& a);
Jet cos(const Jet& a);

inline double recip(double a) { return 1.0 / a; }

/// Partial derivative with respect to one variable; the order drops by one.
Jet differentiate(const Jet& a, int var);

/// Re-expresses a jet in more variables: old variable k becomes new variable
/// var_map[k], and the result is constant in the remaining new variables.
Jet embed(const Jet& a, int nvars, const std::array<int, 3>& var_map);

using JetVec = std::vector<Jet>;

Jet dot(std::span<const Jet> a, std::span<const Jet> b);
/// Values of every component.
std::vector<double> values(std::span<const Jet> v);

} // namespace nullity
