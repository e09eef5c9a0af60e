#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nullity/jet.hpp"

namespace nullity {

enum class Ambient { Euclidean, Sphere };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// A local parametrization R^d -> R^N (d = 2 or 3) that can be evaluated
/// pointwise and as Taylor jets of any supported order.  A Sphere chart
/// asserts that its image lies in the unit sphere of R^N.
class ImmersionChart {
public:
    using JetEvaluator = std::function<JetVec(std::span<const double> point, int order)>;
    using ValueEvaluator = std::function<std::vector<double>(std::span<const double> point)>;

    ImmersionChart(std::string name, int domain_dim, int ambient_dim, Ambient ambient,
                   std::vector<Interval> domain, JetEvaluator jets, ValueEvaluator value = {});

    const std::string& name() const noexcept { return name_; }
    int domain_dim() const noexcept { return domain_dim_; }
    int ambient_dim() const noexcept { return ambient_dim_; }
    Ambient ambient() const noexcept { return ambient_; }
    /// Declared coordinate box on which the chart is admissible.
    const std::vector<Interval>& domain() const noexcept { return domain_; }

    /// Component jets of the immersion at a point, in domain_dim variables.
    JetVec jets(std::span<const double> point, int order) const;
    std::vector<double> value(std::span<const double> point) const;

private:
    void check_point(std::span<const double> point) const;

    std::string name_;
    int domain_dim_;
    int ambient_dim_;
    Ambient ambient_;
    std::vector<Interval> domain_;
    JetEvaluator jets_;
    ValueEvaluator value_;
};

/// Builds a chart from a callable generic in its scalar type.  The callable
/// receives std::span<const T> coordinates and returns std::vector<T> for
/// T = double and T = Jet.
template <class F>
ImmersionChart make_chart(std::string name, int domain_dim, int ambient_dim, Ambient ambient,
                          std::vector<Interval> domain, F f) {
    auto jets = [f, domain_dim](std::span<const double> p, int order) {
        JetVec x;
        x.reserve(p.size());
        for (int i = 0; i < domain_dim; ++i)
            x.push_back(Jet::variable(i, p[static_cast<std::size_t>(i)], domain_dim, order));
        return f(std::span<const Jet>(x));
    };
    auto value = [f](std::span<const double> p) { return f(p); };
    return ImmersionChart(std::move(name), domain_dim, ambient_dim, ambient, std::move(domain), jets, value);
}

/// Appends k identically zero coordinates.
ImmersionChart pad(const ImmersionChart& chart, int k);

} // namespace nullity
