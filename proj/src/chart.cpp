#include "nullity/chart.hpp"

#include <cmath>

#include "nullity/error.hpp"

namespace nullity {

ImmersionChart::ImmersionChart(std::string name, int domain_dim, int ambient_dim, Ambient ambient,
                               std::vector<Interval> domain, JetEvaluator jets, ValueEvaluator value)
    : name_(std::move(name)), domain_dim_(domain_dim), ambient_dim_(ambient_dim), ambient_(ambient),
      domain_(std::move(domain)), jets_(std::move(jets)), value_(std::move(value)) {
    if (domain_dim_ < 2 || domain_dim_ > 3) throw Error(ErrorCode::InvalidData, "chart domain must be 2- or 3-dimensional");
    if (ambient_dim_ <= domain_dim_) throw Error(ErrorCode::InvalidData, "ambient dimension must exceed domain dimension");
    if (static_cast<int>(domain_.size()) != domain_dim_)
        throw Error(ErrorCode::InvalidData, "chart domain box has the wrong dimension");
    if (!jets_) throw Error(ErrorCode::InvalidData, "chart without a jet evaluator");
}

void ImmersionChart::check_point(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != domain_dim_)
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match chart " + name_);
}

JetVec ImmersionChart::jets(std::span<const double> point, int order) const {
    check_point(point);
    JetVec out = jets_(point, order);
    if (static_cast<int>(out.size()) != ambient_dim_)
        throw Error(ErrorCode::DimensionMismatch, "chart " + name_ + " produced the wrong number of components");
    for (const auto& j : out)
        for (double c : j.coeffs())
            if (!std::isfinite(c)) throw Error(ErrorCode::DegeneratePoint, "non-finite jet in chart " + name_);
    return out;
}

std::vector<double> ImmersionChart::value(std::span<const double> point) const {
    check_point(point);
    std::vector<double> out = value_ ? value_(point) : values(jets_(point, 0));
    if (static_cast<int>(out.size()) != ambient_dim_)
        throw Error(ErrorCode::DimensionMismatch, "chart " + name_ + " produced the wrong number of components");
    return out;
}

ImmersionChart pad(const ImmersionChart& chart, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidData, "negative padding");
    if (k == 0) return chart;
    const int d = chart.domain_dim();
    auto jets = [chart, k, d](std::span<const double> p, int order) {
        JetVec out = chart.jets(p, order);
        for (int i = 0; i < k; ++i) out.emplace_back(d, order);
        return out;
    };
    auto value = [chart, k](std::span<const double> p) {
        std::vector<double> out = chart.value(p);
        out.resize(out.size() + static_cast<std::size_t>(k), 0.0);
        return out;
    };
    return ImmersionChart(chart.name() + "+pad" + std::to_string(k), d, chart.ambient_dim() + k, chart.ambient(),
                          chart.domain(), jets, value);
}

} // namespace nullity
