#include "nullity/sweep.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "nullity/error.hpp"

namespace nullity {

double Axis::at(int i) const {
    if (count == 1) return periodic ? lo : 0.5 * (lo + hi);
    const int steps = periodic ? count : count - 1;
    return lo + (hi - lo) * static_cast<double>(i) / steps;
}

std::size_t Grid::size() const {
    if (axes.empty()) return 0;
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
    return n;
}

std::vector<int> Grid::index(std::size_t flat) const {
    std::vector<int> idx(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        const auto c = static_cast<std::size_t>(axes[k].count);
        idx[k] = static_cast<int>(flat % c);
        flat /= c;
    }
    return idx;
}

std::vector<double> Grid::point(std::size_t flat) const {
    const std::vector<int> idx = index(flat);
    std::vector<double> p(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) p[k] = axes[k].at(idx[k]);
    return p;
}

namespace {

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v))
        throw Error(ErrorCode::InvalidConfig, "bad number '" + s + "' in grid");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

Grid parse_grid(const std::string& text, bool periodic_last) {
    Grid g;
    const auto parts = split(text, ',');
    if (parts.size() < 2 || parts.size() > 3)
        throw Error(ErrorCode::InvalidConfig, "grid needs two or three axes: '" + text + "'");
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto f = split(parts[k], ':');
        if (f.size() != 3) throw Error(ErrorCode::InvalidConfig, "grid axis must be lo:hi:count, got '" + parts[k] + "'");
        Axis a;
        a.lo = parse_double(f[0]);
        a.hi = parse_double(f[1]);
        int count = 0;
        const auto res = std::from_chars(f[2].data(), f[2].data() + f[2].size(), count);
        if (res.ec != std::errc{} || res.ptr != f[2].data() + f[2].size() || count < 1)
            throw Error(ErrorCode::InvalidConfig, "grid count must be a positive integer, got '" + f[2] + "'");
        if (a.hi < a.lo) throw Error(ErrorCode::InvalidConfig, "grid axis with hi < lo");
        a.count = count;
        a.periodic = periodic_last && k == 2;
        g.axes.push_back(a);
    }
    return g;
}

Grid domain_grid(const ImmersionChart& chart, const std::vector<int>& counts) {
    Grid g;
    const auto& dom = chart.domain();
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] < 1) throw Error(ErrorCode::InvalidConfig, "grid counts must be positive");
        if (k < dom.size()) g.axes.push_back({dom[k].lo, dom[k].hi, counts[k], false});
        else g.axes.push_back({0.0, 2.0 * std::numbers::pi, counts[k], true});
    }
    return g;
}

void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& body) {
    for (std::size_t k = 0; k < n; ++k) body(k);
}

void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& body) {
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < count; ++k) body(static_cast<std::size_t>(k));
}

} // namespace nullity
