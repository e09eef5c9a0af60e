#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nullity/chart.hpp"

namespace nullity {

struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;
    /// Periodic axes leave out the end point, which equals the start.
    bool periodic = false;

    double at(int i) const;
};

/// Tensor grid with the first axis varying slowest.
struct Grid {
    std::vector<Axis> axes;

    std::size_t size() const;
    std::vector<int> index(std::size_t flat) const;
    std::vector<double> point(std::size_t flat) const;
};

/// Parses "u0:u1:nu,v0:v1:nv[,t0:t1:nt]".  When periodic_last is set the
/// third axis is treated as an angle.
Grid parse_grid(const std::string& text, bool periodic_last);

/// counts[k] points on each axis of the chart's declared domain; an extra
/// count beyond the domain dimension adds a periodic [0, 2pi) axis.
Grid domain_grid(const ImmersionChart& chart, const std::vector<int>& counts);

void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& body);
/// OpenMP loop; body must be safe to call concurrently for distinct indices.
void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& body);

namespace detail {

template <class R, class F>
std::vector<R> sweep(const Grid& grid, F&& f, bool parallel) {
    const std::size_t n = grid.size();
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    auto body = [&](std::size_t k) {
        try {
            slots[k].emplace(f(grid.point(k)));
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (parallel) for_each_parallel(n, body);
    else for_each_serial(n, body);
    std::vector<R> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (errors[k]) std::rethrow_exception(errors[k]);
        out.push_back(std::move(*slots[k]));
    }
    return out;
}

} // namespace detail

/// Reference implementation.  Results are in grid order; the first failing
/// point in grid order rethrows.
template <class R, class F>
std::vector<R> sweep_serial(const Grid& grid, F&& f) {
    return detail::sweep<R>(grid, std::forward<F>(f), false);
}

/// Same contract as sweep_serial, evaluated with OpenMP.
template <class R, class F>
std::vector<R> sweep_parallel(const Grid& grid, F&& f) {
    return detail::sweep<R>(grid, std::forward<F>(f), true);
}

} // namespace nullity
