#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullity/geometry.hpp"

namespace nullity {

enum class BundleKind { UnitTangent, UnitNormal };

/// Which coordinate derivative seeds the tangent frame.
enum class FrameRule { UFirst, VFirst };

/// A 3-chart (u, v, theta) -> cos(theta) E1 + sin(theta) E2 over a surface.
struct BundleChart {
    ImmersionChart base;
    BundleKind kind;
    ImmersionChart chart;
    std::vector<std::string> warnings;
    /// Flag dimensions of the base certified over the sampled grid (polar only).
    std::vector<int> base_dims;
};

/// Bipolar chart over a Euclidean surface in R^N, N >= 5.  E1 is the unit
/// g_u and E2 the unit component of g_v orthogonal to it (or the reverse
/// for FrameRule::VFirst).
BundleChart unit_tangent_chart(const ImmersionChart& g, FrameRule rule = FrameRule::UFirst);

/// Polar chart over the unit circle bundle of the last normal space of a
/// spherical surface.  The base must be nicely curved: flag dimensions are
/// compared on a grid x grid sample of the domain and the frame pivots are
/// fixed at the domain center.
BundleChart unit_normal_chart(const ImmersionChart& g, int grid = 9, const Tolerances& tol = {});

/// |trace alpha| of a 3-chart in its induced metric.
double mean_curvature(const ImmersionChart& chart3, std::span<const double> point, const Tolerances& tol = {});

struct NullityReport {
    std::vector<double> point;
    int nu = 0;
    /// Kernel directions in chart coordinates, unit in the induced metric.
    std::vector<Vec> kernel;
    double mean_curvature = 0.0;
    /// Singular values of X -> alpha(X, .) in an orthonormal frame, descending.
    std::vector<double> singular_values;
    bool totally_geodesic = false;
    /// |alpha(d_theta, .)| for the unit fibre direction.
    double fiber_alpha = 0.0;
    /// |cos| of the angle between the kernel and d_theta when nu = 1.
    double fiber_alignment = 0.0;
};

/// Throws DegeneratePoint when the induced metric is singular.
NullityReport relative_nullity(const ImmersionChart& chart3, std::span<const double> point, const Tolerances& tol = {});

/// dim N_2 of the base surface is zero at the point.
bool totally_geodesic_classify(const ImmersionChart& g, std::span<const double> point, const Tolerances& tol = {});

struct SplittingOptions {
    double step = 1e-3;
};

struct SplittingReport {
    std::vector<double> point;
    /// C on the orthogonal complement of the nullity, basis {X, JX}.
    Eigen::Matrix2d C = Eigen::Matrix2d::Zero();
    double u = 0.0;
    double v = 0.0;
    double span_residual = 0.0;
    /// |e3(v) - (v^2 - u^2 + 1)|, |e3(u) - 2uv|, |e1(u) - e2(v)|, |e2(u) + e1(v)|.
    std::array<double, 4> ode_residuals{};
    /// |C + J|, not asserted anywhere.
    double minus_j_distance = 0.0;
};

/// Throws NullityJump when the nullity is not 1 on the stencil and
/// OrientationFailure when the kernel cannot be oriented consistently.
SplittingReport splitting_tensor(const ImmersionChart& chart3, std::span<const double> point,
                                 const SplittingOptions& opt = {}, const Tolerances& tol = {});

/// Everything the bundle sweep reports at one point.
struct BundlePointReport {
    std::vector<double> point;
    bool singular = false;
    NullityReport nullity;
    std::optional<SplittingReport> splitting;
    std::string splitting_error;
};

BundlePointReport analyze_bundle_point(const ImmersionChart& chart3, std::span<const double> point,
                                       bool with_splitting, const Tolerances& tol = {});

} // namespace nullity
