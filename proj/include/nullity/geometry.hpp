#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nullity/chart.hpp"

namespace nullity {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Tolerances {
    double deg = 1e-10;    // non-immersion / normalization threshold
    double rank = 1e-8;    // relative rank threshold for flags, absolute for nullity
    double circle = 1e-8;  // circularity residual
};

/// Derivative vectors of a chart at one point, read from its jets.
class LocalJets {
public:
    LocalJets(const ImmersionChart& chart, std::span<const double> point, int order);

    const ImmersionChart& chart() const noexcept { return *chart_; }
    const std::vector<double>& point() const noexcept { return point_; }
    int order() const noexcept { return order_; }
    int domain_dim() const noexcept { return chart_->domain_dim(); }
    int ambient_dim() const noexcept { return chart_->ambient_dim(); }

    Vec position() const;
    /// Partial derivative vector in R^N for a multi-index.
    Vec partial(const MultiIndex& idx) const;
    /// N x d Jacobian.
    Mat tangent() const;
    /// Derivative of the metric entry g_ij in coordinate direction k.
    double metric_derivative(int i, int j, int k) const;

private:
    const ImmersionChart* chart_;
    std::vector<double> point_;
    int order_;
    JetVec jets_;
};

/// Gram matrix of the coordinate tangent vectors; throws DegeneratePoint when
/// its smallest eigenvalue is below tol.deg.
Mat first_fundamental_form(const LocalJets& local, const Tolerances& tol = {});
Mat first_fundamental_form(const ImmersionChart& chart, std::span<const double> point, const Tolerances& tol = {});

/// Orthonormal basis of the span of everything the chart already reaches at
/// order zero: the position vector for sphere charts, nothing otherwise.
Mat base_space(const LocalJets& local);

/// Symmetric s-linear form with values in R^N on coordinate directions.
/// Entry m (a multi-index of total degree s) holds the value on the
/// argument list containing direction i exactly m[i] times.
struct SymmetricForm {
    int degree = 0;
    int domain_dim = 0;
    std::vector<MultiIndex> indices;
    std::vector<Vec> values;

    const Vec& at(const MultiIndex& m) const;
    /// Value on (Z, ..., Z) for a coordinate tangent vector Z.
    Vec evaluate(const Vec& z) const;
    /// Value on (e_i, e_j) for degree-2 forms.
    Vec pair(int i, int j) const;
};

struct OsculatingFlag {
    std::vector<double> point;
    /// bases[0] spans f_*T; bases[l] spans N_l for l >= 1.
    std::vector<Mat> bases;
    std::vector<int> dims;
    int tau = 0;
    int tau_o = 0;
    /// True when the flag was followed until the normal space was exhausted
    /// or a normal space vanished.
    bool complete = false;
    /// Candidate derivatives (multi-index order within each level) chosen by
    /// the pivoted orthogonalization, level by level.
    std::vector<std::vector<MultiIndex>> pivots;
};

/// Successive orthogonal complements of higher partial derivatives.  A
/// direction joins N_l only if its residual exceeds tol.rank times the
/// largest raw derivative scale of that level.
OsculatingFlag osculating_flag(const LocalJets& local, int max_order, const Tolerances& tol = {});
OsculatingFlag osculating_flag(const ImmersionChart& chart, std::span<const double> point, int max_order = -1,
                               const Tolerances& tol = {});

/// Default number of flag levels to follow: enough to exhaust the normal space.
int default_flag_depth(const ImmersionChart& chart);

/// s-th fundamental form: s-th partials projected off f_*T + N_1 + ... + N_{s-2}
/// (and off the position vector for sphere charts).  Requires a flag that
/// reaches level s-2.
SymmetricForm fundamental_form(const LocalJets& local, const OsculatingFlag& flag, int s);
SymmetricForm higher_fundamental_form(const ImmersionChart& chart, std::span<const double> point, int s,
                                      const Tolerances& tol = {});

/// Second fundamental form for a chart of any domain dimension.
SymmetricForm second_fundamental_form(const LocalJets& local);

struct EllipticityReport {
    std::vector<double> point;
    bool exists = false;
    /// Second fundamental form vanishes; (1, 0, 1) reported by convention.
    bool ambiguous = false;
    double a = 0.0, b = 0.0, c = 0.0;
    Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
    int kernel_dim = 0;
};

/// Solves a*alpha(X,X) + 2b*alpha(X,Y) + c*alpha(Y,Y) = 0 with ac - b^2 > 0 in
/// the coordinate basis, normalized to ac - b^2 = 1 and a + c > 0.
EllipticityReport ellipticity(const LocalJets& local, const Tolerances& tol = {});
EllipticityReport ellipticity(const ImmersionChart& chart, std::span<const double> point, const Tolerances& tol = {});

struct EllipseReport {
    std::vector<double> point;
    int order = 0;
    std::vector<Vec> samples;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double residual = 0.0;
    bool is_circle = false;
};

/// Samples l -> alpha^{l+1}(Z_t, ..., Z_t), Z_t = cos t Z + sin t JZ over a full
/// turn; semiaxes come from the singular values of the centered samples.
/// Orders up to tau are accepted; for l = tau > tau_o the last normal space
/// has rank one and the ellipse degenerates to a segment.
EllipseReport curvature_ellipse(const LocalJets& local, const OsculatingFlag& flag, const EllipticityReport& ell,
                                int order, int samples = 64, const Tolerances& tol = {});
EllipseReport curvature_ellipse(const ImmersionChart& chart, std::span<const double> point, int order,
                                int samples = 64, const Tolerances& tol = {});

/// Largest l <= tau_o with every ellipse of order 0..l a circle; -1 when
/// even the order-0 ellipse is not a circle.
int isotropy_order(const ImmersionChart& chart, std::span<const double> point, double circle_tol = 1e-8,
                   const Tolerances& tol = {});

/// Everything the analyze sweep reports at one surface point.
struct SurfaceReport {
    std::vector<double> point;
    bool degenerate = false;
    std::string error;
    std::vector<int> dims;
    int tau = 0;
    int tau_o = 0;
    EllipticityReport ellipticity;
    std::vector<EllipseReport> ellipses;
    int isotropy_order = -1;
    double mean_curvature = 0.0;
};

SurfaceReport analyze_surface(const ImmersionChart& chart, std::span<const double> point, const Tolerances& tol = {},
                              int max_order = -1, int samples = 64);

/// |trace_g alpha| for a chart of any domain dimension.
double mean_curvature_norm(const LocalJets& local, const Tolerances& tol = {});

} // namespace nullity
