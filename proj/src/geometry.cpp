#include "nullity/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nullity/error.hpp"

namespace nullity {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

std::vector<MultiIndex> indices_of_degree(int d, int s) {
    std::vector<MultiIndex> out;
    if (d == 2) {
        for (int a = s; a >= 0; --a) out.push_back({a, s - a, 0});
    } else {
        for (int a = s; a >= 0; --a)
            for (int b = s - a; b >= 0; --b) out.push_back({a, b, s - a - b});
    }
    return out;
}

// v minus its component in span(Q), orthogonalized twice.
Vec project_off(const Mat& Q, Vec v) {
    if (Q.cols() == 0) return v;
    for (int pass = 0; pass < 2; ++pass) v -= Q * (Q.transpose() * v);
    return v;
}

Mat hcat(const Mat& a, const Mat& b) {
    Mat out(a.rows() == 0 ? b.rows() : a.rows(), a.cols() + b.cols());
    if (a.cols() > 0) out.leftCols(a.cols()) = a;
    if (b.cols() > 0) out.rightCols(b.cols()) = b;
    return out;
}

struct PivotResult {
    Mat basis;
    std::vector<int> chosen;
};

// Pivoted Gram-Schmidt of the candidate columns against `lower`.  Columns
// whose residual falls below `threshold` are discarded.
PivotResult pivoted_orthogonalize(const Mat& lower, const std::vector<Vec>& candidates, double threshold) {
    std::vector<Vec> residual;
    residual.reserve(candidates.size());
    for (const auto& c : candidates) residual.push_back(project_off(lower, c));
    std::vector<bool> used(candidates.size(), false);
    PivotResult out;
    out.basis.resize(lower.rows(), 0);
    while (true) {
        int best = -1;
        double best_norm = threshold;
        for (std::size_t k = 0; k < residual.size(); ++k) {
            if (used[k]) continue;
            const double n = residual[k].norm();
            if (n > best_norm) {
                best_norm = n;
                best = static_cast<int>(k);
            }
        }
        if (best < 0) break;
        used[static_cast<std::size_t>(best)] = true;
        Vec b = residual[static_cast<std::size_t>(best)] / best_norm;
        b = project_off(hcat(lower, out.basis), b);
        b.normalize();
        out.basis.conservativeResize(Eigen::NoChange, out.basis.cols() + 1);
        out.basis.col(out.basis.cols() - 1) = b;
        out.chosen.push_back(best);
        for (std::size_t k = 0; k < residual.size(); ++k)
            if (!used[k]) residual[k] -= b * b.dot(residual[k]);
    }
    return out;
}

Mat lower_space(const LocalJets& local, const OsculatingFlag& flag, int levels) {
    Mat Q = base_space(local);
    for (int l = 0; l < levels && l < static_cast<int>(flag.bases.size()); ++l) Q = hcat(Q, flag.bases[static_cast<std::size_t>(l)]);
    return Q;
}

double max_col_norm(const Mat& m) {
    double s = 0.0;
    for (int k = 0; k < m.cols(); ++k) s = std::max(s, m.col(k).norm());
    return s;
}

} // namespace

LocalJets::LocalJets(const ImmersionChart& chart, std::span<const double> point, int order)
    : chart_(&chart), point_(point.begin(), point.end()), order_(order), jets_(chart.jets(point, order)) {
    if (chart.ambient() == Ambient::Sphere) {
        const double r = position().norm();
        if (std::abs(r - 1.0) > 1e-10)
            throw Error(ErrorCode::InvalidData, "sphere chart " + chart.name() + " leaves the unit sphere");
    }
}

Vec LocalJets::position() const {
    Vec v(ambient_dim());
    for (int k = 0; k < ambient_dim(); ++k) v[k] = jets_[static_cast<std::size_t>(k)].value();
    return v;
}

Vec LocalJets::partial(const MultiIndex& idx) const {
    Vec v(ambient_dim());
    for (int k = 0; k < ambient_dim(); ++k) v[k] = jets_[static_cast<std::size_t>(k)].derivative(idx);
    return v;
}

Mat LocalJets::tangent() const {
    Mat T(ambient_dim(), domain_dim());
    for (int i = 0; i < domain_dim(); ++i) {
        MultiIndex m{0, 0, 0};
        m[static_cast<std::size_t>(i)] = 1;
        T.col(i) = partial(m);
    }
    return T;
}

double LocalJets::metric_derivative(int i, int j, int k) const {
    MultiIndex ik{0, 0, 0}, jk{0, 0, 0}, ei{0, 0, 0}, ej{0, 0, 0};
    ik[static_cast<std::size_t>(i)] += 1;
    ik[static_cast<std::size_t>(k)] += 1;
    jk[static_cast<std::size_t>(j)] += 1;
    jk[static_cast<std::size_t>(k)] += 1;
    ei[static_cast<std::size_t>(i)] = 1;
    ej[static_cast<std::size_t>(j)] = 1;
    return partial(ik).dot(partial(ej)) + partial(ei).dot(partial(jk));
}

Mat first_fundamental_form(const LocalJets& local, const Tolerances& tol) {
    const Mat T = local.tangent();
    Mat G = T.transpose() * T;
    Eigen::SelfAdjointEigenSolver<Mat> es(G, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()[0] < tol.deg)
        throw Error(ErrorCode::DegeneratePoint, "induced metric is degenerate in chart " + local.chart().name());
    return G;
}

Mat first_fundamental_form(const ImmersionChart& chart, std::span<const double> point, const Tolerances& tol) {
    return first_fundamental_form(LocalJets(chart, point, 1), tol);
}

Mat base_space(const LocalJets& local) {
    if (local.chart().ambient() == Ambient::Sphere) {
        Mat Q(local.ambient_dim(), 1);
        Q.col(0) = local.position().normalized();
        return Q;
    }
    return Mat(local.ambient_dim(), 0);
}

const Vec& SymmetricForm::at(const MultiIndex& m) const {
    for (std::size_t k = 0; k < indices.size(); ++k)
        if (indices[k] == m) return values[k];
    throw Error(ErrorCode::OrderOutOfRange, "multi-index not in symmetric form");
}

Vec SymmetricForm::evaluate(const Vec& z) const {
    Vec out = Vec::Zero(values.empty() ? 0 : values.front().size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const MultiIndex& m = indices[k];
        double w = factorial(degree);
        for (int i = 0; i < domain_dim; ++i) {
            w /= factorial(m[static_cast<std::size_t>(i)]);
            w *= std::pow(z[i], m[static_cast<std::size_t>(i)]);
        }
        out += w * values[k];
    }
    return out;
}

Vec SymmetricForm::pair(int i, int j) const {
    MultiIndex m{0, 0, 0};
    m[static_cast<std::size_t>(i)] += 1;
    m[static_cast<std::size_t>(j)] += 1;
    return at(m);
}

int default_flag_depth(const ImmersionChart& chart) {
    const int codim = chart.ambient_dim() - chart.domain_dim() - (chart.ambient() == Ambient::Sphere ? 1 : 0);
    const int cap = chart.domain_dim() == 2 ? 9 : 6;
    return std::clamp(codim, 1, cap);
}

OsculatingFlag osculating_flag(const LocalJets& local, int max_order, const Tolerances& tol) {
    if (local.order() < max_order + 1)
        throw Error(ErrorCode::OrderExceeded, "flag depth needs jets of order max_order + 1");
    const int N = local.ambient_dim();
    const int d = local.domain_dim();
    OsculatingFlag flag;
    flag.point = local.point();

    const Mat T = local.tangent();
    Eigen::JacobiSVD<Mat> svd(T);
    if (svd.singularValues()[d - 1] <= tol.deg)
        throw Error(ErrorCode::DegeneratePoint, "differential is not of full rank in chart " + local.chart().name());
    Mat current = base_space(local);
    {
        std::vector<Vec> cols;
        for (int i = 0; i < d; ++i) cols.push_back(T.col(i));
        PivotResult tangent = pivoted_orthogonalize(current, cols, tol.deg);
        if (tangent.basis.cols() != d)
            throw Error(ErrorCode::DegeneratePoint, "tangent vectors are dependent in chart " + local.chart().name());
        flag.bases.push_back(tangent.basis);
        flag.dims.push_back(d);
        std::vector<MultiIndex> piv;
        for (int c : tangent.chosen) {
            MultiIndex m{0, 0, 0};
            m[static_cast<std::size_t>(c)] = 1;
            piv.push_back(m);
        }
        flag.pivots.push_back(piv);
        current = hcat(current, tangent.basis);
    }
    const double tangent_scale = max_col_norm(T);

    for (int level = 1; level <= max_order; ++level) {
        if (current.cols() >= N) {
            flag.complete = true;
            break;
        }
        const auto idx = indices_of_degree(d, level + 1);
        std::vector<Vec> cols;
        double scale = tangent_scale;
        for (const auto& m : idx) {
            cols.push_back(local.partial(m));
            scale = std::max(scale, cols.back().norm());
        }
        PivotResult next = pivoted_orthogonalize(current, cols, tol.rank * scale);
        if (next.basis.cols() == 0) {
            flag.complete = true;
            break;
        }
        flag.bases.push_back(next.basis);
        flag.dims.push_back(static_cast<int>(next.basis.cols()));
        std::vector<MultiIndex> piv;
        for (int c : next.chosen) piv.push_back(idx[static_cast<std::size_t>(c)]);
        flag.pivots.push_back(piv);
        current = hcat(current, next.basis);
    }
    if (current.cols() >= N) flag.complete = true;
    flag.tau = static_cast<int>(flag.bases.size()) - 1;
    const int codim = N - d - (local.chart().ambient() == Ambient::Sphere ? 1 : 0);
    flag.tau_o = (codim % 2 == 0) ? flag.tau : flag.tau - 1;
    if (flag.tau_o < 0) flag.tau_o = 0;
    return flag;
}

OsculatingFlag osculating_flag(const ImmersionChart& chart, std::span<const double> point, int max_order,
                               const Tolerances& tol) {
    if (max_order < 0) max_order = default_flag_depth(chart);
    return osculating_flag(LocalJets(chart, point, max_order + 1), max_order, tol);
}

SymmetricForm fundamental_form(const LocalJets& local, const OsculatingFlag& flag, int s) {
    if (s < 2) throw Error(ErrorCode::OrderOutOfRange, "fundamental forms start at s = 2");
    if (local.order() < s) throw Error(ErrorCode::OrderExceeded, "jets too short for the requested form");
    if (static_cast<int>(flag.bases.size()) < s - 1 && !flag.complete)
        throw Error(ErrorCode::OrderOutOfRange, "flag does not reach the requested order");
    const Mat Q = lower_space(local, flag, s - 1);
    SymmetricForm form;
    form.degree = s;
    form.domain_dim = local.domain_dim();
    form.indices = indices_of_degree(local.domain_dim(), s);
    for (const auto& m : form.indices) form.values.push_back(project_off(Q, local.partial(m)));
    return form;
}

SymmetricForm higher_fundamental_form(const ImmersionChart& chart, std::span<const double> point, int s,
                                      const Tolerances& tol) {
    if (s < 2) throw Error(ErrorCode::OrderOutOfRange, "fundamental forms start at s = 2");
    const LocalJets local(chart, point, s);
    const OsculatingFlag flag = osculating_flag(local, s - 2, tol);
    return fundamental_form(local, flag, s);
}

SymmetricForm second_fundamental_form(const LocalJets& local) {
    const Mat T = local.tangent();
    Mat Q = base_space(local);
    {
        std::vector<Vec> cols;
        for (int i = 0; i < T.cols(); ++i) cols.push_back(T.col(i));
        Q = hcat(Q, pivoted_orthogonalize(Q, cols, 0.0).basis);
    }
    SymmetricForm form;
    form.degree = 2;
    form.domain_dim = local.domain_dim();
    form.indices = indices_of_degree(local.domain_dim(), 2);
    for (const auto& m : form.indices) form.values.push_back(project_off(Q, local.partial(m)));
    return form;
}

double mean_curvature_norm(const LocalJets& local, const Tolerances& tol) {
    const Mat G = first_fundamental_form(local, tol);
    const Mat Ginv = G.inverse();
    const SymmetricForm alpha = second_fundamental_form(local);
    Vec H = Vec::Zero(local.ambient_dim());
    for (int i = 0; i < local.domain_dim(); ++i)
        for (int j = 0; j < local.domain_dim(); ++j) H += Ginv(i, j) * alpha.pair(i, j);
    return H.norm();
}

namespace {

Eigen::Matrix2d complex_structure(double a, double b, double c) {
    const double D = a * c - b * b;
    Eigen::Matrix2d J;
    J << b, -a, c, -b;
    return J / std::sqrt(D);
}

} // namespace

EllipticityReport ellipticity(const LocalJets& local, const Tolerances& tol) {
    if (local.domain_dim() != 2) throw Error(ErrorCode::InvalidData, "ellipticity is defined for surface charts");
    first_fundamental_form(local, tol);
    EllipticityReport rep;
    rep.point = local.point();
    const SymmetricForm alpha = second_fundamental_form(local);
    Mat M(local.ambient_dim(), 3);
    M.col(0) = alpha.pair(0, 0);
    M.col(1) = 2.0 * alpha.pair(0, 1);
    M.col(2) = alpha.pair(1, 1);
    const double tangent_scale = max_col_norm(local.tangent());
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    if (smax <= tol.rank * std::max(tangent_scale, 1.0)) {
        rep.exists = true;
        rep.ambiguous = true;
        rep.kernel_dim = 3;
        rep.a = 1.0;
        rep.b = 0.0;
        rep.c = 1.0;
        rep.J = complex_structure(1.0, 0.0, 1.0);
        return rep;
    }
    const Mat V = svd.matrixV();
    std::vector<int> kernel;
    for (int k = 0; k < 3; ++k) {
        const double s = k < sv.size() ? sv[k] : 0.0;
        if (s <= tol.rank * smax) kernel.push_back(k);
    }
    rep.kernel_dim = static_cast<int>(kernel.size());
    if (kernel.empty()) return rep;
    Eigen::Matrix3d S;
    S << 0, 0, 0.5, 0, -1, 0, 0.5, 0, 0;
    Eigen::Vector3d k;
    if (kernel.size() == 1) {
        k = V.col(kernel[0]);
    } else {
        Mat K(3, static_cast<int>(kernel.size()));
        for (std::size_t c = 0; c < kernel.size(); ++c) K.col(static_cast<int>(c)) = V.col(kernel[c]);
        Eigen::SelfAdjointEigenSolver<Mat> es(K.transpose() * S * K);
        const int top = static_cast<int>(kernel.size()) - 1;
        k = K * es.eigenvectors().col(top);
    }
    k.normalize();
    const double q = k.dot(S * k);
    if (!(q > tol.rank)) return rep;
    k /= std::sqrt(q);
    if (k[0] + k[2] < 0) k = -k;
    rep.exists = true;
    rep.a = k[0];
    rep.b = k[1];
    rep.c = k[2];
    rep.J = complex_structure(rep.a, rep.b, rep.c);
    return rep;
}

EllipticityReport ellipticity(const ImmersionChart& chart, std::span<const double> point, const Tolerances& tol) {
    return ellipticity(LocalJets(chart, point, 2), tol);
}

EllipseReport curvature_ellipse(const LocalJets& local, const OsculatingFlag& flag, const EllipticityReport& ell,
                                int order, int samples, const Tolerances& tol) {
    if (!ell.exists) throw Error(ErrorCode::NotElliptic, "curvature ellipse needs an elliptic point");
    if (order < 0 || order > flag.tau)
        throw Error(ErrorCode::OrderOutOfRange, "ellipse order beyond the last normal space");
    if (samples < 8) throw Error(ErrorCode::InvalidConfig, "ellipse sampling needs at least 8 samples");
    const Mat G = first_fundamental_form(local, tol);
    const Eigen::Matrix2d J = ell.J;

    // Unit Z with <Z, JZ> = 0.
    Eigen::Matrix2d S = G * J;
    S = 0.5 * (S + S.transpose()).eval();
    Eigen::Vector2d Z(1.0, 0.0);
    if (S.norm() > 1e-12 * G.norm()) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(S);
        const double l1 = es.eigenvalues()[0];
        const double l2 = es.eigenvalues()[1];
        Z = std::sqrt(std::max(l2, 0.0)) * es.eigenvectors().col(0) + std::sqrt(std::max(-l1, 0.0)) * es.eigenvectors().col(1);
        if (Z.norm() == 0.0) Z = es.eigenvectors().col(0);
    }
    Z /= std::sqrt(Z.dot(G * Z));
    const Eigen::Vector2d JZ = J * Z;

    EllipseReport rep;
    rep.point = local.point();
    rep.order = order;
    const Mat T = local.tangent();
    SymmetricForm form;
    if (order >= 1) form = fundamental_form(local, flag, order + 1);
    Mat X(samples, local.ambient_dim());
    for (int k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        const Vec zt = std::cos(t) * Z + std::sin(t) * JZ;
        Vec p = order == 0 ? Vec(T * zt) : form.evaluate(zt);
        X.row(k) = p.transpose();
        rep.samples.push_back(std::move(p));
    }
    const Eigen::RowVectorXd mean = X.colwise().mean();
    X.rowwise() -= mean;
    Eigen::JacobiSVD<Mat> svd(X);
    const auto& sv = svd.singularValues();
    const double norm = std::sqrt(2.0 / samples);
    rep.sigma1 = sv.size() > 0 ? sv[0] * norm : 0.0;
    rep.sigma2 = sv.size() > 1 ? sv[1] * norm : 0.0;
    rep.residual = rep.sigma1 > 0.0 ? 1.0 - rep.sigma2 / rep.sigma1 : 0.0;
    rep.is_circle = rep.residual < tol.circle;
    return rep;
}

EllipseReport curvature_ellipse(const ImmersionChart& chart, std::span<const double> point, int order, int samples,
                                const Tolerances& tol) {
    const int depth = std::max(order, 1);
    const LocalJets local(chart, point, depth + 1);
    const OsculatingFlag flag = osculating_flag(local, depth, tol);
    return curvature_ellipse(local, flag, ellipticity(local, tol), order, samples, tol);
}

SurfaceReport analyze_surface(const ImmersionChart& chart, std::span<const double> point, const Tolerances& tol,
                              int max_order, int samples) {
    SurfaceReport rep;
    rep.point.assign(point.begin(), point.end());
    if (max_order < 0) max_order = default_flag_depth(chart);
    try {
        const LocalJets local(chart, point, max_order + 1);
        const OsculatingFlag flag = osculating_flag(local, max_order, tol);
        rep.dims = flag.dims;
        rep.tau = flag.tau;
        rep.tau_o = flag.tau_o;
        rep.mean_curvature = mean_curvature_norm(local, tol);
        rep.ellipticity = ellipticity(local, tol);
        if (!rep.ellipticity.exists) return rep;
        bool circles = true;
        rep.isotropy_order = -1;
        for (int l = 0; l <= flag.tau; ++l) {
            rep.ellipses.push_back(curvature_ellipse(local, flag, rep.ellipticity, l, samples, tol));
            rep.ellipses.back().samples.clear();
            if (l <= flag.tau_o && circles) {
                if (rep.ellipses.back().is_circle) rep.isotropy_order = l;
                else circles = false;
            }
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegeneratePoint && e.code() != ErrorCode::DegenerateValue) throw;
        rep.degenerate = true;
        rep.error = e.what();
    }
    return rep;
}

int isotropy_order(const ImmersionChart& chart, std::span<const double> point, double circle_tol,
                   const Tolerances& tol) {
    Tolerances t = tol;
    t.circle = circle_tol;
    const SurfaceReport rep = analyze_surface(chart, point, t);
    if (rep.degenerate) throw Error(ErrorCode::DegeneratePoint, rep.error);
    if (!rep.ellipticity.exists) throw Error(ErrorCode::NotElliptic, "isotropy order needs an elliptic point");
    return rep.isotropy_order;
}

} // namespace nullity
