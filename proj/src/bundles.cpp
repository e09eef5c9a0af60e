#include "nullity/bundles.hpp"

#include <cmath>
#include <numbers>

#include "nullity/error.hpp"

namespace nullity {

namespace {

constexpr std::array<int, 3> kBaseToBundle{0, 1, 2};

void normalize(JetVec& v) {
    const Jet inv = recip(sqrt(dot(v, v)));
    for (auto& c : v) c *= inv;
}

void remove_component(JetVec& v, const JetVec& unit) {
    const Jet c = dot(v, unit);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * unit[k];
}

JetVec circle_combination(const JetVec& e1, const JetVec& e2, double theta, int order) {
    const Jet th = Jet::variable(2, theta, 3, order);
    const Jet c = cos(th);
    const Jet s = sin(th);
    JetVec out;
    out.reserve(e1.size());
    for (std::size_t k = 0; k < e1.size(); ++k)
        out.push_back(c * embed(e1[k], 3, kBaseToBundle) + s * embed(e2[k], 3, kBaseToBundle));
    return out;
}

std::vector<Interval> bundle_domain(const ImmersionChart& g) {
    std::vector<Interval> d = g.domain();
    d.push_back({0.0, 2.0 * std::numbers::pi});
    return d;
}

template <class F>
auto as_degenerate_point(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateValue) throw Error(ErrorCode::DegeneratePoint, e.what());
        throw;
    }
}

JetVec nth_derivative(const JetVec& base, const MultiIndex& m, int order) {
    JetVec out = base;
    for (int var = 0; var < 2; ++var)
        for (int k = 0; k < m[static_cast<std::size_t>(var)]; ++k)
            for (auto& c : out) c = differentiate(c, var);
    for (auto& c : out) c = c.truncated(order);
    return out;
}

} // namespace

BundleChart unit_tangent_chart(const ImmersionChart& g, FrameRule rule) {
    if (g.domain_dim() != 2) throw Error(ErrorCode::InvalidData, "bipolar chart needs a surface");
    if (g.ambient() != Ambient::Euclidean) throw Error(ErrorCode::InvalidData, "bipolar chart needs a Euclidean base");
    if (g.ambient_dim() < 5) throw Error(ErrorCode::InvalidData, "bipolar chart needs a surface in R^N with N >= 5");
    const int first = rule == FrameRule::UFirst ? 0 : 1;
    auto jets = [g, first](std::span<const double> p, int order) {
        return as_degenerate_point([&] {
            const JetVec base = g.jets(p.first(2), order + 1);
            JetVec e1, e2;
            for (const auto& c : base) {
                e1.push_back(differentiate(c, first));
                e2.push_back(differentiate(c, 1 - first));
            }
            normalize(e1);
            remove_component(e2, e1);
            normalize(e2);
            return circle_combination(e1, e2, p[2], order);
        });
    };
    BundleChart out{g, BundleKind::UnitTangent,
                    ImmersionChart("bipolar(" + g.name() + ")", 3, g.ambient_dim(), Ambient::Sphere, bundle_domain(g), jets),
                    {}, {}};
    return out;
}

BundleChart unit_normal_chart(const ImmersionChart& g, int grid, const Tolerances& tol) {
    if (g.domain_dim() != 2) throw Error(ErrorCode::InvalidData, "polar chart needs a surface");
    if (g.ambient() != Ambient::Sphere) throw Error(ErrorCode::InvalidData, "polar chart needs a spherical base");
    if (grid < 2) throw Error(ErrorCode::InvalidConfig, "nicely-curved certification needs a grid of at least 2x2");
    const auto& dom = g.domain();
    const std::vector<double> center{0.5 * (dom[0].lo + dom[0].hi), 0.5 * (dom[1].lo + dom[1].hi)};
    const OsculatingFlag flag = osculating_flag(g, center, -1, tol);
    if (flag.tau == 0) throw Error(ErrorCode::FlagCollapse, "base has no first normal space");
    if (flag.dims.back() != 2)
        throw Error(ErrorCode::FlagCollapse, "last normal space of the base has rank " + std::to_string(flag.dims.back()));
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const std::vector<double> p{dom[0].lo + (dom[0].hi - dom[0].lo) * i / (grid - 1),
                                        dom[1].lo + (dom[1].hi - dom[1].lo) * j / (grid - 1)};
            if (osculating_flag(g, p, -1, tol).dims != flag.dims)
                throw Error(ErrorCode::FlagCollapse, "flag dimensions change across the domain of " + g.name());
        }

    BundleChart out{g, BundleKind::UnitNormal, g, {}, flag.dims};
    {
        const LocalJets local(g, center, flag.tau + 1);
        const EllipticityReport ell = ellipticity(local, tol);
        if (!ell.exists) {
            out.warnings.push_back("base is not elliptic at the domain center");
        } else if (!curvature_ellipse(local, flag, ell, flag.tau - 1, 64, tol).is_circle) {
            out.warnings.push_back("ellipse E_" + std::to_string(flag.tau - 1) + " of the base is not a circle");
        }
    }

    const int tau = flag.tau;
    std::vector<MultiIndex> pivots;
    for (const auto& level : flag.pivots) pivots.insert(pivots.end(), level.begin(), level.end());
    auto jets = [g, tau, pivots](std::span<const double> p, int order) {
        return as_degenerate_point([&] {
            const JetVec base = g.jets(p.first(2), order + tau + 1);
            std::vector<JetVec> frame;
            JetVec position = base;
            for (auto& c : position) c = c.truncated(order);
            normalize(position);
            frame.push_back(std::move(position));
            for (const auto& m : pivots) {
                JetVec w = nth_derivative(base, m, order);
                for (const auto& f : frame) remove_component(w, f);
                for (const auto& f : frame) remove_component(w, f);
                normalize(w);
                frame.push_back(std::move(w));
            }
            const std::size_t n = frame.size();
            return circle_combination(frame[n - 2], frame[n - 1], p[2], order);
        });
    };
    out.chart = ImmersionChart("polar(" + g.name() + ")", 3, g.ambient_dim(), Ambient::Sphere, bundle_domain(g), jets);
    return out;
}

double mean_curvature(const ImmersionChart& chart3, std::span<const double> point, const Tolerances& tol) {
    return mean_curvature_norm(LocalJets(chart3, point, 2), tol);
}

namespace {

struct OrthoFrame {
    Mat G;
    Mat Rinv;  // columns: coordinate components of an orthonormal tangent frame
    Mat L;     // Cholesky factor, G = L L^T
};

OrthoFrame ortho_frame(const LocalJets& local, const Tolerances& tol) {
    OrthoFrame f;
    f.G = first_fundamental_form(local, tol);
    Eigen::LLT<Mat> llt(f.G);
    f.L = llt.matrixL();
    f.Rinv = f.L.transpose().inverse();
    return f;
}

} // namespace

NullityReport relative_nullity(const ImmersionChart& chart3, std::span<const double> point, const Tolerances& tol) {
    const LocalJets local(chart3, point, 2);
    const OrthoFrame fr = ortho_frame(local, tol);
    const SymmetricForm alpha = second_fundamental_form(local);
    const int m = local.domain_dim();
    const int N = local.ambient_dim();

    NullityReport rep;
    rep.point.assign(point.begin(), point.end());
    const Mat Ginv = fr.G.inverse();
    Vec H = Vec::Zero(N);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) H += Ginv(i, j) * alpha.pair(i, j);
    rep.mean_curvature = H.norm();

    // B[a][b] = alpha(X_a, X_b) in the orthonormal frame.
    std::vector<std::vector<Vec>> B(static_cast<std::size_t>(m), std::vector<Vec>(static_cast<std::size_t>(m), Vec::Zero(N)));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    B[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += fr.Rinv(i, a) * fr.Rinv(j, b) * alpha.pair(i, j);
    Mat M(m * N, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) M.block(b * N, a, N, 1) = B[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    for (int k = 0; k < m; ++k) {
        rep.singular_values.push_back(sv[k]);
        if (sv[k] < tol.rank) {
            ++rep.nu;
            rep.kernel.push_back(fr.Rinv * svd.matrixV().col(k));
        }
    }
    rep.totally_geodesic = rep.nu == m;

    Vec fiber = Vec::Zero(m);
    fiber[m - 1] = 1.0;
    Vec c = fr.L.transpose() * fiber;
    c.normalize();
    Vec fa(m * N);
    for (int b = 0; b < m; ++b) {
        Vec s = Vec::Zero(N);
        for (int a = 0; a < m; ++a) s += c[a] * B[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        fa.segment(b * N, N) = s;
    }
    rep.fiber_alpha = fa.norm();
    if (rep.nu == 1) rep.fiber_alignment = std::abs((fr.L.transpose() * rep.kernel[0]).dot(c));
    return rep;
}

bool totally_geodesic_classify(const ImmersionChart& g, std::span<const double> point, const Tolerances& tol) {
    return osculating_flag(g, point, 2, tol).dims.size() < 3;
}

namespace {

struct KernelSample {
    Vec e;     // coordinates, unit in the induced metric
    Vec push;  // f_* e in R^N
};

KernelSample kernel_at(const ImmersionChart& chart3, const Vec& q, const Tolerances& tol) {
    const std::vector<double> p(q.data(), q.data() + q.size());
    const NullityReport rep = relative_nullity(chart3, p, tol);
    if (rep.nu != 1)
        throw Error(ErrorCode::NullityJump, "nullity " + std::to_string(rep.nu) + " on the splitting stencil");
    KernelSample s;
    s.e = rep.kernel[0];
    s.push = LocalJets(chart3, p, 1).tangent() * s.e;
    return s;
}

Vec aligned_kernel(const ImmersionChart& chart3, const Vec& q, const Vec& ref, const Tolerances& tol) {
    KernelSample s = kernel_at(chart3, q, tol);
    const double d = s.push.dot(ref) / (s.push.norm() * ref.norm());
    if (std::abs(d) < 0.5) throw Error(ErrorCode::OrientationFailure, "kernel field turns too fast on the stencil");
    return d < 0 ? Vec(-s.e) : s.e;
}

template <class F>
auto five_point(F&& f, double h) {
    using R = decltype(f(h));
    const R p1 = f(h), m1 = f(-h), p2 = f(2 * h), m2 = f(-2 * h);
    return R((8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h));
}

struct LocalSplitting {
    Eigen::Matrix2d C;
    double u, v;
    Vec X, JX, e;
};

LocalSplitting local_splitting(const ImmersionChart& chart3, const Vec& q, const Vec& ref, double h,
                               const Tolerances& tol) {
    const std::vector<double> p(q.data(), q.data() + q.size());
    const LocalJets local(chart3, p, 2);
    const Mat G = first_fundamental_form(local, tol);
    const Mat Ginv = G.inverse();
    const int m = 3;
    const Vec e = aligned_kernel(chart3, q, ref, tol);

    Mat dE(m, m);  // column k: d_k e
    for (int k = 0; k < m; ++k) {
        Vec dir = Vec::Zero(m);
        dir[k] = 1.0;
        dE.col(k) = five_point([&](double t) { return aligned_kernel(chart3, q + t * dir, ref, tol); }, h);
    }
    // Nabla column k: covariant derivative of e along d_k.
    Mat nabla = dE;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j) {
                double gamma = 0.0;
                for (int l = 0; l < m; ++l)
                    gamma += 0.5 * Ginv(i, l) *
                             (local.metric_derivative(l, j, k) + local.metric_derivative(l, k, j) -
                              local.metric_derivative(k, j, l));
                nabla(i, k) += gamma * e[j];
            }

    auto metric_unit = [&](Vec w) { return Vec(w / std::sqrt(w.dot(G * w))); };
    auto off = [&](Vec w, const Vec& unit) { return Vec(w - w.dot(G * unit) * unit); };
    Vec X = off(Vec::Unit(m, 0), e);
    if (std::sqrt(X.dot(G * X)) < 1e-3) X = off(Vec::Unit(m, 1), e);
    X = metric_unit(X);
    Vec JX = Vec::Zero(m);
    double best = -1.0;
    for (int k = 0; k < m; ++k) {
        Vec w = off(off(Vec::Unit(m, k), e), X);
        const double n = std::sqrt(std::max(w.dot(G * w), 0.0));
        if (n > best) {
            best = n;
            JX = w;
        }
    }
    JX = metric_unit(JX);
    Eigen::Matrix3d frame;
    frame << X, JX, e;
    if (frame.determinant() < 0) JX = -JX;

    const Vec hx = nabla * X;
    const Vec hy = nabla * JX;
    LocalSplitting out;
    out.C << -hx.dot(G * X), -hy.dot(G * X), -hx.dot(G * JX), -hy.dot(G * JX);
    out.v = 0.5 * (out.C(0, 0) + out.C(1, 1));
    out.u = 0.5 * (out.C(0, 1) - out.C(1, 0));
    out.X = X;
    out.JX = JX;
    out.e = e;
    return out;
}

} // namespace

SplittingReport splitting_tensor(const ImmersionChart& chart3, std::span<const double> point,
                                 const SplittingOptions& opt, const Tolerances& tol) {
    if (chart3.domain_dim() != 3) throw Error(ErrorCode::InvalidData, "splitting tensor needs a 3-chart");
    const Vec q = Eigen::Map<const Vec>(point.data(), static_cast<Eigen::Index>(point.size()));
    KernelSample center = kernel_at(chart3, q, tol);
    Eigen::Index big = 0;
    center.e.cwiseAbs().maxCoeff(&big);
    const Vec ref = center.e[big] < 0 ? Vec(-center.push) : center.push;
    const double h = opt.step;

    const LocalSplitting s = local_splitting(chart3, q, ref, h, tol);
    SplittingReport rep;
    rep.point.assign(point.begin(), point.end());
    rep.C = s.C;
    rep.u = s.u;
    rep.v = s.v;
    Eigen::Matrix2d fit;
    fit << s.v, s.u, -s.u, s.v;
    rep.span_residual = (s.C - fit).norm();
    Eigen::Matrix2d minus_j;
    minus_j << 0.0, 1.0, -1.0, 0.0;
    rep.minus_j_distance = (s.C - minus_j).norm();

    auto directional = [&](const Vec& w) {
        auto uv = [&](double t) {
            const LocalSplitting n = local_splitting(chart3, q + t * w, ref, h, tol);
            return Eigen::Vector2d(n.u, n.v);
        };
        return Eigen::Vector2d(five_point(uv, h));
    };
    const Eigen::Vector2d d1 = directional(s.X);
    const Eigen::Vector2d d2 = directional(s.JX);
    const Eigen::Vector2d d3 = directional(s.e);
    const double u = s.u, v = s.v;
    rep.ode_residuals = {std::abs(d3[1] - (v * v - u * u + 1.0)), std::abs(d3[0] - 2.0 * u * v),
                         std::abs(d1[0] - d2[1]), std::abs(d2[0] + d1[1])};
    return rep;
}

BundlePointReport analyze_bundle_point(const ImmersionChart& chart3, std::span<const double> point,
                                       bool with_splitting, const Tolerances& tol) {
    BundlePointReport rep;
    rep.point.assign(point.begin(), point.end());
    try {
        rep.nullity = relative_nullity(chart3, point, tol);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegeneratePoint) throw;
        rep.singular = true;
        rep.nullity.point = rep.point;
        return rep;
    }
    if (with_splitting && rep.nullity.nu == 1) {
        try {
            rep.splitting = splitting_tensor(chart3, point, {}, tol);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NullityJump && e.code() != ErrorCode::OrientationFailure &&
                e.code() != ErrorCode::DegeneratePoint)
                throw;
            rep.splitting_error = e.what();
        }
    }
    return rep;
}

} // namespace nullity
