#include "nullity/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "nullity/bundles.hpp"
#include "nullity/catalog.hpp"
#include "nullity/error.hpp"
#include "nullity/report.hpp"
#include "nullity/sweep.hpp"

namespace nullity::cli {

namespace {

using nlohmann::json;

const std::vector<Interval> kWeierstrassDomain{{-0.5, 0.5}, {-0.5, 0.5}};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidData:
    case ErrorCode::InvalidConfig:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ShapeMismatch:
        return kInputError;
    case ErrorCode::FlagCollapse:
    case ErrorCode::DegeneratePoint:
    case ErrorCode::DegenerateValue:
        return kDegenerate;
    default:
        return kVerificationFailure;
    }
}

std::optional<WeierstrassData> weierstrass_source(const RunConfig& cfg) {
    std::optional<WeierstrassData> data;
    if (cfg.surface) data = cfg.surface;
    else if (cfg.fixture == "weierstrass-demo4") data = demo_data(4);
    else if (cfg.fixture == "weierstrass-demo5") data = demo_data(5);
    else if (cfg.fixture == "weierstrass-random") data = random_data(6, cfg.seed);
    if (data && !cfg.final_integration) data->final_integration = false;
    return data;
}

ImmersionChart load_chart(const RunConfig& cfg) {
    if (auto data = weierstrass_source(cfg)) return surface_chart(generate_surface(*data), kWeierstrassDomain);
    if (!cfg.fixture.empty()) return make_fixture(cfg.fixture, cfg.seed).chart;
    throw Error(ErrorCode::InvalidConfig, "no chart: give --fixture or a surface in the config");
}

Grid grid_for(const RunConfig& cfg, const ImmersionChart& domain_chart, const std::vector<int>& default_counts,
              bool periodic_last) {
    if (cfg.grid.empty()) return domain_grid(domain_chart, default_counts);
    Grid g = parse_grid(cfg.grid, periodic_last);
    if (g.axes.size() != default_counts.size())
        throw Error(ErrorCode::InvalidConfig, "grid needs " + std::to_string(default_counts.size()) + " axes");
    return g;
}

void emit(const RunConfig& cfg, const json& report, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidConfig, "cannot open output file " + cfg.out);
    f << text;
    if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write output file " + cfg.out);
}

// Summary lines go to stdout when the report goes to a file, else to stderr.
std::ostream& summary_stream(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return cfg.out.empty() ? err : out;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto data = weierstrass_source(cfg);
    if (!data) throw Error(ErrorCode::InvalidConfig, "generate needs Weierstrass data (config surface or a weierstrass fixture)");
    const MinimalSurfaceRep rep = generate_surface(*data);
    const auto checks = null_identities(rep, cfg.thresholds.identity);
    std::ostream& s = summary_stream(cfg, out, err);

    const ImmersionChart chart = surface_chart(rep, kWeierstrassDomain);
    const Grid grid = grid_for(cfg, chart, {5, 5}, false);
    Tolerances tol = cfg.tol;
    struct Residuals {
        double e0 = 0.0, e1 = 0.0;
        bool degenerate = false;
    };
    const auto res = sweep_parallel<Residuals>(grid, [&](const std::vector<double>& p) {
        Residuals r;
        try {
            const LocalJets local(chart, p, 2);
            const OsculatingFlag flag = osculating_flag(local, 1, tol);
            const EllipticityReport ell = ellipticity(local, tol);
            if (!ell.exists) {
                r.e0 = r.e1 = 1.0;
                return r;
            }
            r.e0 = curvature_ellipse(local, flag, ell, 0, 64, tol).residual;
            if (flag.tau >= 1) r.e1 = curvature_ellipse(local, flag, ell, 1, 64, tol).residual;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegeneratePoint && e.code() != ErrorCode::DegenerateValue) throw;
            r.degenerate = true;
        }
        return r;
    });
    double max_e0 = 0.0, max_e1 = 0.0;
    int degenerate = 0;
    for (const auto& r : res) {
        if (r.degenerate) {
            ++degenerate;
            continue;
        }
        max_e0 = std::max(max_e0, r.e0);
        max_e1 = std::max(max_e1, r.e1);
    }
    const bool circ_pass = max_e0 < tol.circle && max_e1 < tol.circle && degenerate < static_cast<int>(res.size());

    bool pass = circ_pass;
    json ids = json::array();
    for (const auto& c : checks) {
        ids.push_back(report_json(c));
        pass = pass && c.pass;
        s << "identity " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (relative " << fmt(c.relative) << ")\n";
    }
    s << "E0 circularity: " << (max_e0 < tol.circle ? "PASS" : "FAIL") << " (max residual " << fmt(max_e0) << ")\n";
    s << "E1 circularity: " << (max_e1 < tol.circle ? "PASS" : "FAIL") << " (max residual " << fmt(max_e1) << ", "
      << res.size() - static_cast<std::size_t>(degenerate) << " regular points)\n";
    if (!rep.final_integration) s << "note: surface is Re(alpha2) without the final antiderivative\n";

    json report{{"data", *data},
                {"representation", rep},
                {"identities", ids},
                {"circularity",
                 {{"points", res.size()},
                  {"degenerate", degenerate},
                  {"max_residual_E0", max_e0},
                  {"max_residual_E1", max_e1},
                  {"pass", circ_pass}}},
                {"pass", pass}};
    emit(cfg, report, out);
    return pass ? kPass : kVerificationFailure;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ImmersionChart chart = load_chart(cfg);
    std::ostream& s = summary_stream(cfg, out, err);
    json points = json::array();
    json summary;
    if (chart.domain_dim() == 2) {
        const int depth = cfg.jet_order ? *cfg.jet_order - 1 : default_flag_depth(chart);
        const Grid grid = grid_for(cfg, chart, {5, 5}, false);
        const auto reps = sweep_parallel<SurfaceReport>(
            grid, [&](const std::vector<double>& p) { return analyze_surface(chart, p, cfg.tol, depth); });
        int degenerate = 0, non_elliptic = 0;
        int iso_min = 1 << 20, iso_max = -(1 << 20);
        std::vector<std::vector<int>> dims;
        for (const auto& r : reps) {
            points.push_back(report_json(r));
            if (r.degenerate) {
                ++degenerate;
                continue;
            }
            if (std::find(dims.begin(), dims.end(), r.dims) == dims.end()) dims.push_back(r.dims);
            if (!r.ellipticity.exists) {
                ++non_elliptic;
                continue;
            }
            iso_min = std::min(iso_min, r.isotropy_order);
            iso_max = std::max(iso_max, r.isotropy_order);
        }
        summary = {{"points", reps.size()}, {"degenerate", degenerate}, {"non_elliptic", non_elliptic}, {"dims", dims}};
        s << "chart " << chart.name() << ": " << reps.size() << " points, " << degenerate << " degenerate, "
          << non_elliptic << " not elliptic\n";
        if (dims.size() == 1) {
            s << "flag dims constant: (";
            for (std::size_t k = 0; k < dims[0].size(); ++k) s << (k ? "," : "") << dims[0][k];
            s << ")\n";
        } else {
            s << "flag dims vary across the grid (" << dims.size() << " patterns)\n";
        }
        if (iso_min <= iso_max) {
            summary["isotropy_order"] = {{"min", iso_min}, {"max", iso_max}};
            if (iso_min == iso_max) s << "isotropy order " << iso_min << " at all elliptic points\n";
            else s << "isotropy order between " << iso_min << " and " << iso_max << "\n";
        }
    } else {
        const Grid grid = grid_for(cfg, chart, {3, 3, 3}, false);
        const auto reps = sweep_parallel<BundlePointReport>(
            grid, [&](const std::vector<double>& p) { return analyze_bundle_point(chart, p, false, cfg.tol); });
        double max_h = 0.0;
        int singular = 0;
        std::vector<int> nus;
        for (const auto& r : reps) {
            points.push_back(report_json(r));
            if (r.singular) {
                ++singular;
                continue;
            }
            max_h = std::max(max_h, r.nullity.mean_curvature);
            if (std::find(nus.begin(), nus.end(), r.nullity.nu) == nus.end()) nus.push_back(r.nullity.nu);
        }
        std::sort(nus.begin(), nus.end());
        summary = {{"points", reps.size()}, {"singular", singular}, {"max_H", max_h}, {"nu", nus}};
        s << "chart " << chart.name() << ": " << reps.size() << " points, " << singular << " singular, max |H| "
          << fmt(max_h) << "\n";
    }
    emit(cfg, {{"chart", chart.name()}, {"points", points}, {"summary", summary}}, out);
    return kPass;
}

BundleChart build_bundle(const RunConfig& cfg, const ImmersionChart& base, const std::string& kind) {
    if (kind == "bipolar") return unit_tangent_chart(base);
    if (kind == "polar") return unit_normal_chart(base, 9, cfg.tol);
    throw Error(ErrorCode::InvalidConfig, "unknown bundle kind '" + kind + "'");
}

int cmd_bundle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ImmersionChart base = load_chart(cfg);
    if (base.domain_dim() != 2) throw Error(ErrorCode::InvalidConfig, "bundle needs a surface chart");
    const std::string kind = cfg.kind.empty() ? "bipolar" : cfg.kind;
    BundleChart bundle = build_bundle(cfg, base, kind);
    std::ostream& s = summary_stream(cfg, out, err);
    if (kind == "bipolar") {
        const auto& dom = base.domain();
        const std::vector<double> c{0.5 * (dom[0].lo + dom[0].hi), 0.5 * (dom[1].lo + dom[1].hi)};
        try {
            const SurfaceReport r = analyze_surface(base, c, cfg.tol, 1);
            if (r.degenerate)
                bundle.warnings.push_back("base is degenerate at the domain center");
            else if (r.ellipses.size() < 2)
                bundle.warnings.push_back("base has no first normal space at the domain center");
            else if (!r.ellipses[1].is_circle)
                bundle.warnings.push_back("base ellipse E_1 is not a circle at the domain center");
        } catch (const Error&) {
            bundle.warnings.push_back("base could not be analyzed at the domain center");
        }
    }
    for (const auto& w : bundle.warnings) s << "warning: " << w << "\n";

    const Grid grid = grid_for(cfg, base, {5, 5, 8}, true);
    const auto reps = sweep_parallel<BundlePointReport>(grid, [&](const std::vector<double>& p) {
        return analyze_bundle_point(bundle.chart, p, cfg.splitting, cfg.tol);
    });

    int singular = 0, tg = 0, nu1 = 0, split_points = 0, split_skipped = 0;
    double max_h = 0.0, max_third = 0.0, max_span = 0.0, max_ode = 0.0, max_minus_j = 0.0, min_align = 1.0;
    json points = json::array();
    for (const auto& r : reps) {
        points.push_back(report_json(r));
        if (r.singular) {
            ++singular;
            continue;
        }
        const NullityReport& n = r.nullity;
        max_h = std::max(max_h, n.mean_curvature);
        max_third = std::max(max_third, n.singular_values.back());
        if (n.totally_geodesic) ++tg;
        if (n.nu == 1) {
            ++nu1;
            min_align = std::min(min_align, n.fiber_alignment);
        }
        if (r.splitting) {
            ++split_points;
            max_span = std::max(max_span, r.splitting->span_residual);
            for (double x : r.splitting->ode_residuals) max_ode = std::max(max_ode, x);
            max_minus_j = std::max(max_minus_j, r.splitting->minus_j_distance);
        } else if (!r.splitting_error.empty()) {
            ++split_skipped;
        }
    }
    const int regular = static_cast<int>(reps.size()) - singular;
    const Thresholds& th = cfg.thresholds;
    json verdicts = json::array();
    bool pass = true;
    auto verdict = [&](const std::string& name, bool ok, const std::string& detail) {
        verdicts.push_back({{"check", name}, {"pass", ok}, {"detail", detail}});
        pass = pass && ok;
        s << name << ": " << (ok ? "PASS" : "FAIL") << " (" << detail << ")\n";
    };
    if (regular > 0) {
        verdict("minimality |H| < " + fmt(th.minimal), max_h < th.minimal,
                "max " + fmt(max_h) + " over " + std::to_string(regular) + " regular points");
        verdict("relative nullity nu >= 1", max_third < cfg.tol.rank, "largest third singular value " + fmt(max_third));
        if (split_points > 0) {
            verdict("splitting tensor C = vI - uJ", max_span < th.span,
                    "max span residual " + fmt(max_span) + " at " + std::to_string(split_points) + " points");
            verdict("splitting ODEs", max_ode < th.ode, "max residual " + fmt(max_ode));
        }
    }
    s << "singular points: " << singular << " of " << reps.size() << "\n";
    s << "totally geodesic points: " << tg << ", nu = 1 points: " << nu1 << "\n";
    if (split_skipped > 0) s << "splitting skipped at " << split_skipped << " points (nullity jump or orientation)\n";
    if (split_points > 0) s << "diagnostic: max |C + J| = " << fmt(max_minus_j) << "\n";
    if (nu1 > 0) s << "diagnostic: min |cos(kernel, d_theta)| = " << fmt(min_align) << "\n";

    json report{{"chart", bundle.chart.name()},
                {"kind", kind},
                {"warnings", bundle.warnings},
                {"points", points},
                {"summary",
                 {{"points", reps.size()},
                  {"singular", singular},
                  {"totally_geodesic", tg},
                  {"max_H", max_h},
                  {"max_third_sv", max_third},
                  {"max_span_residual", max_span},
                  {"max_ode_residual", max_ode},
                  {"max_minus_J", max_minus_j}}},
                {"verdicts", verdicts}};
    emit(cfg, report, out);
    if (regular == 0) {
        s << "no regular points: the bundle chart is singular everywhere on the grid\n";
        return kDegenerate;
    }
    return pass ? kPass : kVerificationFailure;
}

std::array<Vec, 3> principal_axes(const std::vector<std::vector<double>>& cloud) {
    const auto n = static_cast<Eigen::Index>(cloud.size());
    const auto N = static_cast<Eigen::Index>(cloud.front().size());
    Mat X(n, N);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < N; ++k) X(i, k) = cloud[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    const Eigen::RowVectorXd mean = X.colwise().mean();
    X.rowwise() -= mean;
    Eigen::SelfAdjointEigenSolver<Mat> es(X.transpose() * X);
    std::array<Vec, 3> axes;
    for (int a = 0; a < 3; ++a) {
        Vec v = es.eigenvectors().col(N - 1 - a);
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        if (v[big] < 0) v = -v;
        axes[static_cast<std::size_t>(a)] = v;
    }
    return axes;
}

std::vector<std::array<std::size_t, 4>> grid_quads(const Grid& grid) {
    std::vector<std::array<std::size_t, 4>> quads;
    const std::size_t dims = grid.axes.size();
    std::vector<std::size_t> stride(dims, 1);
    for (std::size_t k = dims - 1; k-- > 0;) stride[k] = stride[k + 1] * static_cast<std::size_t>(grid.axes[k + 1].count);
    auto next = [&](std::size_t axis, int i) -> int {
        const Axis& a = grid.axes[axis];
        if (i + 1 < a.count) return i + 1;
        return (a.periodic && a.count > 2) ? 0 : -1;
    };
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const std::vector<int> idx = grid.index(flat);
        for (std::size_t a = 0; a < dims; ++a)
            for (std::size_t b = a + 1; b < dims; ++b) {
                const int na = next(a, idx[a]);
                const int nb = next(b, idx[b]);
                if (na < 0 || nb < 0) continue;
                const std::size_t k10 = flat + (static_cast<std::size_t>(na) - static_cast<std::size_t>(idx[a])) * stride[a];
                const std::size_t k01 = flat + (static_cast<std::size_t>(nb) - static_cast<std::size_t>(idx[b])) * stride[b];
                const std::size_t k11 = k10 + (static_cast<std::size_t>(nb) - static_cast<std::size_t>(idx[b])) * stride[b];
                quads.push_back({flat, k10, k11, k01});
            }
    }
    return quads;
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.out.empty()) throw Error(ErrorCode::InvalidConfig, "export needs --out");
    const ImmersionChart base = load_chart(cfg);
    std::optional<BundleChart> bundle;
    if (!cfg.kind.empty()) bundle = build_bundle(cfg, base, cfg.kind);
    const ImmersionChart& chart = bundle ? bundle->chart : base;
    const int N = chart.ambient_dim();

    std::array<int, 3> coords{-1, -1, -1};
    const bool pca = cfg.projection == "pca";
    if (!pca) {
        std::stringstream ss(cfg.projection);
        std::string part;
        int k = 0;
        while (std::getline(ss, part, ',')) {
            if (k >= 3) throw Error(ErrorCode::InvalidConfig, "projection needs exactly three coordinates");
            int c = 0;
            try {
                std::size_t used = 0;
                c = std::stoi(part, &used);
                if (used != part.size()) throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidConfig, "bad projection coordinate '" + part + "'");
            }
            if (c < 1 || c > N)
                throw Error(ErrorCode::InvalidConfig, "projection coordinate " + part + " outside 1.." + std::to_string(N));
            coords[static_cast<std::size_t>(k++)] = c - 1;
        }
        if (k != 3) throw Error(ErrorCode::InvalidConfig, "projection needs exactly three coordinates");
    }

    Grid grid;
    if (bundle) grid = grid_for(cfg, base, {9, 9, 16}, true);
    else grid = grid_for(cfg, chart, chart.domain_dim() == 2 ? std::vector<int>{21, 21} : std::vector<int>{9, 9, 9}, false);
    const auto cloud = sweep_parallel<std::vector<double>>(grid, [&](const std::vector<double>& p) { return chart.value(p); });

    std::array<Vec, 3> axes;
    if (pca) axes = principal_axes(cloud);
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidConfig, "cannot open output file " + cfg.out);
    f << "# chart " << chart.name() << "\n";
    if (pca) f << "# projection principal components of the sampled cloud\n";
    else f << "# projection coordinates " << coords[0] + 1 << " " << coords[1] + 1 << " " << coords[2] + 1 << "\n";
    char line[128];
    for (const auto& p : cloud) {
        double xyz[3];
        for (int a = 0; a < 3; ++a) {
            if (pca) {
                double acc = 0.0;
                for (int k = 0; k < N; ++k) acc += axes[static_cast<std::size_t>(a)][k] * p[static_cast<std::size_t>(k)];
                xyz[a] = acc;
            } else {
                xyz[a] = p[static_cast<std::size_t>(coords[static_cast<std::size_t>(a)])];
            }
            if (xyz[a] == 0.0) xyz[a] = 0.0;
        }
        std::snprintf(line, sizeof line, "v %.10f %.10f %.10f\n", xyz[0], xyz[1], xyz[2]);
        f << line;
    }
    const auto quads = grid_quads(grid);
    for (const auto& q : quads) f << "f " << q[0] + 1 << " " << q[1] + 1 << " " << q[2] + 1 << " " << q[3] + 1 << "\n";
    if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write output file " + cfg.out);
    out << "wrote " << cloud.size() << " vertices and " << quads.size() << " faces to " << cfg.out << "\n";
    (void)err;
    return kPass;
}

double positive(const std::string& name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidConfig, "tolerance " + name + " must be positive");
    return v;
}

void set_tolerance(const std::string& name, double v, RunConfig& cfg) {
    v = positive(name, v);
    if (name == "deg") cfg.tol.deg = v;
    else if (name == "rank") cfg.tol.rank = v;
    else if (name == "circle") cfg.tol.circle = v;
    else if (name == "identity") cfg.thresholds.identity = v;
    else if (name == "minimal") cfg.thresholds.minimal = v;
    else if (name == "span") cfg.thresholds.span = v;
    else if (name == "ode") cfg.thresholds.ode = v;
    else throw Error(ErrorCode::InvalidConfig, "unknown tolerance '" + name + "'");
}

void check_jet_order(int k) {
    if (k < 2 || k > 6) throw Error(ErrorCode::InvalidConfig, "jet order must lie in 2..6");
}

} // namespace

void apply_tolerance(const std::string& assignment, RunConfig& cfg) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidConfig, "tolerance must be name=value");
    const std::string value = assignment.substr(eq + 1);
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidConfig, "bad tolerance value '" + value + "'");
    }
    set_tolerance(assignment.substr(0, eq), v, cfg);
}

void apply_config(const json& j, RunConfig& cfg) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
    try {
        if (j.contains("n")) {
            cfg.surface = j.get<WeierstrassData>();
            return;
        }
        if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
        if (j.contains("fixture")) cfg.fixture = j.at("fixture").get<std::string>();
        if (j.contains("surface")) cfg.surface = j.at("surface").get<WeierstrassData>();
        if (j.contains("grid")) cfg.grid = j.at("grid").get<std::string>();
        if (j.contains("jet_order")) {
            cfg.jet_order = j.at("jet_order").get<int>();
            check_jet_order(*cfg.jet_order);
        }
        if (j.contains("tolerances"))
            for (const auto& [name, value] : j.at("tolerances").items()) set_tolerance(name, value.get<double>(), cfg);
        if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("final_integration")) cfg.final_integration = j.at("final_integration").get<bool>();
        if (j.contains("kind")) cfg.kind = j.at("kind").get<std::string>();
        if (j.contains("projection")) {
            const auto& p = j.at("projection");
            if (p.is_string()) {
                cfg.projection = p.get<std::string>();
            } else {
                std::string s;
                for (const auto& c : p) s += (s.empty() ? "" : ",") + std::to_string(c.get<int>());
                cfg.projection = s;
            }
        }
        if (j.contains("splitting")) cfg.splitting = j.at("splitting").get<bool>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("malformed config: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Isotropic surfaces and their bipolar and polar 3-manifolds", "nullity"};
    std::string command, config, fixture, grid, out_path, kind, projection;
    int jet_order = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> tols;
    bool no_final = false, no_splitting = false;
    app.add_option("command", command, "generate | analyze | bundle | export")
        ->required()
        ->check(CLI::IsMember({"generate", "analyze", "bundle", "export"}));
    app.add_option("--config", config, "JSON config document");
    app.add_option("--fixture", fixture, "catalog fixture name");
    app.add_option("--grid", grid, "u0:u1:nu,v0:v1:nv[,t0:t1:nt]");
    app.add_option("--jet-order", jet_order, "highest derivative order used by analyze (2..6)");
    app.add_option("--tol", tols, "name=value, repeatable");
    app.add_option("--out", out_path, "output path");
    app.add_option("--seed", seed, "seed for random data");
    app.add_option("--kind", kind, "bipolar | polar")->check(CLI::IsMember({"bipolar", "polar"}));
    app.add_option("--projection", projection, "pca or i,j,k (1-based) for export");
    app.add_flag("--no-final-integration", no_final, "use Re(alpha2) itself as the surface");
    app.add_flag("--no-splitting", no_splitting, "skip the splitting tensor in bundle sweeps");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        RunConfig cfg;
        if (!config.empty()) {
            std::ifstream f(config);
            if (!f) throw Error(ErrorCode::InvalidConfig, "cannot read config " + config);
            json j;
            try {
                j = json::parse(f);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
            }
            apply_config(j, cfg);
        }
        cfg.command = command;
        if (app.count("--fixture")) {
            cfg.fixture = fixture;
            cfg.surface.reset();
        }
        if (app.count("--grid")) cfg.grid = grid;
        if (app.count("--jet-order")) {
            check_jet_order(jet_order);
            cfg.jet_order = jet_order;
        }
        for (const auto& t : tols) apply_tolerance(t, cfg);
        if (app.count("--out")) cfg.out = out_path;
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--kind")) cfg.kind = kind;
        if (app.count("--projection")) cfg.projection = projection;
        if (no_final) cfg.final_integration = false;
        if (no_splitting) cfg.splitting = false;

        if (command == "generate") return cmd_generate(cfg, out, err);
        if (command == "analyze") return cmd_analyze(cfg, out, err);
        if (command == "bundle") return cmd_bundle(cfg, out, err);
        return cmd_export(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run(args, out, err);
}

} // namespace nullity::cli
