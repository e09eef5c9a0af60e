// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "nullity/bundles.hpp"
#include "nullity/catalog.hpp"
#include "nullity/cli.hpp"
#include "nullity/error.hpp"
#include "nullity/report.hpp"
#include "nullity/sweep.hpp"
#include "nullity/weierstrass.hpp"
#include "oracle.hpp"

using namespace nullity;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    json report;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

ImmersionChart weierstrass_chart(const WeierstrassData& d) {
    return surface_chart(generate_surface(d), {{-0.5, 0.5}, {-0.5, 0.5}});
}

std::vector<std::vector<double>> random_points(const std::vector<Interval>& box, int count, std::uint64_t seed,
                                               double shrink) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> out;
    for (int k = 0; k < count; ++k) {
        std::vector<double> p;
        for (const Interval& iv : box) {
            const double mid = 0.5 * (iv.lo + iv.hi), half = 0.5 * (iv.hi - iv.lo) * shrink;
            p.push_back(std::uniform_real_distribution<double>(mid - half, mid + half)(rng));
        }
        out.push_back(std::move(p));
    }
    return out;
}

// Bipolar sweep on the 5x5x8 grid: max |H| and max third singular value over
// the regular points.
struct BundleSweep {
    double max_h = 0.0;
    double max_third = 0.0;
    int regular = 0;
    int singular = 0;
    std::vector<int> nu_counts = std::vector<int>(4, 0);
    json points = json::array();
};

BundleSweep bundle_sweep(const ImmersionChart& chart3) {
    const Grid grid = domain_grid(chart3, {5, 5, 8});
    const auto reps = sweep_parallel<BundlePointReport>(
        grid, [&](const std::vector<double>& p) { return analyze_bundle_point(chart3, p, false); });
    BundleSweep s;
    for (const auto& r : reps) {
        s.points.push_back(report_json(r));
        if (r.singular) {
            ++s.singular;
            continue;
        }
        ++s.regular;
        s.max_h = std::max(s.max_h, r.nullity.mean_curvature);
        s.max_third = std::max(s.max_third, r.nullity.singular_values.at(2));
        ++s.nu_counts.at(static_cast<std::size_t>(r.nullity.nu));
    }
    return s;
}

Outcome criterion1() {
    Outcome o;
    double worst = 0.0;
    const int ns[] = {4, 5, 6, 8};
    o.report = json::array();
    for (int k = 0; k < 50; ++k) {
        const MinimalSurfaceRep rep = generate_surface(nullity::random_data(ns[k % 4], static_cast<std::uint64_t>(k), 4));
        const auto checks = null_identities(rep);
        for (std::size_t c = 0; c < 3; ++c) {
            worst = std::max(worst, checks[c].relative);
            o.pass = o.pass && checks[c].relative < 1e-12;
            o.report.push_back(report_json(checks[c]));
        }
    }
    o.detail = "50 data sets, worst relative " + sci(worst);
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::vector<WeierstrassData> data{demo_data(5)};
    for (std::uint64_t s = 0; s < 3; ++s) {
        data.push_back(nullity::random_data(5, s));
        data.push_back(nullity::random_data(6, s));
        data.push_back(nullity::random_data(8, s));
    }
    double worst01 = 0.0, best2 = 0.0;
    o.report = json::array();
    for (std::size_t k = 0; k < data.size(); ++k) {
        const ImmersionChart g = weierstrass_chart(data[k]);
        const auto pts = random_points(g.domain(), 20, 100 + k, 0.8);
        for (const auto& p : pts) {
            const SurfaceReport r = analyze_surface(g, p);
            o.report.push_back(report_json(r));
            if (r.degenerate || r.ellipses.size() < 2) {
                o.pass = false;
                continue;
            }
            worst01 = std::max({worst01, r.ellipses[0].residual, r.ellipses[1].residual});
            // Only a rank-2 N_2 carries a genuine second ellipse.
            if (r.ellipses.size() > 2 && r.dims.at(2) == 2) best2 = std::max(best2, r.ellipses[2].residual);
        }
    }
    o.pass = o.pass && worst01 < 1e-8 && best2 > 1e-3;
    o.detail = std::to_string(data.size()) + " surfaces x 20 points, max E0/E1 residual " + sci(worst01) +
               ", largest genuine E2 residual " + sci(best2);
    return o;
}

Outcome criterion3() {
    Outcome o;
    const std::vector<WeierstrassData> data{demo_data(5), nullity::random_data(6, 0), nullity::random_data(8, 1)};
    double h = 0.0, third = 0.0;
    int regular = 0;
    o.report = json::array();
    for (const auto& d : data) {
        const BundleSweep s = bundle_sweep(unit_tangent_chart(weierstrass_chart(d)).chart);
        h = std::max(h, s.max_h);
        third = std::max(third, s.max_third);
        regular += s.regular;
        o.report.push_back(s.points);
    }
    o.pass = h < 1e-8 && third < 1e-8 && regular > 0;
    o.detail = "3 surfaces, " + std::to_string(regular) + " regular points, max |H| " + sci(h) + ", max third sv " +
               sci(third);
    return o;
}

Outcome criterion4() {
    Outcome o;
    const ImmersionChart pad = make_fixture("curve12-pad").chart;
    const ImmersionChart demo = weierstrass_chart(demo_data(5));
    const BundleSweep sp = bundle_sweep(unit_tangent_chart(pad).chart);
    const BundleSweep sd = bundle_sweep(unit_tangent_chart(demo).chart);
    const bool pad_ok = sp.nu_counts[3] == sp.regular && sp.singular == 0;
    const bool demo_ok = sd.nu_counts[1] == sd.regular && sd.singular == 0;
    int agree = 0;
    json rows = json::array();
    const BundleChart bp = unit_tangent_chart(pad), bd = unit_tangent_chart(demo);
    for (const auto& p : random_points(bp.chart.domain(), 20, 404, 0.9)) {
        const std::vector<double> base{p[0], p[1]};
        const bool f1 = totally_geodesic_classify(pad, base), n1 = relative_nullity(bp.chart, p).nu == 3;
        const bool f2 = totally_geodesic_classify(demo, base), n2 = relative_nullity(bd.chart, p).nu == 3;
        agree += (f1 == n1 && f2 == n2) ? 1 : 0;
        rows.push_back({{"point", p}, {"padded", {f1, n1}}, {"demo", {f2, n2}}});
    }
    o.pass = pad_ok && demo_ok && agree == 20;
    o.detail = "padded curve nu=3 at " + std::to_string(sp.nu_counts[3]) + "/" + std::to_string(sp.regular + sp.singular) +
               ", demo nu=1 at " + std::to_string(sd.nu_counts[1]) + "/" + std::to_string(sd.regular + sd.singular) +
               ", flag/nullity agreement " + std::to_string(agree) + "/20";
    o.report = {{"padded", sp.points}, {"demo", sd.points}, {"agreement", rows}};
    return o;
}

Outcome criterion5() {
    Outcome o;
    const BundleChart b = unit_normal_chart(make_veronese());
    const BundleSweep s = bundle_sweep(b.chart);
    o.pass = b.warnings.empty() && s.singular == 0 && s.max_h < 1e-8 && s.nu_counts[1] == s.regular;
    o.detail = std::to_string(s.regular) + " points, max |H| " + sci(s.max_h) + ", nu=1 at " +
               std::to_string(s.nu_counts[1]);
    o.report = s.points;
    return o;
}

Outcome criterion6() {
    Outcome o;
    const BundleChart b = unit_tangent_chart(weierstrass_chart(demo_data(5)));
    const auto pts = random_points(b.chart.domain(), 10, 606, 0.6);
    double span = 0.0, ode = 0.0, cj = 0.0, du = 0.0, dv = 0.0;
    o.report = json::array();
    for (const auto& p : pts) {
        BundlePointReport r = analyze_bundle_point(b.chart, p, true);
        o.report.push_back(report_json(r));
        if (!r.splitting) {
            o.pass = false;
            continue;
        }
        const SplittingReport& s = *r.splitting;
        span = std::max(span, s.span_residual);
        for (double x : s.ode_residuals) ode = std::max(ode, x);
        cj = std::max(cj, s.minus_j_distance);
        du = std::max(du, std::abs(s.u - 1.0));
        dv = std::max(dv, std::abs(s.v));
    }
    o.pass = o.pass && span < 1e-6 && ode < 1e-5;
    o.detail = "10 points, max span residual " + sci(span) + ", max ODE residual " + sci(ode) +
               "; diagnostic max |u-1| " + sci(du) + ", max |v| " + sci(dv) + ", max |C+J| " + sci(cj);
    return o;
}

Outcome criterion7() {
    Outcome o;
    const ImmersionChart g = make_holomorphic_curve({1, 2, 3});
    int order2 = 0;
    for (const auto& p : random_points(g.domain(), 10, 707, 0.9)) order2 += isotropy_order(g, p) == 2 ? 1 : 0;
    const BundleSweep s = bundle_sweep(unit_tangent_chart(g).chart);
    o.pass = order2 == 10 && s.max_h < 1e-8 && s.max_third < 1e-8 && s.regular > 0;
    o.detail = "isotropy order 2 at " + std::to_string(order2) + "/10, bipolar max |H| " + sci(s.max_h) +
               ", max third sv " + sci(s.max_third);
    o.report = s.points;
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::vector<std::pair<std::string, ImmersionChart>> charts;
    for (const auto& name : fixture_names()) {
        const Fixture f = make_fixture(name);
        charts.emplace_back(name, f.chart);
    }
    charts.emplace_back("bipolar demo5", unit_tangent_chart(weierstrass_chart(demo_data(5))).chart);
    charts.emplace_back("bipolar curve123", unit_tangent_chart(make_holomorphic_curve({1, 2, 3})).chart);
    charts.emplace_back("polar veronese", unit_normal_chart(make_veronese()).chart);
    double worst = 0.0;
    std::string where;
    int points = 0;
    o.report = json::object();
    for (std::size_t k = 0; k < charts.size(); ++k) {
        const auto& [name, c] = charts[k];
        for (const auto& p : random_points(c.domain(), 10, 800 + k, 0.8)) {
            const double e = oracle::jet_vs_fd_error(c, p);
            o.report[name].push_back(e < 1e-6);
            ++points;
            if (e > worst) {
                worst = e;
                where = name;
            }
        }
    }
    o.pass = worst < 1e-6;
    o.detail = std::to_string(charts.size()) + " charts x 10 points, worst relative deviation " + sci(worst) + " (" +
               where + ")";
    return o;
}

std::string cli_outputs() {
    std::string all;
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"generate", "--fixture", "weierstrass-random", "--seed", "2"},
          std::vector<std::string>{"analyze", "--fixture", "veronese"},
          std::vector<std::string>{"bundle", "--fixture", "weierstrass-demo5", "--grid",
                                   "-0.3:0.3:3,-0.3:0.3:3,0:6.283185307179586:4"},
          std::vector<std::string>{"bundle", "--fixture", "veronese", "--kind", "polar", "--no-splitting"}}) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        all += std::to_string(code) + out.str() + err.str();
    }
    return all;
}

using Criterion = std::function<Outcome()>;

const std::vector<std::pair<std::string, Criterion>>& criteria() {
    static const std::vector<std::pair<std::string, Criterion>> list{
        {"null-curve identities", criterion1},  {"1-isotropy of generated surfaces", criterion2},
        {"bipolar minimality and nullity", criterion3}, {"totally geodesic criterion", criterion4},
        {"polar construction", criterion5},      {"splitting tensor", criterion6},
        {"isotropic holomorphic curve", criterion7}, {"oracle equivalence", criterion8},
    };
    return list;
}

Outcome criterion9(const std::vector<std::string>& first_reports) {
    Outcome o;
    int same = 0;
    for (std::size_t k = 0; k < criteria().size(); ++k) same += criteria()[k].second().report.dump() == first_reports[k];
    const bool cli_same = cli_outputs() == cli_outputs();
    o.pass = same == static_cast<int>(criteria().size()) && cli_same;
    o.detail = std::to_string(same) + "/" + std::to_string(criteria().size()) + " reports identical on re-run, CLI outputs " +
               (cli_same ? "identical" : "differ");
    return o;
}

// Seconds; zero means the criterion has no runtime bound.
const double kLimits[] = {5.0, 30.0, 60.0, 0.0, 60.0, 0.0, 0.0, 0.0, 0.0};

} // namespace

int main() {
    bool all = true;
    std::vector<std::string> reports;
    auto report_line = [&](int n, const std::string& name, const std::function<Outcome()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double limit = kLimits[n - 1];
        const bool in_time = limit == 0.0 || secs < limit;
        const bool pass = o.pass && in_time;
        all = all && pass;
        const std::string bound = limit == 0.0 ? "" : ", limit " + std::to_string(static_cast<int>(limit)) + " s";
        std::printf("criterion %d %s: %s (%s; %.2f s%s)\n", n, name.c_str(), pass ? "PASS" : "FAIL", o.detail.c_str(),
                    secs, bound.c_str());
        std::fflush(stdout);
        return o;
    };
    for (std::size_t k = 0; k < criteria().size(); ++k)
        reports.push_back(report_line(static_cast<int>(k) + 1, criteria()[k].first, criteria()[k].second).report.dump());
    report_line(9, "determinism", [&] { return criterion9(reports); });
    return all ? 0 : 1;
}
