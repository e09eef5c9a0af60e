#include "nullity/report.hpp"

namespace nullity {

nlohmann::json report_json(const SurfaceReport& r) {
    nlohmann::json j;
    j["point"] = r.point;
    if (r.degenerate) {
        j["degenerate"] = true;
        j["error"] = r.error;
        return j;
    }
    j["dims"] = r.dims;
    j["tau"] = r.tau;
    j["tau_o"] = r.tau_o;
    nlohmann::json ellipses = nlohmann::json::array();
    for (const auto& e : r.ellipses)
        ellipses.push_back({{"order", e.order}, {"semiaxes", {e.sigma1, e.sigma2}}, {"residual", e.residual}, {"circle", e.is_circle}});
    j["ellipses"] = ellipses;
    j["elliptic"] = r.ellipticity.exists;
    if (r.ellipticity.exists) {
        j["coeffs"] = {r.ellipticity.a, r.ellipticity.b, r.ellipticity.c};
        j["ambiguous"] = r.ellipticity.ambiguous;
        j["isotropy_order"] = r.isotropy_order;
    }
    j["H"] = r.mean_curvature;
    return j;
}

nlohmann::json report_json(const BundlePointReport& r) {
    nlohmann::json j;
    j["point"] = r.point;
    j["singular"] = r.singular;
    if (r.singular) return j;
    const NullityReport& n = r.nullity;
    j["H"] = n.mean_curvature;
    j["nu"] = n.nu;
    j["sv"] = n.singular_values;
    j["tg"] = n.totally_geodesic;
    j["fiber"] = {{"alpha", n.fiber_alpha}, {"alignment", n.fiber_alignment}};
    if (r.splitting) {
        const SplittingReport& s = *r.splitting;
        j["C"] = {{s.C(0, 0), s.C(0, 1)}, {s.C(1, 0), s.C(1, 1)}};
        j["uv"] = {s.u, s.v};
        j["residuals"] = {{"span", s.span_residual},
                          {"e3_v", s.ode_residuals[0]},
                          {"e3_u", s.ode_residuals[1]},
                          {"e1u_e2v", s.ode_residuals[2]},
                          {"e2u_e1v", s.ode_residuals[3]},
                          {"minus_J", s.minus_j_distance}};
    } else if (!r.splitting_error.empty()) {
        j["splitting_error"] = r.splitting_error;
    }
    return j;
}

nlohmann::json report_json(const IdentityCheck& c) {
    return {{"name", c.name}, {"max_abs", c.max_abs}, {"scale", c.scale}, {"relative", c.relative}, {"pass", c.pass}};
}

} // namespace nullity
