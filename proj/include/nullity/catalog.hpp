#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullity/chart.hpp"

namespace nullity {

/// Real coordinates (Re z^p1, Im z^p1, ...) of a holomorphic curve in C^k,
/// zero padded.  Powers must be strictly increasing and start at 1 or more.
ImmersionChart make_holomorphic_curve(const std::vector<int>& powers, int pad = 0);

/// Minimal Veronese embedding of the 2-sphere in S^4 over a stereographic
/// chart that omits a cap around the north pole.
ImmersionChart make_veronese();

/// (u, v, 0, ..., 0) with `pad` >= 1 zero coordinates.
ImmersionChart make_plane(int pad);

/// cos r e_5 + sin r s(a, b, c) with s the inverse stereographic map onto S^3.
ImmersionChart make_geodesic_sphere(double r);

/// Totally geodesic S^3 in S^4 through the same stereographic chart.
ImmersionChart make_equator();

/// Totally geodesic S^2 in S^4.
ImmersionChart make_great_sphere();

/// Graph (u, v, a u^2 + c v^2) in R^3.
ImmersionChart make_graph(double a, double c);

/// A named chart together with the properties it is declared to have at
/// its probe points.  Surface-only fields are empty for 3-charts.
struct Fixture {
    std::string name;
    ImmersionChart chart;
    std::vector<int> dims;
    int isotropy_order = -1;
    bool elliptic = true;
    bool minimal = true;
    std::vector<std::vector<double>> probes;
};

std::vector<std::string> fixture_names();

/// Throws InvalidConfig for unknown names.  The seed only affects
/// weierstrass-random.
Fixture make_fixture(const std::string& name, std::uint64_t seed = 0);

} // namespace nullity
