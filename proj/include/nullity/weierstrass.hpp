#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullity/chart.hpp"
#include "nullity/cpoly.hpp"

namespace nullity {

/// Per-component constants for the three antiderivatives of the recursion.
/// An empty list means all zeros.
struct IntegrationConstants {
    std::vector<ComplexNum> phi0;
    std::vector<ComplexNum> phi1;
    std::vector<ComplexNum> phi2;
};

/// Polynomial data of the Weierstrass-type recursion for a 1-isotropic
/// surface in R^n: alpha0 : C -> C^(n-4) and nonzero multipliers beta1, beta2.
struct WeierstrassData {
    int n = 4;
    PolyVec alpha0;
    ComplexPoly beta1;
    ComplexPoly beta2;
    IntegrationConstants int_constants;
    /// When false the surface is Re(alpha2) itself instead of Re of its
    /// antiderivative; kept for comparison, it is 1-isotropic only for null alpha0.
    bool final_integration = true;
};

/// Throws InvalidData naming the violated requirement.
void validate(const WeierstrassData& data);

/// beta * (1 - phi.phi, i(1 + phi.phi), 2 phi) with phi the antiderivative of
/// alpha; the result has two more components than alpha and is a null curve.
PolyVec isotropic_step(const PolyVec& alpha, const ComplexPoly& beta, std::span<const ComplexNum> c0s = {});

struct MinimalSurfaceRep {
    int n = 0;
    PolyVec alpha1;
    PolyVec alpha2;
    PolyVec phi2;
    bool final_integration = true;

    /// Holomorphic map whose real part is the surface.
    const PolyVec& potential() const noexcept { return final_integration ? phi2 : alpha2; }
};

MinimalSurfaceRep generate_surface(const WeierstrassData& data);

struct IdentityCheck {
    std::string name;
    double max_abs = 0.0;   // largest coefficient magnitude of the product
    double scale = 0.0;     // squared largest coefficient magnitude of the factor
    double relative = 0.0;
    bool pass = false;
};

/// Coefficient-level null identities alpha1.alpha1, alpha2.alpha2 and
/// alpha2'.alpha2', plus the isotropy identity P''.P'' of the potential P
/// (equal to alpha2'.alpha2' with the final integration).
std::vector<IdentityCheck> null_identities(const MinimalSurfaceRep& rep, double rel_tol = 1e-12);

/// g(u, v) = Re P(u + iv), zero padded by `pad` coordinates.
ImmersionChart surface_chart(const MinimalSurfaceRep& rep, std::vector<Interval> domain, int pad = 0);

/// Seeded data with component degrees <= max_degree.  The multipliers are
/// 1 plus small higher terms so they have no zeros on |z| <= 1/2.
WeierstrassData random_data(int n, std::uint64_t seed, int max_degree = 4);

/// n = 4: alpha0 empty, beta1 = beta2 = 1.  n = 5: alpha0 = (1), beta1 = beta2 = 1.
WeierstrassData demo_data(int n);

void from_json(const nlohmann::json& j, WeierstrassData& data);
void to_json(nlohmann::json& j, const WeierstrassData& data);
void to_json(nlohmann::json& j, const MinimalSurfaceRep& rep);

} // namespace nullity
