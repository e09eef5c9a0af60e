#pragma once

#include "json.hpp"
#include "nullity/bundles.hpp"
#include "nullity/geometry.hpp"
#include "nullity/weierstrass.hpp"

namespace nullity {

nlohmann::json report_json(const SurfaceReport& r);
nlohmann::json report_json(const BundlePointReport& r);
nlohmann::json report_json(const IdentityCheck& c);

} // namespace nullity
