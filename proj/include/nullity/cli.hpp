#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nullity/geometry.hpp"
#include "nullity/weierstrass.hpp"

namespace nullity::cli {

enum ExitCode { kPass = 0, kInputError = 1, kVerificationFailure = 2, kDegenerate = 3 };

struct Thresholds {
    double identity = 1e-12;
    double minimal = 1e-8;
    double span = 1e-6;
    double ode = 1e-5;
};

struct RunConfig {
    std::string command;
    std::string fixture;
    std::optional<WeierstrassData> surface;
    std::string grid;
    std::optional<int> jet_order;
    Tolerances tol;
    Thresholds thresholds;
    std::string out;
    std::uint64_t seed = 0;
    bool final_integration = true;
    /// bipolar or polar; empty means the command default.
    std::string kind;
    /// "pca" or a 1-based coordinate triple "i,j,k".
    std::string projection = "pca";
    bool splitting = true;
};

/// Applies a JSON config document; fields present override `cfg`.
void apply_config(const nlohmann::json& j, RunConfig& cfg);
/// name=value with name one of deg, rank, circle, identity, minimal, span, ode.
void apply_tolerance(const std::string& assignment, RunConfig& cfg);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nullity::cli
