#pragma once

#include "tmgeo/tangent_bundle.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace tmgeo {

struct CheckOutcome {
    double max_res = 0.0;
    double min_res = 0.0;
    int points = 0;
    std::string note; // optional detail, e.g. a fitted constant
};

struct CheckDef {
    std::string id;
    std::string claim;
    bool default_above = false;
    double default_threshold = 1e-8;
    bool needs_acs = false;
    bool needs_triple = false;
    bool needs_surface = false; // m == 2 only
    std::function<CheckOutcome(const Scenario&, const std::vector<TMPoint>&, std::mt19937_64&)> fn;
};

const std::vector<CheckDef>& check_registry();
const CheckDef* find_check(const std::string& id);

struct CheckResult {
    std::string id;
    std::string claim;
    int points = 0;
    double residual = 0.0; // max over points for upper bounds, min for lower
    double threshold = 0.0;
    bool above = false;
    bool pass = false;
    std::string note;
};

struct Report {
    std::string scenario;
    uint64_t seed = 0;
    int samples = 0;
    std::string version;
    std::vector<CheckResult> checks;
    double wall_seconds = 0.0;
    bool all_pass = true;
};

// Deterministic TM sample points: x uniform in the box, fiber uniform on the
// sphere (or along the scenario's fixed direction) with radius in [0.1, 2].
std::vector<TMPoint> sample_points(const Scenario& s, int count, uint64_t seed);

// Runs the scenario's checks (optionally restricted to the ids in `filter`;
// a filtered id absent from the scenario runs with registry defaults).
// Threshold values are multiplied by tol_scale.  Throws ScenarioError for
// unknown or inapplicable check ids.
Report run_scenario(const Scenario& s, const std::vector<std::string>& filter,
                    int samples_override, std::optional<uint64_t> seed_override,
                    double tol_scale);

std::string format_text(const Report& r);
// Byte-stable under a fixed seed: excludes wall time.
std::string format_json(const Report& r);

const std::vector<Scenario>& builtin_scenarios();
const Scenario* find_builtin(const std::string& name);

inline const char* tool_version() { return "1.0.0"; }

} // namespace tmgeo
