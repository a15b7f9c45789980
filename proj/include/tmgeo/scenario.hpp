#pragma once

#include "tmgeo/exprlang.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmgeo {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ConnectionMode { LeviCivita, Torsioned, Hermitianized, Obata };

struct CheckSpec {
    std::string id;
    bool above = false; // true: passes when residual exceeds the threshold
    double threshold = 0.0;
};

// A grid of expressions where absent entries are identically zero.  The
// original source text of given entries is kept for saving.
struct ExprGrid {
    std::vector<Expr> cells;
    std::vector<bool> given;
    std::vector<int> dims;

    void init(const std::vector<int>& d);
    size_t flat(const std::vector<int>& idx) const;
    bool has(const std::vector<int>& idx) const;
    const Expr* at(const std::vector<int>& idx) const; // nullptr when absent
    void set(const std::vector<int>& idx, Expr e);
    bool any() const;
};

// One self-contained verification scenario: a chart with metric, optional
// torsion and complex-structure data, the connection construction mode, the
// checks to run and the sampling parameters.
struct Scenario {
    std::string name;
    int m = 0;
    std::vector<std::pair<double, double>> box;
    ExprGrid g;       // m x m
    ExprGrid T;       // m x m x m, component [k][i][j] of T^k_{ij}
    ExprGrid J;       // m x m
    std::array<ExprGrid, 3> triple;
    bool has_torsion = false;
    bool has_acs = false;
    bool has_triple = false;
    ConnectionMode mode = ConnectionMode::LeviCivita;
    std::optional<Vec> fiber_dir; // fixed fiber sampling direction
    int samples = 50;
    uint64_t seed = 42;
    std::vector<CheckSpec> checks;
};

Scenario parse_scenario(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);
std::string save_scenario(const Scenario& s);

// Verifies the structural invariants (metric symmetric positive definite,
// torsion antisymmetry, complex structures orthogonal with square -identity,
// triple algebra, mode prerequisites) at 16 deterministic sample points.
// Throws ScenarioError naming the failing quantity and point.
void validate_scenario(const Scenario& s);

} // namespace tmgeo
