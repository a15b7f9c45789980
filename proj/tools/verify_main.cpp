#include "tmgeo/runner.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

namespace {

std::vector<std::string> split_ids(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of tangent-bundle geometry scenarios"};

    std::string spec;
    std::string checks_csv;
    int samples = -1;
    uint64_t seed = 0;
    double tol_scale = 1.0;
    std::string format = "text";
    bool list_builtins = false, list_checks = false;

    app.add_option("spec", spec, "Scenario file path or builtin scenario name");
    app.add_option("--checks", checks_csv, "Comma-separated check ids to run");
    app.add_option("--samples", samples, "Number of sample points (overrides the scenario)");
    auto* seed_opt = app.add_option("--seed", seed, "Sampling seed (overrides the scenario)");
    app.add_option("--tol-scale", tol_scale, "Multiplier applied to every threshold");
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--list-builtins", list_builtins, "List builtin scenarios and exit");
    app.add_flag("--list-checks", list_checks, "List known check ids and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list_builtins) {
            for (const tmgeo::Scenario& s : tmgeo::builtin_scenarios())
                std::printf("%-22s m=%d  %zu checks\n", s.name.c_str(), s.m,
                            s.checks.size());
            return 0;
        }
        if (list_checks) {
            for (const tmgeo::CheckDef& d : tmgeo::check_registry())
                std::printf("%-26s %s\n", d.id.c_str(), d.claim.c_str());
            return 0;
        }
        if (spec.empty()) {
            std::fprintf(stderr, "error: no scenario given (see --help)\n");
            return 2;
        }

        tmgeo::Scenario scenario;
        if (const tmgeo::Scenario* b = tmgeo::find_builtin(spec)) {
            scenario = *b;
        } else {
            scenario = tmgeo::load_scenario(spec);
        }
        tmgeo::validate_scenario(scenario);

        std::optional<uint64_t> seed_override;
        if (seed_opt->count() > 0) seed_override = seed;

        tmgeo::Report report = tmgeo::run_scenario(scenario, split_ids(checks_csv), samples,
                                                   seed_override, tol_scale);
        std::string text = format == "json" ? tmgeo::format_json(report)
                                            : tmgeo::format_text(report);
        std::fputs(text.c_str(), stdout);
        if (format == "json") std::fputc('\n', stdout);
        return report.all_pass ? 0 : 1;
    } catch (const tmgeo::ScenarioError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
