#ifndef ORIENTWAVE_SCENARIOS_HPP
#define ORIENTWAVE_SCENARIOS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orientwave/elastic.hpp"
#include "orientwave/errors.hpp"
#include "orientwave/grid.hpp"
#include "orientwave/profiles.hpp"

namespace orientwave {

enum class Scenario {
    Dispersion,
    Solve1D,
    TwistExact,
    MatchFastTwist,
    HsVerify,
    Periodic,
    Polarized,
};

const char* scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(const std::string& name);

/// Validated run configuration. Parsed from JSON with a required
/// schema_version; unknown keys are rejected.
struct ScenarioConfig {
    Scenario scenario = Scenario::Dispersion;
    ElasticConstants elastic{1.0, 2.0, 3.0};
    double phi0 = 0.78539816339744831; // pi/4
    Grid1D grid{-3.0, 3.0, 2048};
    std::vector<double> epsilons{0.1, 0.05, 0.025};
    std::map<std::string, Profile> profiles;
    double horizon = 1.0;
    double cfl = 0.4;
    std::vector<int> resolutions{512, 1024, 2048, 4096};
    int samples = 1000;
    unsigned long long seed = 20060906;
    double orbit_phi_init = 0.0; // 0: default pi/2 + 0.6 set at parse time
    double orbit_phi_T_init = 0.0;
    std::optional<double> mu_override; // periodic coupling; derived from the orbit if absent
    std::string out_dir = ".";
    std::map<std::string, double> tolerances; // overrides of the named check thresholds

    Profile profile_or(const std::string& key, const Profile& fallback) const;
    double tol_or(const std::string& key, double fallback) const;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool less_is_pass = true; // value < threshold passes (or > for false)
    bool pass = false;
};

struct ConvergenceRow {
    double scale = 0.0; // h, dt or epsilon
    double error = 0.0;
};

struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunReport {
    std::string scenario;
    std::vector<std::pair<std::string, double>> invariants;
    std::vector<ConvergenceRow> convergence;
    std::optional<double> fitted_order; // least squares, needs >= 3 points
    std::vector<CheckResult> checks;
    std::map<std::string, SeriesTable> series;
    double wall_time_s = 0.0;

    bool all_pass() const;
    /// Deterministic JSON (wall_time_s is the only run-dependent field).
    std::string to_json() const;
};

RunReport run_scenario(const ScenarioConfig& cfg);
RunReport run_match_fast_twist(const ScenarioConfig& cfg);
/// The convergence-study slice of a scenario (twist-exact residual orders,
/// solve1d energy-drift refinement).
RunReport run_convergence(const ScenarioConfig& cfg);

/// CSV with a one-line header, 17 significant digits, LF line endings.
void write_series(const std::string& path, const SeriesTable& table);

/// Writes report.json and the series_*.csv files into out_dir.
void write_report(const RunReport& report, const std::string& out_dir);

/// Thread cap for scenario-level parallel sweeps (ORIENTWAVE_THREADS).
int scenario_thread_cap();

} // namespace orientwave

#endif
