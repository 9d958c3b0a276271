#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orientwave/scenarios.hpp"

using namespace orientwave;

int main(int argc, char** argv) {
    CLI::App app{"orientwave: director-field orientation-wave scenarios"};
    std::string scenario_arg;
    std::string config_path;
    std::string out_dir;
    int resolution = 0;
    std::vector<double> epsilons;
    app.add_option("scenario", scenario_arg,
                   "one of: dispersion solve1d twist-exact match-fast-twist hs-verify "
                   "periodic polarized")
        ->required();
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_dir, "output directory for report.json and series_*.csv");
    app.add_option("--resolution", resolution, "override the grid resolution");
    app.add_option("--epsilon", epsilons, "override the epsilon list")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg;
        if (!config_path.empty()) {
            cfg = load_config(config_path);
            if (scenario_name(cfg.scenario) != scenario_arg)
                throw ValidationError("scenario argument '" + scenario_arg +
                                      "' does not match the config file");
        } else {
            const auto sc = scenario_from_name(scenario_arg);
            if (!sc) throw ParseError("unknown scenario '" + scenario_arg + "'");
            std::string text = "{\"schema_version\":1,\"scenario\":\"" + scenario_arg + "\"}";
            cfg = parse_config(text);
        }
        if (resolution > 0) cfg.grid.n = resolution;
        if (!epsilons.empty()) cfg.epsilons = epsilons;
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        RunReport rep = run_scenario(cfg);
        write_report(rep, cfg.out_dir);
        for (const auto& c : rep.checks)
            std::printf("[%s] %s: %.6g %s %.6g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                        c.value, c.less_is_pass ? "<" : ">", c.threshold);
        std::printf("%s: %s (%.2f s), report written to %s/report.json\n",
                    scenario_name(cfg.scenario),
                    rep.all_pass() ? "all checks passed" : "CHECKS FAILED", rep.wall_time_s,
                    cfg.out_dir.c_str());
        return rep.all_pass() ? 0 : 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
