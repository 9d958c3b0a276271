#include "orientwave/scenarios.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "orientwave/characteristics.hpp"
#include "orientwave/dispersion.hpp"
#include "orientwave/hs_ops.hpp"
#include "orientwave/oned_pde.hpp"
#include "orientwave/periodic.hpp"
#include "orientwave/polarized.hpp"

namespace orientwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) ok = true;
        if (!ok) throw ParseError("unknown key '" + item.key() + "' in " + where);
    }
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ParseError(std::string("key '") + key + "' must be a number");
    return j[key].get<double>();
}

Profile parse_profile(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("family"))
        throw ParseError("profile " + where + " must be an object with a 'family'");
    const std::string fam = j["family"].get<std::string>();
    if (fam == "gaussian-bump") {
        expect_keys(j, {"family", "amplitude", "center", "width"}, where);
        const double w = get_num(j, "width", 1.0);
        if (!(w > 0.0)) throw ValidationError("profile " + where + ": width must be positive");
        return Profile::gaussian_bump(get_num(j, "amplitude", 1.0), get_num(j, "center", 0.0),
                                      w);
    }
    if (fam == "smoothed-box") {
        expect_keys(j, {"family", "amplitude", "left", "right", "ramp"}, where);
        const double l = get_num(j, "left", -1.0), r = get_num(j, "right", 1.0);
        const double ramp = get_num(j, "ramp", 0.1);
        if (!(l < r) || !(ramp > 0.0))
            throw ValidationError("profile " + where + ": need left < right and ramp > 0");
        return Profile::smoothed_box(get_num(j, "amplitude", 1.0), l, r, ramp);
    }
    if (fam == "sine") {
        expect_keys(j, {"family", "amplitude", "wavenumber", "phase"}, where);
        return Profile::sine(get_num(j, "amplitude", 1.0), get_num(j, "wavenumber", 1.0),
                             get_num(j, "phase", 0.0));
    }
    if (fam == "constant") {
        expect_keys(j, {"family", "value"}, where);
        return Profile::constant(get_num(j, "value", 0.0));
    }
    throw ParseError("unknown profile family '" + fam + "' in " + where);
}

void validate_phi0(double phi0) {
    // the asymptotics require a != b and b' != 0, i.e. phi0 != n pi/2
    const double m = std::abs(std::sin(2.0 * phi0));
    if (m < 1e-9)
        throw ValidationError(
            "phi0 must satisfy phi0 != n pi/2 (strict hyperbolicity and b' != 0)");
    AngleBand band;
    if (!(phi0 > band.lo && phi0 < band.hi))
        throw ValidationError("phi0 outside the safe angle band");
}

} // namespace

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Dispersion: return "dispersion";
        case Scenario::Solve1D: return "solve1d";
        case Scenario::TwistExact: return "twist-exact";
        case Scenario::MatchFastTwist: return "match-fast-twist";
        case Scenario::HsVerify: return "hs-verify";
        case Scenario::Periodic: return "periodic";
        case Scenario::Polarized: return "polarized";
    }
    return "?";
}

std::optional<Scenario> scenario_from_name(const std::string& name) {
    for (Scenario s : {Scenario::Dispersion, Scenario::Solve1D, Scenario::TwistExact,
                       Scenario::MatchFastTwist, Scenario::HsVerify, Scenario::Periodic,
                       Scenario::Polarized})
        if (name == scenario_name(s)) return s;
    return std::nullopt;
}

Profile ScenarioConfig::profile_or(const std::string& key, const Profile& fallback) const {
    auto it = profiles.find(key);
    return it == profiles.end() ? fallback : it->second;
}

double ScenarioConfig::tol_or(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

ScenarioConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    expect_keys(j,
                {"schema_version", "scenario", "elastic", "phi0", "grid", "epsilons",
                 "profiles", "time", "resolutions", "samples", "seed", "orbit", "mu",
                 "out_dir", "tolerances"},
                "config");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1)
        throw ParseError("config requires schema_version = 1");
    if (!j.contains("scenario")) throw ParseError("config requires a 'scenario'");
    const auto sc = scenario_from_name(j["scenario"].get<std::string>());
    if (!sc) throw ParseError("unknown scenario '" + j["scenario"].get<std::string>() + "'");

    ScenarioConfig cfg;
    cfg.scenario = *sc;
    cfg.orbit_phi_init = kPi / 2 + 0.6;

    if (j.contains("elastic")) {
        expect_keys(j["elastic"], {"alpha", "beta", "gamma"}, "elastic");
        cfg.elastic = ElasticConstants(get_num(j["elastic"], "alpha", 1.0),
                                       get_num(j["elastic"], "beta", 2.0),
                                       get_num(j["elastic"], "gamma", 3.0));
    }
    cfg.phi0 = get_num(j, "phi0", cfg.phi0);
    if (j.contains("grid")) {
        expect_keys(j["grid"], {"x_min", "x_max", "n"}, "grid");
        cfg.grid.x_min = get_num(j["grid"], "x_min", cfg.grid.x_min);
        cfg.grid.x_max = get_num(j["grid"], "x_max", cfg.grid.x_max);
        cfg.grid.n = static_cast<int>(get_num(j["grid"], "n", cfg.grid.n));
        if (!(cfg.grid.x_min < cfg.grid.x_max) || cfg.grid.n < 8)
            throw ValidationError("grid requires x_min < x_max and n >= 8");
    }
    if (j.contains("epsilons")) {
        cfg.epsilons.clear();
        for (const auto& e : j["epsilons"]) {
            const double v = e.get<double>();
            if (!(v > 0.0 && v <= 0.5))
                throw ValidationError("epsilons must lie in (0, 0.5]");
            cfg.epsilons.push_back(v);
        }
        if (cfg.epsilons.empty()) throw ValidationError("epsilons must be nonempty");
    }
    if (j.contains("profiles")) {
        for (const auto& item : j["profiles"].items())
            cfg.profiles.emplace(item.key(), parse_profile(item.value(), item.key()));
    }
    if (j.contains("time")) {
        expect_keys(j["time"], {"horizon", "cfl"}, "time");
        cfg.horizon = get_num(j["time"], "horizon", cfg.horizon);
        cfg.cfl = get_num(j["time"], "cfl", cfg.cfl);
        if (!(cfg.horizon > 0.0)) throw ValidationError("time.horizon must be positive");
        if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.5))
            throw ValidationError("time.cfl must lie in (0, 0.5]");
    }
    if (j.contains("resolutions")) {
        cfg.resolutions.clear();
        for (const auto& e : j["resolutions"]) {
            const int n = e.get<int>();
            if (n < 8) throw ValidationError("resolutions must be >= 8");
            cfg.resolutions.push_back(n);
        }
        if (cfg.resolutions.size() < 3)
            throw ValidationError("convergence studies need at least 3 resolutions");
    }
    if (j.contains("samples")) {
        cfg.samples = j["samples"].get<int>();
        if (cfg.samples < 1) throw ValidationError("samples must be >= 1");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
    if (j.contains("orbit")) {
        expect_keys(j["orbit"], {"phi_init", "phi_T_init"}, "orbit");
        cfg.orbit_phi_init = get_num(j["orbit"], "phi_init", cfg.orbit_phi_init);
        cfg.orbit_phi_T_init = get_num(j["orbit"], "phi_T_init", 0.0);
    }
    if (j.contains("mu")) cfg.mu_override = j["mu"].get<double>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("tolerances")) {
        for (const auto& item : j["tolerances"].items())
            cfg.tolerances[item.key()] = item.value().get<double>();
    }

    // scenario preconditions
    if (cfg.scenario == Scenario::Solve1D || cfg.scenario == Scenario::MatchFastTwist)
        validate_phi0(cfg.phi0);
    if (cfg.scenario == Scenario::MatchFastTwist && !(cfg.elastic.alpha < cfg.elastic.beta))
        throw ValidationError("match-fast-twist requires alpha < beta (fast twist waves)");
    if (cfg.scenario == Scenario::Periodic && !(cfg.elastic.beta < cfg.elastic.gamma))
        throw ValidationError(
            "periodic requires beta < gamma (mean-field well around pi/2)");
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

bool RunReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string RunReport::to_json() const {
    ordered_json j;
    j["schema_version"] = 1;
    j["scenario"] = scenario;
    ordered_json inv = ordered_json::object();
    for (const auto& [k, v] : invariants) inv[k] = v;
    j["invariants"] = inv;
    ordered_json conv = ordered_json::array();
    for (const auto& row : convergence)
        conv.push_back({{"scale", row.scale}, {"error", row.error}});
    j["convergence"] = conv;
    if (fitted_order) j["fitted_order"] = *fitted_order;
    ordered_json cks = ordered_json::array();
    for (const auto& c : checks)
        cks.push_back({{"name", c.name},
                       {"value", c.value},
                       {"threshold", c.threshold},
                       {"comparison", c.less_is_pass ? "lt" : "gt"},
                       {"pass", c.pass}});
    j["checks"] = cks;
    j["pass"] = all_pass();
    j["wall_time_s"] = wall_time_s;
    return j.dump(2) + "\n";
}

void write_series(const std::string& path, const SeriesTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open series file for writing: " + path);
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    char buf[64];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw IoError("failed writing series file: " + path);
}

void write_report(const RunReport& report, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string path = out_dir + "/report.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open report for writing: " + path);
    out << report.to_json();
    for (const auto& [name, table] : report.series)
        write_series(out_dir + "/series_" + name + ".csv", table);
}

int scenario_thread_cap() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("ORIENTWAVE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return std::min(hw, cap);
    }
    return hw;
}

// ---------------------------------------------------------------------------
// scenario helpers

namespace {

void add_check(RunReport& rep, const std::string& name, double value, double threshold,
               bool less_is_pass = true) {
    CheckResult c;
    c.name = name;
    c.value = value;
    c.threshold = threshold;
    c.less_is_pass = less_is_pass;
    c.pass = less_is_pass ? value < threshold : value > threshold;
    rep.checks.push_back(c);
}

Vec3 rand_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (;;) {
        Vec3 v{nd(rng), nd(rng), nd(rng)};
        const double n = norm(v);
        if (n > 0.3) return {v[0] / n, v[1] / n, v[2] / n};
    }
}

struct DispersionSample {
    Vec3 k, n0;
    ElasticConstants c{1, 2, 3};
};

DispersionSample make_sample(unsigned long long seed, int idx) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (idx + 1));
    std::uniform_real_distribution<double> uk(-1.5, 1.5), uc(0.3, 3.0);
    DispersionSample s;
    for (;;) {
        s.k = {uk(rng), uk(rng), uk(rng)};
        if (norm(s.k) < 0.2) continue;
        s.n0 = rand_unit(rng);
        if (norm(cross(s.k, s.n0)) / norm(s.k) > 0.15) break;
    }
    for (;;) {
        const double a = uc(rng), b = uc(rng), g = uc(rng);
        if (std::abs(a - b) > 0.05 && std::abs(b - g) > 0.05 && std::abs(a - g) > 0.05) {
            s.c = ElasticConstants(a, b, g);
            break;
        }
    }
    return s;
}

// determinant of the bordered mode system, assembled from the mode map
double mode_det(const Vec3& k, const Vec3& n0, double w2, const ElasticConstants& c) {
    double m[4][4];
    for (int col = 0; col < 3; ++col) {
        Vec3 e{0, 0, 0};
        e[col] = 1.0;
        const Vec3 Le = apply_mode_map(k, n0, w2, c, e);
        for (int r = 0; r < 3; ++r) m[r][col] = Le[r];
    }
    for (int r = 0; r < 3; ++r) {
        m[r][3] = -n0[r];
        m[3][r] = n0[r];
    }
    m[3][3] = 0.0;
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            for (int cc = 0; cc < 4; ++cc) std::swap(m[piv][cc], m[col][cc]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int cc = col; cc < 4; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return det;
}

std::vector<double> det_roots(const Vec3& k, const Vec3& n0, const ElasticConstants& c) {
    const double k2 = dot(k, k);
    const double top = 1.2 * std::max({c.alpha, c.beta, c.gamma}) * k2;
    const int scan = 800;
    std::vector<double> roots;
    double prev = mode_det(k, n0, 1e-9, c);
    for (int i = 1; i <= scan; ++i) {
        const double x = 1e-9 + (top - 1e-9) * i / scan;
        const double cur = mode_det(k, n0, x, c);
        if (prev * cur < 0.0) {
            double a = 1e-9 + (top - 1e-9) * (i - 1) / scan, b = x, fa = prev;
            for (int it = 0; it < 90; ++it) {
                const double mid = 0.5 * (a + b), fm = mode_det(k, n0, mid, c);
                if (fa * fm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = cur;
    }
    return roots;
}

void parallel_for(int count, const std::function<void(int, int)>& body) {
    const int threads = std::min(scenario_thread_cap(), count);
    if (threads <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int lo = t * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

double curve_q(const CurveFn& F) {
    const int n = 1 << 16;
    const double lo = F.lo - 1.0, hi = F.hi + 1.0, h = (hi - lo) / (n - 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        const double d = F.df(lo + i * h);
        g[i] = d * d;
    }
    return cumquad4(g, h).back();
}

AngleFieldState run_oned(AngleFieldState s, double t_end, const ElasticConstants& c,
                         double cfl) {
    double amax = 0.0;
    for (double p : s.phi) {
        const auto sp = one_d_speeds(p, c);
        amax = std::max(amax, std::max(sp.a, sp.b));
    }
    const double dt0 = cfl * s.grid.h() / amax;
    while (s.time < t_end - 1e-13) s = step(s, std::min(dt0, t_end - s.time), c);
    return s;
}

// ---------------------------------------------------------------------------
// dispersion

RunReport run_dispersion(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = scenario_name(cfg.scenario);
    const int n = cfg.samples;

    std::vector<double> eig_res(n, 0.0), solve_res(n, 0.0), constraint_res(n, 0.0),
        branch_err(n, 0.0), lindeg(n, 0.0), splay_fd(n, 0.0);
    std::vector<int> trichotomy_bad(n, 0);

    parallel_for(n, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const DispersionSample smp = make_sample(cfg.seed, i);
            std::mt19937_64 rng(cfg.seed ^ (0xc2b2ae3d27d4eb4fULL * (i + 1)));
            std::uniform_real_distribution<double> ud(-1.0, 1.0);
            const auto f = dispersion(smp.k, smp.n0, smp.c);
            const double kn = dot(smp.k, smp.n0), kR = dot(smp.k, f.R);
            const double w2a = f.omega_splay * f.omega_splay;
            const double w2b = f.omega_twist * f.omega_twist;

            // eigenpairs of the constrained problem
            {
                const double lamR = -(smp.c.alpha - smp.c.gamma) * kn * kR;
                const Vec3 rs = apply_mode_map(smp.k, smp.n0, w2a, smp.c, f.R);
                const Vec3 ts = apply_mode_map(smp.k, smp.n0, w2b, smp.c, f.S);
                double r = 0.0;
                for (int d = 0; d < 3; ++d) {
                    r = std::max(r, std::abs(rs[d] - lamR * smp.n0[d]) / norm(f.R));
                    r = std::max(r, std::abs(ts[d]) / norm(f.S));
                }
                eig_res[i] = r;
            }
            // unique solve against random data
            {
                const double omega = 1.37 * std::max(f.omega_splay, f.omega_twist) + 0.21;
                const Vec3 F{ud(rng), ud(rng), ud(rng)};
                const double G = ud(rng);
                const auto r = constrained_solve(smp.k, smp.n0, omega, smp.c, F, G);
                if (r.status != SolveStatus::Unique) trichotomy_bad[i] = 1;
                const Vec3 res = apply_mode_map(smp.k, smp.n0, omega * omega, smp.c, r.m);
                double worst = 0.0;
                for (int d = 0; d < 3; ++d)
                    worst = std::max(worst, std::abs(res[d] - r.lambda * smp.n0[d] - F[d]));
                solve_res[i] = worst / (1.0 + norm(F));
                constraint_res[i] = std::abs(dot(smp.n0, r.m) - G);
            }
            // brute-force determinant roots
            {
                auto roots = det_roots(smp.k, smp.n0, smp.c);
                const double w_lo = std::min(w2a, w2b), w_hi = std::max(w2a, w2b);
                if (roots.size() != 2) {
                    trichotomy_bad[i] = 1;
                } else {
                    std::sort(roots.begin(), roots.end());
                    branch_err[i] = std::max(std::abs(roots[0] - w_lo) / w_lo,
                                             std::abs(roots[1] - w_hi) / w_hi);
                }
            }
            // linear degeneracy / genuine nonlinearity sweeps
            {
                lindeg[i] = std::abs(twist_degeneracy_check(f, smp.c));
                const double hh = 1e-5;
                Vec3 np = f.n0, nm = f.n0;
                for (int d = 0; d < 3; ++d) {
                    np[d] += hh * f.R[d];
                    nm[d] -= hh * f.R[d];
                }
                const double fd =
                    (splay_speed(smp.k, np, smp.c) - splay_speed(smp.k, nm, smp.c)) /
                    (2.0 * hh);
                splay_fd[i] = std::abs(genuine_nonlinearity_gamma(f, smp.c) - fd);
            }
            // resonant trichotomy on constructed cases
            {
                auto rs = constrained_solve(smp.k, smp.n0, f.omega_twist, smp.c, f.S, 0.0);
                if (rs.status != SolveStatus::ResonantUnsolvable) trichotomy_bad[i] = 1;
                auto rh =
                    constrained_solve(smp.k, smp.n0, f.omega_twist, smp.c, {0, 0, 0}, 0.0);
                if (rh.status != SolveStatus::ResonantSolvable || rh.nullspace.size() != 1 ||
                    std::abs(rh.lambda) > 1e-12)
                    trichotomy_bad[i] = 1;
                const double G = 0.9;
                const double fr = -(smp.c.alpha - smp.c.gamma) * kn * kR * G / dot(f.R, f.R);
                Vec3 Fs{fr * f.R[0] + 0.4 * f.S[0], fr * f.R[1] + 0.4 * f.S[1],
                        fr * f.R[2] + 0.4 * f.S[2]};
                auto ra = constrained_solve(smp.k, smp.n0, f.omega_splay, smp.c, Fs, G);
                if (ra.status != SolveStatus::ResonantSolvable) trichotomy_bad[i] = 1;
                Fs[0] += 0.05 * f.R[0];
                Fs[1] += 0.05 * f.R[1];
                Fs[2] += 0.05 * f.R[2];
                auto rb = constrained_solve(smp.k, smp.n0, f.omega_splay, smp.c, Fs, G);
                if (rb.status != SolveStatus::ResonantUnsolvable) trichotomy_bad[i] = 1;
            }
        }
    });

    // parallel propagation trichotomy (fixed construction)
    int par_bad = 0;
    {
        ElasticConstants c(1.0, 2.0, 3.0);
        const Vec3 k{0, 0, 1.3}, n0{0, 0, 1};
        const double wres = std::sqrt(c.gamma * dot(k, k));
        auto ok = constrained_solve(k, n0, wres, c, {0, 0, 0.7}, 0.4);
        if (ok.status != SolveStatus::ResonantSolvable || ok.nullspace.size() != 2) par_bad = 1;
        auto bad = constrained_solve(k, n0, wres, c, {0.2, 0, 0.7}, 0.4);
        if (bad.status != SolveStatus::ResonantUnsolvable) par_bad = 1;
        auto uni = constrained_solve(k, n0, 2.0 * wres, c, {0.3, -0.1, 0.8}, 0.5);
        if (uni.status != SolveStatus::Unique) par_bad = 1;
    }

    auto vmax = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, x);
        return m;
    };
    int bad = par_bad;
    for (int b : trichotomy_bad) bad += b;
    const int ndeg = std::min(n, 100);
    double lindeg_max = 0.0, splay_max = 0.0;
    for (int i = 0; i < ndeg; ++i) {
        lindeg_max = std::max(lindeg_max, lindeg[i]);
        splay_max = std::max(splay_max, splay_fd[i]);
    }

    rep.invariants.emplace_back("samples", static_cast<double>(n));
    add_check(rep, "eigen_residual", std::max(vmax(eig_res), vmax(solve_res)),
              cfg.tol_or("eigen_residual", 1e-10));
    add_check(rep, "constraint_residual", vmax(constraint_res),
              cfg.tol_or("constraint_residual", 1e-10));
    add_check(rep, "branch_vs_det_roots", vmax(branch_err),
              cfg.tol_or("branch_vs_det_roots", 1e-9));
    add_check(rep, "trichotomy_failures", static_cast<double>(bad), 0.5);
    add_check(rep, "twist_linear_degeneracy", lindeg_max,
              cfg.tol_or("twist_linear_degeneracy", 1e-6));
    add_check(rep, "splay_gamma_vs_fd", splay_max, cfg.tol_or("splay_gamma_vs_fd", 1e-6));

    SeriesTable tbl;
    tbl.columns = {"sample", "eigen_residual", "solve_residual", "branch_rel_err",
                   "twist_degeneracy"};
    for (int i = 0; i < std::min(n, 64); ++i)
        tbl.rows.push_back({static_cast<double>(i), eig_res[i], solve_res[i], branch_err[i],
                            lindeg[i]});
    rep.series.emplace("sweep", std::move(tbl));
    return rep;
}

// ---------------------------------------------------------------------------
// solve1d

RunReport run_solve1d(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = scenario_name(cfg.scenario);
    const ElasticConstants& c = cfg.elastic;
    const Profile f = cfg.profile_or("f", Profile::gaussian_bump(1.0, 0.0, 1.0));
    const Profile g = cfg.profile_or("g", Profile::constant(0.0));
    const double eps = cfg.epsilons.front();

    auto s0 = twist_ic(eps, cfg.phi0, f, g, cfg.grid, c);
    const double e0 = energy(s0, c);
    auto s1 = run_oned(s0, cfg.horizon, c, cfg.cfl);
    const double drift = std::abs(energy(s1, c) - e0) / std::max(e0, 1e-300);
    add_check(rep, "energy_drift", drift, cfg.tol_or("energy_drift", 1e-4));

    // linear phase speed of a small psi wave against b(phi0)
    {
        const auto sp = one_d_speeds(cfg.phi0, c);
        const Grid1D gg{-6.0, 6.0, 1024};
        AngleFieldState w;
        w.grid = gg;
        w.phi.assign(gg.n, cfg.phi0);
        w.phi_t.assign(gg.n, 0.0);
        w.psi.resize(gg.n);
        w.psi_t.resize(gg.n);
        Profile pulse = Profile::gaussian_bump(1e-5, -2.0, 0.5);
        for (int i = 0; i < gg.n; ++i) {
            w.psi[i] = pulse.value(gg.x(i));
            w.psi_t[i] = -sp.b * pulse.d1(gg.x(i));
        }
        auto centroid = [&](const std::vector<double>& v) {
            auto d = diff1(v, gg.h());
            double num = 0.0, den = 0.0;
            for (int i = 0; i < gg.n; ++i) {
                num += gg.x(i) * d[i] * d[i];
                den += d[i] * d[i];
            }
            return num / den;
        };
        const double c0 = centroid(w.psi);
        auto w1 = run_oned(w, 1.0, c, cfg.cfl);
        const double speed = centroid(w1.psi) - c0;
        add_check(rep, "psi_speed_rel_err", std::abs(speed - sp.b) / sp.b,
                  cfg.tol_or("psi_speed_rel_err", 0.01));
        rep.invariants.emplace_back("psi_speed", speed);
        rep.invariants.emplace_back("b_phi0", sp.b);
    }
    // finite propagation speed
    {
        double amax = 0.0;
        for (double p : s1.phi) {
            const auto sp = one_d_speeds(p, c);
            amax = std::max(amax, std::max(sp.a, sp.b));
        }
        const double reach = 9.0 * eps + amax * cfg.horizon + 2.0 * cfg.grid.h();
        double leak = 0.0;
        for (int i = 0; i < cfg.grid.n; ++i)
            if (std::abs(cfg.grid.x(i)) > reach)
                leak = std::max(leak, std::abs(s1.phi[i] - cfg.phi0) + std::abs(s1.psi[i]));
        add_check(rep, "finite_propagation_leak", leak, 1e-10);
    }
    rep.invariants.emplace_back("energy_initial", e0);

    SeriesTable tbl;
    tbl.columns = {"x", "phi", "psi", "phi_t", "psi_t"};
    const int stride = std::max(1, cfg.grid.n / 1024);
    for (int i = 0; i < cfg.grid.n; i += stride)
        tbl.rows.push_back({cfg.grid.x(i), s1.phi[i], s1.psi[i], s1.phi_t[i], s1.psi_t[i]});
    rep.series.emplace("fields", std::move(tbl));
    return rep;
}

// ---------------------------------------------------------------------------
// twist-exact

RunReport run_twist_exact(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = scenario_name(cfg.scenario);
    CurveFn F = to_curve(cfg.profile_or("F", Profile::gaussian_bump(0.5, 0.0, 1.0)));
    const double Q = curve_q(F);
    CharBuildOptions opt;
    opt.quad_tol = 1e-12;
    auto smf = riccati_time_fn(-0.2, 1.0);
    auto sol = build_char_solution(F, smf, Q - 0.2, 2.0, opt);

    std::vector<double> errs1, errs2, hs;
    for (int n : cfg.resolutions) {
        const Grid1D g{-4.0, 4.0, n};
        const double h = g.h();
        const double t0 = 0.8, k = h;
        auto xs = g.nodes();
        auto mid = sol.sample_grid(xs, t0);
        auto fwd = sol.sample_grid(xs, t0 + k);
        auto bwd = sol.sample_grid(xs, t0 - k);
        std::vector<double> adv(n), u(n), v(n);
        for (int i = 0; i < n; ++i) {
            u[i] = mid[i].u;
            v[i] = mid[i].v;
        }
        auto vx = diff1(v, h);
        for (int i = 0; i < n; ++i) adv[i] = (fwd[i].v - bwd[i].v) / (2 * k) + u[i] * vx[i];
        auto r1 = diff1(adv, h);
        auto uxx = diff2(u, h);
        double e1 = 0.0, e2 = 0.0;
        for (int i = 4; i < n - 4; ++i) {
            e1 = std::max(e1, std::abs(r1[i]));
            e2 = std::max(e2, std::abs(uxx[i] - vx[i] * vx[i]));
        }
        errs1.push_back(e1);
        errs2.push_back(e2);
        hs.push_back(h);
        rep.convergence.push_back({h, std::max(e1, e2)});
    }
    const double p1 = fit_order(hs, errs1);
    const double p2 = fit_order(hs, errs2);
    rep.fitted_order = std::min(p1, p2);
    add_check(rep, "advection_order_dev", std::abs(p1 - 2.0), 0.2);
    add_check(rep, "poisson_order_dev", std::abs(p2 - 2.0), 0.2);

    double v0_err = 0.0;
    {
        const Grid1D g{-4.0, 4.0, 2048};
        auto xs = g.nodes();
        auto pts = sol.sample_grid(xs, 0.0);
        for (int i = 0; i < g.n; ++i)
            v0_err = std::max(v0_err, std::abs(pts[i].v - F.f(g.x(i))));
    }
    add_check(rep, "initial_profile_err", v0_err, cfg.tol_or("initial_profile_err", 1e-10));

    double tail_err = 0.0;
    for (double t : {0.3, 1.0, 1.7}) {
        auto left = sol.sample(-50.0, t);
        auto right = sol.sample(60.0, t);
        tail_err = std::max(tail_err, std::abs(left.u_x - sol.sigma_minus(t)));
        tail_err = std::max(tail_err, std::abs(right.u_x - sol.sigma_plus(t)));
    }
    add_check(rep, "boundary_slope_err", tail_err, cfg.tol_or("boundary_slope_err", 1e-8));

    SeriesTable tbl;
    tbl.columns = {"resolution", "h", "advection_residual", "poisson_residual"};
    for (std::size_t i = 0; i < hs.size(); ++i)
        tbl.rows.push_back(
            {static_cast<double>(cfg.resolutions[i]), hs[i], errs1[i], errs2[i]});
    rep.series.emplace("residuals", std::move(tbl));
    return rep;
}

// ---------------------------------------------------------------------------
// hs-verify

RunReport run_hs_verify(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = scenario_name(cfg.scenario);

    CurveFn F = to_curve(cfg.profile_or("F", Profile::gaussian_bump(0.5, 0.0, 1.0)));
    const double Q = curve_q(F);
    CharBuildOptions opt;
    opt.quad_tol = 1e-12;
    auto sol = build_char_solution(F, zero_time_fn(), Q, 2.0, opt);

    // Jacobi cyclic integrals for both operator kinds
    {
        const Grid1D g{-12.0, 12.0, 2001};
        Profile a = Profile::gaussian_bump(0.8, -1.5, 0.9);
        Profile b = Profile::gaussian_bump(-0.6, 0.4, 1.2);
        Profile d = Profile::gaussian_bump(0.5, 1.8, 0.7);
        for (MKind kind : {MKind::HS, MKind::CH}) {
            const double val = jacobi_cyclic_check(a, b, d, kind, g);
            double scale = 0.0;
            for (int i = 0; i < g.n; ++i) {
                const double x = g.x(i);
                auto mdx = [&](const Profile& pr) {
                    return kind == MKind::HS ? pr.d3(x) : pr.d3(x) - pr.d1(x);
                };
                scale += std::abs((b.value(x) * d.d1(x) - d.value(x) * b.d1(x)) * mdx(a) +
                                  (d.value(x) * a.d1(x) - a.value(x) * d.d1(x)) * mdx(b) +
                                  (a.value(x) * b.d1(x) - b.value(x) * a.d1(x)) * mdx(d)) *
                         g.h();
            }
            add_check(rep, kind == MKind::HS ? "jacobi_hs" : "jacobi_ch",
                      val / std::max(1.0, scale), cfg.tol_or("jacobi", 1e-8));
        }
    }
    // bi-Hamiltonian field agreement under refinement
    {
        Profile p = Profile::gaussian_bump(0.5, 0.0, 1.0);
        for (MKind kind : {MKind::HS, MKind::CH}) {
            const double half = kind == MKind::HS ? 8.0 : 20.0;
            std::vector<double> errs, hhs;
            for (int n : {513, 1025, 2049}) {
                const Grid1D g{-half, half, n};
                std::vector<double> v(g.n);
                for (int i = 0; i < g.n; ++i) v[i] = p.value(g.x(i));
                auto [f1, f2] = hamiltonian_vector_fields(v, kind, g);
                double e = 0.0;
                for (int i = 3; i < g.n - 3; ++i) e = std::max(e, std::abs(f1[i] - f2[i]));
                errs.push_back(e);
                hhs.push_back(g.h());
            }
            add_check(rep, kind == MKind::HS ? "biham_order_hs" : "biham_order_ch",
                      fit_order(hhs, errs), 1.8, false);
        }
    }
    // Lax residual: refinement order and corruption sensitivity
    {
        std::vector<double> errs, hhs;
        double clean = 0.0, corrupted = 0.0;
        for (int n : {128, 256, 512, 1024}) {
            const Grid1D g{-5.0, 7.0, n};
            auto xs = g.nodes();
            const double dt = g.h();
            auto a = sol.sample_grid(xs, 0.8);
            auto b = sol.sample_grid(xs, 0.8 + dt);
            std::vector<double> v1(n), u1(n), v2(n), u2(n), w(n);
            Profile wp = Profile::gaussian_bump(1.0, 0.5, 0.9);
            for (int i = 0; i < n; ++i) {
                v1[i] = a[i].v;
                u1[i] = a[i].u;
                v2[i] = b[i].v;
                u2[i] = b[i].u;
                w[i] = wp.value(g.x(i));
            }
            const double r = lax_residual(v1, u1, v2, u2, w, dt, g);
            errs.push_back(r);
            hhs.push_back(g.h());
            if (n == 1024) {
                clean = r;
                for (int i = 0; i < n; ++i) {
                    const double x = g.x(i);
                    u1[i] += 0.1 * x * x;
                    u2[i] += 0.1 * x * x;
                }
                corrupted = lax_residual(v1, u1, v2, u2, w, dt, g);
            }
        }
        add_check(rep, "lax_order", fit_order(hhs, errs), 1.8, false);
        add_check(rep, "lax_corruption_ratio", corrupted / std::max(clean, 1e-300), 10.0,
                  false);
    }
    // generalized-flow residual on exact slices: joint order
    {
        std::vector<double> errs, hhs;
        for (int n : {256, 512, 1024, 2048}) {
            const Grid1D g{-5.0, 5.0, n};
            auto xs = g.nodes();
            const double dt = g.h();
            auto a = sol.sample_grid(xs, 1.0);
            auto b = sol.sample_grid(xs, 1.0 + dt);
            std::vector<double> u1(n), u2(n);
            for (int i = 0; i < n; ++i) {
                u1[i] = a[i].u;
                u2[i] = b[i].u;
            }
            errs.push_back(genhs_residual(u1, u2, MKind::HS, dt, g));
            hhs.push_back(g.h());
        }
        add_check(rep, "genhs_order", fit_order(hhs, errs), 1.8, false);
    }
    // jump law (order in dt) and momentum flux law (joint h, dt refinement)
    {
        std::vector<double> jerrs, ferrs, dts;
        for (int n : {25, 50, 100}) {
            std::vector<double> t(n), j1(n), j2(n);
            for (int i = 0; i < n; ++i) {
                t[i] = 1.6 * i / (n - 1) + 0.1;
                const double sp = sol.sigma_plus(t[i]);
                j1[i] = sp;
                j2[i] = sp * sp;
            }
            jerrs.push_back(jump_condition_residual(t, j1, j2));
            const double dt = 1.6 / (n - 1);
            const Grid1D g{-6.0, 9.0, 1024 * n / 25};
            auto xs = g.nodes();
            auto P_of = [&](double tt) {
                auto pts = sol.sample_grid(xs, tt);
                std::vector<double> v(g.n);
                for (int i = 0; i < g.n; ++i) v[i] = pts[i].v;
                return momentum_P(v, g);
            };
            double worst = 0.0;
            for (double tt : {0.5, 1.0, 1.5}) {
                const double lhs = (P_of(tt + dt) - P_of(tt - dt)) / (2 * dt);
                const double sp = sol.sigma_plus(tt);
                worst = std::max(worst, std::abs(lhs + 0.5 * sp * sp));
            }
            ferrs.push_back(worst);
            dts.push_back(dt);
        }
        add_check(rep, "jump_law_order", fit_order(dts, jerrs), 1.8, false);
        add_check(rep, "flux_law_order", fit_order(dts, ferrs), 1.8, false);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// periodic

RunReport run_periodic(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = scenario_name(cfg.scenario);
    const ElasticConstants& c = cfg.elastic;

    auto orbit = meanfield_orbit(cfg.orbit_phi_init, cfg.orbit_phi_T_init, c);
    auto pc = period_constants(orbit, c);
    rep.invariants.emplace_back("orbit_period", orbit.period);
    rep.invariants.emplace_back("orbit_energy", orbit.E);
    rep.invariants.emplace_back("Lambda", pc.Lambda);
    rep.invariants.emplace_back("M", pc.M);
    rep.invariants.emplace_back("M_alt", pc.M_alt);
    add_check(rep, "m_forms_disagreement", std::abs(pc.M - pc.M_alt),
              cfg.tol_or("m_forms_disagreement", 1e-6) * std::max(1.0, std::abs(pc.M)));
    if (std::abs(pc.Lambda) > 1e-12)
        rep.invariants.emplace_back("mu_from_orbit", pc.mu());

    // orbit energy conservation
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < orbit.T.size(); ++i) {
            const double e =
                0.5 * orbit.phi_T[i] * orbit.phi_T[i] + one_d_speeds(orbit.phi[i], c).b;
            worst = std::max(worst, std::abs(e - orbit.E));
        }
        add_check(rep, "orbit_energy_drift", worst, cfg.tol_or("orbit_energy_drift", 1e-8));
    }

    const double mu = cfg.mu_override.value_or(8.0);
    const int n = std::min(cfg.grid.n, 4096);

    // conservation of <v_x^2> over one Klein-Gordon period of the
    // fundamental mode
    {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) {
            const double x = 2.0 * kPi * i / n;
            v[i] = 0.5 * std::sin(x) + 0.2 * std::cos(2 * x);
        }
        auto s = make_periodic_state(v, mu);
        const double q0 = mean_vx2(s.v);
        const double period = 2.0 * kPi * 1.0 / (std::abs(mu) * q0);
        const double t_end = std::min(period, 20.0);
        double qdev = 0.0;
        while (s.time < t_end - 1e-13) {
            double umax = 1e-12;
            for (double x : s.u) umax = std::max(umax, std::abs(x));
            const double dt =
                std::min({5e-3, 0.35 * (2.0 * kPi / n) / umax, t_end - s.time});
            s = periodic_step(s, dt);
            qdev = std::max(qdev, std::abs(mean_vx2(s.v) - q0) / q0);
        }
        add_check(rep, "q_conservation_drift", qdev,
                  cfg.tol_or("q_conservation_drift", 1e-6));
        rep.invariants.emplace_back("kg_period", period);
    }
    // linearized Klein-Gordon frequency of a small single mode
    {
        const double A = 0.05;
        const int k0 = 2;
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = A * std::sin(k0 * 2.0 * kPi * i / n);
        auto s = make_periodic_state(v, mu);
        const double q = mean_vx2(s.v);
        const double omega_lin = mu * q / k0;
        auto phase_of = [&](const PeriodicUVState& st) {
            double re = 0.0, im = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = 2.0 * kPi * i / n;
                re += st.v[i] * std::cos(k0 * x);
                im -= st.v[i] * std::sin(k0 * x);
            }
            return std::atan2(im, re);
        };
        const double T = 0.6 / std::abs(omega_lin);
        const double p0 = phase_of(s);
        while (s.time < T - 1e-13) {
            double umax = 1e-12;
            for (double x : s.u) umax = std::max(umax, std::abs(x));
            const double dt = std::min({5e-3, 0.35 * (2.0 * kPi / n) / umax, T - s.time});
            s = periodic_step(s, dt);
        }
        double dphi = phase_of(s) - p0;
        while (dphi > kPi) dphi -= 2 * kPi;
        while (dphi < -kPi) dphi += 2 * kPi;
        const double omega_meas = std::abs(dphi) / T;
        add_check(rep, "kg_frequency_rel_err",
                  std::abs(omega_meas - std::abs(omega_lin)) / std::abs(omega_lin),
                  cfg.tol_or("kg_frequency_rel_err", 0.05));
        rep.invariants.emplace_back("kg_frequency_predicted", std::abs(omega_lin));
        rep.invariants.emplace_back("kg_frequency_measured", omega_meas);
    }
    // the eliminated combination stays a function of time alone
    {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) {
            const double x = 2.0 * kPi * i / n;
            v[i] = 0.4 * std::sin(x) + 0.15 * std::sin(2 * x + 0.4);
        }
        auto s = make_periodic_state(v, 1.7);
        auto probe = nonintegrability_probe(s, 2e-4, 0.02);
        add_check(rep, "combination_residual", probe.combo_residual, 1e-4);
        add_check(rep, "probe_q_drift", probe.q_drift, 1e-8);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// polarized

RunReport run_polarized(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = scenario_name(cfg.scenario);
    const auto [mu, nu] = polarized_constants(cfg.elastic);
    rep.invariants.emplace_back("mu", mu);
    rep.invariants.emplace_back("nu", nu);

    // plane-polarized vector run against the scalar cubic solver
    {
        const Grid1D g{-6.0, 6.0, 601};
        CurveFn f1{[](double x) { return 0.7 + 0.2 * std::exp(-x * x); },
                   [](double x) { return -0.4 * x * std::exp(-x * x); }, -6.0, 6.0};
        auto sv = make_polarized_state(g, f1, to_curve(Profile::constant(0.0)), mu, nu);
        auto sc = make_cubic_state(g, f1, mu);
        const double dt = 1e-3;
        for (int k = 0; k < 100; ++k) {
            sv = polarized_step_vector(sv, dt);
            sc = cubic_hs_step(sc, dt);
        }
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i) {
            worst = std::max(worst, std::abs(sv.u1[i] - sc.u[i]));
            worst = std::max(worst, std::abs(sv.u2[i]));
        }
        add_check(rep, "plane_polarized_match", worst,
                  cfg.tol_or("plane_polarized_match", 1e-10));
    }
    // component identity on random polynomial fields
    {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> ud(-1.0, 1.0);
        double worst_rel = 0.0;
        for (int trial = 0; trial < 40; ++trial) {
            Vec3 n0 = rand_unit(rng);
            Vec3 seed = std::abs(n0[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            Vec3 e1{};
            const double ds = dot(seed, n0);
            for (int d = 0; d < 3; ++d) e1[d] = seed[d] - ds * n0[d];
            const double e1n = norm(e1);
            for (auto& x : e1) x /= e1n;
            const Vec3 e2 = cross(n0, e1);
            double pa[5], pb[5];
            for (int k = 0; k < 5; ++k) {
                pa[k] = ud(rng);
                pb[k] = ud(rng);
            }
            auto poly = [](const double* cc, double th) {
                return cc[0] + th * (cc[1] + th * (cc[2] + th * (cc[3] + th * cc[4])));
            };
            auto dpoly = [](const double* cc, double th) {
                return cc[1] + th * (2 * cc[2] + th * (3 * cc[3] + th * 4 * cc[4]));
            };
            auto ddpoly = [](const double* cc, double th) {
                return 2 * cc[2] + th * (6 * cc[3] + th * 12 * cc[4]);
            };
            const int m = 25;
            std::vector<std::array<double, 3>> u(m), ut(m), utt(m);
            double scale = 1.0;
            for (int i = 0; i < m; ++i) {
                const double th = -1.0 + 2.0 * i / (m - 1);
                const double a = poly(pa, th), b = poly(pb, th);
                const double da = dpoly(pa, th), db = dpoly(pb, th);
                const double dda = ddpoly(pa, th), ddb = ddpoly(pb, th);
                for (int d = 0; d < 3; ++d) {
                    u[i][d] = a * e1[d] + b * e2[d];
                    ut[i][d] = da * e1[d] + db * e2[d];
                    utt[i][d] = dda * e1[d] + ddb * e2[d];
                }
                scale = std::max({scale, std::abs(a), std::abs(b)});
            }
            const double r = a4_identity_check(u, ut, utt, n0);
            worst_rel = std::max(worst_rel, r / (scale * scale * scale));
        }
        add_check(rep, "component_identity_residual", worst_rel,
                  cfg.tol_or("component_identity_residual", 1e-10));
    }
    // polar/Cartesian cross-validation where the radius is safely positive
    {
        const Grid1D g{-6.0, 6.0, 1601};
        CurveFn fu{[](double x) { return 0.8 + 0.15 * std::exp(-x * x); },
                   [](double x) { return -0.3 * x * std::exp(-x * x); }, -6.0, 6.0};
        Profile pv = Profile::gaussian_bump(0.2, 0.3, 1.1);
        PolarState sp;
        sp.grid = g;
        sp.mu = mu;
        sp.nu = nu;
        sp.u.resize(g.n);
        sp.v.resize(g.n);
        for (int i = 0; i < g.n; ++i) {
            sp.u[i] = fu.f(g.x(i));
            sp.v[i] = pv.value(g.x(i));
        }
        CurveFn c1{[&](double x) { return fu.f(x) * std::cos(pv.value(x)); },
                   [&](double x) {
                       return fu.df(x) * std::cos(pv.value(x)) -
                              fu.f(x) * std::sin(pv.value(x)) * pv.d1(x);
                   },
                   -6.0, 6.0};
        CurveFn c2{[&](double x) { return fu.f(x) * std::sin(pv.value(x)); },
                   [&](double x) {
                       return fu.df(x) * std::sin(pv.value(x)) +
                              fu.f(x) * std::cos(pv.value(x)) * pv.d1(x);
                   },
                   -6.0, 6.0};
        auto sv = make_polarized_state(g, c1, c2, mu, nu);
        const double t_end = 0.25;
        const double speed = std::max({std::abs(mu), std::abs(nu), 1e-12});
        while (sp.time < t_end - 1e-13) {
            double uu = 1e-12;
            for (double x : sp.u) uu = std::max(uu, x * x);
            sp = polarized_step_polar(sp,
                                      std::min(0.3 * g.h() / (speed * uu), t_end - sp.time));
        }
        while (sv.time < t_end - 1e-13) {
            double uu = 1e-12;
            for (std::size_t i = 0; i < sv.u1.size(); ++i)
                uu = std::max(uu, sv.u1[i] * sv.u1[i] + sv.u2[i] * sv.u2[i]);
            sv = polarized_step_vector(
                sv, std::min(0.3 * g.h() / (speed * uu), t_end - sv.time));
        }
        double worst = 0.0;
        for (int i = 4; i < g.n - 4; ++i) {
            const double ur = std::hypot(sv.u1[i], sv.u2[i]);
            if (ur > 0.1) worst = std::max(worst, std::abs(ur - sp.u[i]));
        }
        add_check(rep, "polar_cartesian_agreement", worst, 2e-4);
    }
    return rep;
}

} // namespace

// ---------------------------------------------------------------------------
// match-fast-twist (the flagship matched-asymptotics experiment)

RunReport run_match_fast_twist(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = scenario_name(Scenario::MatchFastTwist);
    const ElasticConstants& c = cfg.elastic;
    if (!(c.alpha < c.beta))
        throw ValidationError("fast twist waves require alpha < beta");
    const double phi0 = cfg.phi0;
    const auto sp = one_d_speeds(phi0, c);
    const double b0 = sp.b, bp0 = sp.b_prime;
    const double kappa = sp.q * sp.q * sp.b * sp.b_prime / (sp.a * sp.a - sp.b * sp.b);
    const double lambda = bp0 * kappa; // negative for fast twist
    rep.invariants.emplace_back("b0", b0);
    rep.invariants.emplace_back("b0_prime", bp0);
    rep.invariants.emplace_back("kappa", kappa);
    rep.invariants.emplace_back("lambda_1d", lambda);

    const Profile f = cfg.profile_or("f", Profile::gaussian_bump(1.0, 0.0, 1.0));
    const Profile g = cfg.profile_or("g", Profile::constant(0.0));
    const double T = cfg.horizon;

    // initial layer and the inner characteristic solutions (eps-independent)
    const Grid1D theta_grid{-12.0, 12.0, 8001};
    auto layer = initial_layer(f, g, b0, theta_grid);
    CurveFn FR = layer.curve_R();
    CurveFn FL = layer.curve_L();
    const double QR = curve_q(FR), QL = curve_q(FL);
    const double sigma_R0 = -kappa * QR;
    const double sigma_L0 = kappa * QL;
    rep.invariants.emplace_back("sigma_R0", sigma_R0);
    rep.invariants.emplace_back("sigma_L0", sigma_L0);
    // sigma_R0 b0' >= 0: the boundary Riccati never blows up for fast twist
    add_check(rep, "riccati_no_blowup_sign", sigma_R0 * bp0, -1e-15, false);

    CharBuildOptions opt;
    opt.quad_tol = 1e-12;
    // right-moving wave: sigma_+ = 0 ahead, inner time runs backward
    auto inner_R =
        build_char_solution(FR, riccati_time_fn(-QR, 1.0), 0.0, lambda * T * 1.05, opt);
    // left-moving wave: sigma_- = 0 ahead (theta -> -inf), inner time forward
    auto inner_L = build_char_solution(FL, zero_time_fn(), QL, -lambda * T * 1.05, opt);

    // effective support: where the slope mass of the inner profile lives
    auto support_range = [](const CharSolution& sol) {
        const double dq = sol.eta_plus - sol.eta_minus;
        std::size_t lo = 0, hi = sol.eta.size() - 1;
        while (lo + 1 < sol.eta.size() && sol.eta[lo] - sol.eta_minus < 1e-9 * dq) ++lo;
        while (hi > 0 && sol.eta_plus - sol.eta[hi] < 1e-9 * dq) --hi;
        return std::pair<std::size_t, std::size_t>(lo, hi);
    };
    const auto [iRlo, iRhi] = support_range(inner_R);
    const auto [iLlo, iLhi] = support_range(inner_L);

    // overlap region needs eps * theta << b0 t: measure in the later half
    const std::vector<double> sample_times{0.5 * T, 0.65 * T, 0.8 * T, T};

    SeriesTable track;
    track.columns = {"epsilon", "t", "slope_measured", "sigma_R", "x_measure"};
    SeriesTable comp;
    comp.columns = {"epsilon", "max_phi_discrepancy_right", "max_phi_discrepancy_left",
                    "slope_err"};

    const double eps_min = *std::min_element(cfg.epsilons.begin(), cfg.epsilons.end());
    const std::size_t neps = cfg.epsilons.size();
    std::vector<double> slope_errs(neps), comp_errs_R(neps), comp_errs_L(neps);
    std::vector<std::vector<std::array<double, 5>>> track_rows(neps);

    parallel_for(static_cast<int>(neps), [&](int lo_i, int hi_i) {
        for (int ei = lo_i; ei < hi_i; ++ei) {
            const double eps = cfg.epsilons[ei];
            // the twist width scales with eps; so does the grid needed for it
            int n = static_cast<int>(std::lround(cfg.grid.n * (eps_min / eps)));
            n = std::max(2048, (n / 1024) * 1024);
            const Grid1D grid{cfg.grid.x_min, cfg.grid.x_max, n};
            auto state = twist_ic(eps, phi0, f, g, grid, c);
            double slope_err = 0.0, comp_err_R = 0.0, comp_err_L = 0.0;

            for (double t_j : sample_times) {
                double amax = 0.0;
                for (double p : state.phi) {
                    const auto s2 = one_d_speeds(p, c);
                    amax = std::max(amax, std::max(s2.a, s2.b));
                }
                const double dt0 = cfg.cfl * grid.h() / amax;
                while (state.time < t_j - 1e-13)
                    state = step(state, std::min(dt0, t_j - state.time), c);

                // measured outer slope just behind the right twist wave
                const double tp = lambda * t_j; // inner time
                auto slice = inner_R.slice(tp);
                auto Xtab = inner_R.x_table(slice);
                const double theta_left = Xtab[iRlo] - 2.0;
                const double x_meas = b0 * t_j + eps * theta_left;
                const int i0 =
                    static_cast<int>(std::round((x_meas - grid.x_min) / grid.h()));
                const double phix =
                    (state.phi[i0 + 1] - state.phi[i0 - 1]) / (2.0 * grid.h());
                const double sigR = riccati_sigma(sigma_R0, bp0, t_j);
                slope_err = std::max(slope_err, std::abs(phix - sigR));
                track_rows[ei].push_back({eps, t_j, phix, sigR, x_meas});

                // composite solution across the inner regions
                const double u_tail_R = inner_R.sample(Xtab[iRhi] + 5.0, tp).u;
                for (int m = 0; m <= 120; ++m) {
                    const double theta = (Xtab[iRlo] - 3.0) +
                                         (Xtab[iRhi] + 3.0 - Xtab[iRlo]) * m / 120.0;
                    const double x = b0 * t_j + eps * theta;
                    auto pt = inner_R.sample(theta, tp);
                    const double phi_comp = phi0 + eps * kappa * (pt.u - u_tail_R);
                    const double phi_num = lerp(grid, state.phi, x);
                    comp_err_R = std::max(comp_err_R, std::abs(phi_num - phi_comp));
                }
                const double tpl = -lambda * t_j;
                auto sliceL = inner_L.slice(tpl);
                auto XtabL = inner_L.x_table(sliceL);
                const double u_tail_L = inner_L.sample(XtabL[iLlo] - 5.0, tpl).u;
                for (int m = 0; m <= 120; ++m) {
                    const double theta = (XtabL[iLlo] - 3.0) +
                                         (XtabL[iLhi] + 3.0 - XtabL[iLlo]) * m / 120.0;
                    const double x = -b0 * t_j + eps * theta;
                    auto pt = inner_L.sample(theta, tpl);
                    const double phi_comp = phi0 + eps * kappa * (pt.u - u_tail_L);
                    const double phi_num = lerp(grid, state.phi, x);
                    comp_err_L = std::max(comp_err_L, std::abs(phi_num - phi_comp));
                }
            }
            slope_errs[ei] = slope_err;
            comp_errs_R[ei] = comp_err_R;
            comp_errs_L[ei] = comp_err_L;
        }
    });

    std::vector<double> comp_errs, eps_list;
    for (std::size_t ei = 0; ei < neps; ++ei) {
        for (const auto& row : track_rows[ei])
            track.rows.push_back({row[0], row[1], row[2], row[3], row[4]});
        comp_errs.push_back(std::max(comp_errs_R[ei], comp_errs_L[ei]));
        eps_list.push_back(cfg.epsilons[ei]);
        comp.rows.push_back({cfg.epsilons[ei], comp_errs_R[ei], comp_errs_L[ei],
                             slope_errs[ei]});
        rep.convergence.push_back({cfg.epsilons[ei], slope_errs[ei]});
    }

    // the measured slope error must decrease strictly with eps
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i + 1 < slope_errs.size(); ++i)
        worst_ratio = std::max(worst_ratio, slope_errs[i + 1] / slope_errs[i]);
    add_check(rep, "slope_err_monotone_ratio", worst_ratio, 1.0);
    if (eps_list.size() >= 3) {
        rep.fitted_order = fit_order(eps_list, slope_errs);
        rep.invariants.emplace_back("slope_err_eps_order", *rep.fitted_order);
        rep.invariants.emplace_back("composite_err_eps_order",
                                    fit_order(eps_list, comp_errs));
    }
    rep.series.emplace("slope_tracking", std::move(track));
    rep.series.emplace("composite", std::move(comp));
    return rep;
}

RunReport run_convergence(const ScenarioConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::TwistExact: return run_twist_exact(cfg);
        case Scenario::MatchFastTwist: return run_match_fast_twist(cfg);
        case Scenario::Solve1D: {
            RunReport rep;
            rep.scenario = "solve1d";
            const Profile f = cfg.profile_or("f", Profile::gaussian_bump(1.0, 0.0, 1.0));
            const Profile g = cfg.profile_or("g", Profile::constant(0.0));
            std::vector<double> drifts, dts;
            for (double cfl : {cfg.cfl, 0.5 * cfg.cfl, 0.25 * cfg.cfl}) {
                auto s =
                    twist_ic(cfg.epsilons.front(), cfg.phi0, f, g, cfg.grid, cfg.elastic);
                const double e0 = energy(s, cfg.elastic);
                auto s1 = run_oned(s, cfg.horizon, cfg.elastic, cfl);
                drifts.push_back(std::abs(energy(s1, cfg.elastic) - e0) / e0);
                dts.push_back(cfl);
                rep.convergence.push_back({cfl, drifts.back()});
            }
            rep.fitted_order = fit_order(dts, drifts);
            add_check(rep, "drift_order", *rep.fitted_order, 1.6, false);
            return rep;
        }
        default:
            throw ValidationError("no convergence study defined for this scenario");
    }
}

RunReport run_scenario(const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunReport rep;
    switch (cfg.scenario) {
        case Scenario::Dispersion: rep = run_dispersion(cfg); break;
        case Scenario::Solve1D: rep = run_solve1d(cfg); break;
        case Scenario::TwistExact: rep = run_twist_exact(cfg); break;
        case Scenario::MatchFastTwist: rep = run_match_fast_twist(cfg); break;
        case Scenario::HsVerify: rep = run_hs_verify(cfg); break;
        case Scenario::Periodic: rep = run_periodic(cfg); break;
        case Scenario::Polarized: rep = run_polarized(cfg); break;
    }
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace orientwave
