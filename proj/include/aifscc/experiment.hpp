#pragma once

// Experiment harness: JSON configuration, the single-run / policy-comparison /
// alpha-sweep experiments, and their CSV, JSON and gnuplot outputs.
//
// Every output is a pure function of (config, seeds): floats are written with
// 17 significant digits and no timestamps or host data are embedded.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "aifscc/closed_loop_sim.hpp"

namespace aifscc {

inline constexpr const char* kCsvVersionTag = "# aif-scc v1";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct ExperimentConfig {
    EpisodeConfig episode;
    std::vector<std::uint64_t> compare_seeds;
    std::vector<double> sweep_alphas{1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
    std::vector<std::uint64_t> sweep_seeds;
    std::string output_dir;
    unsigned threads = 1;

    ExperimentConfig() {
        compare_seeds.resize(20);
        std::iota(compare_seeds.begin(), compare_seeds.end(), std::uint64_t{1});
        sweep_seeds = compare_seeds;
    }
};

/// One-for-one command-line overrides of config keys.
struct Overrides {
    std::optional<std::string> policy;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<std::size_t> horizon;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
};

// ---------------------------------------------------------------------------
// Formatting

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Config <-> JSON

namespace detail {

using nlohmann::json;

template <std::size_t N>
std::array<double, N> read_array(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != N) {
        throw ConfigError(std::string("config key '") + key + "' must be an array of " + std::to_string(N) +
                          " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = v[i].get<double>();
    return out;
}

inline Vec4 to_vec4(const std::array<double, 4>& a) { return Vec4(a[0], a[1], a[2], a[3]); }

inline json diag_json(const Eigen::MatrixXd& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(m(i, i));
    return a;
}

inline json vec_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "dt", "q_diag", "K", "bandwidth_hz", "gamma", "sigma_theta_sq", "c",
        "q_goal_diag", "r_goal_diag", "alpha", "beta",
        "traj_amplitude", "traj_velocity_amplitude", "traj_frequency", "traj_offset", "traj_omega", "traj_psi0",
        "policy", "horizon", "seed", "initial_state", "initial_belief_mean", "initial_belief_cov_diag",
        "initial_k", "compare_seeds", "sweep_alphas", "sweep_seeds", "output_dir", "threads"};
    return keys;
}

}  // namespace detail

/// Parses a flat JSON object. Absent keys keep their defaults; unknown keys are rejected.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    using detail::read_array;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        const auto& keys = detail::known_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    ExperimentConfig cfg;
    EpisodeConfig& ep = cfg.episode;
    try {
        const double dt = j.value("dt", 0.1);
        const auto q = j.contains("q_diag") ? read_array<4>(j, "q_diag") : std::array<double, 4>{1e-2, 1e-3, 1e-2, 1e-3};
        ep.model = make_model(dt, q);

        ep.sensing.K = j.value("K", ep.sensing.K);
        ep.sensing.bandwidth_hz = j.value("bandwidth_hz", ep.sensing.bandwidth_hz);
        ep.sensing.gamma = j.value("gamma", ep.sensing.gamma);
        ep.sensing.sigma_theta_sq = j.value("sigma_theta_sq", ep.sensing.sigma_theta_sq);
        ep.sensing.c = j.value("c", ep.sensing.c);

        if (j.contains("q_goal_diag")) ep.goals.Q_goal = detail::to_vec4(read_array<4>(j, "q_goal_diag")).asDiagonal();
        if (j.contains("r_goal_diag")) {
            const auto r = read_array<2>(j, "r_goal_diag");
            ep.goals.R_goal = Vec2(r[0], r[1]).asDiagonal();
        }
        ep.goals.alpha = j.value("alpha", ep.goals.alpha);
        ep.goals.beta = j.value("beta", ep.goals.beta);
        TrajectoryParams& tr = ep.goals.traj;
        tr.amplitude = j.value("traj_amplitude", tr.amplitude);
        tr.velocity_amplitude = j.value("traj_velocity_amplitude", tr.velocity_amplitude);
        tr.frequency = j.value("traj_frequency", tr.frequency);
        tr.offset = j.value("traj_offset", tr.offset);
        tr.omega = j.value("traj_omega", tr.omega);
        tr.psi0 = j.value("traj_psi0", tr.psi0);

        const std::string policy = j.value("policy", std::string("aif"));
        const auto kind = parse_policy(policy);
        if (!kind) throw ConfigError("unknown policy '" + policy + "'");
        ep.policy = *kind;
        ep.horizon_steps = j.value("horizon", ep.horizon_steps);
        ep.seed = j.value("seed", ep.seed);

        if (j.contains("initial_state")) ep.initial_state = UavState::from(detail::to_vec4(read_array<4>(j, "initial_state")));
        ep.initial_belief.mean = j.contains("initial_belief_mean")
                                     ? detail::to_vec4(read_array<4>(j, "initial_belief_mean"))
                                     : ep.initial_state.vec();
        if (j.contains("initial_belief_cov_diag")) {
            ep.initial_belief.cov = detail::to_vec4(read_array<4>(j, "initial_belief_cov_diag")).asDiagonal();
        }
        ep.initial_k = j.value("initial_k", ep.sensing.K);

        if (j.contains("compare_seeds")) cfg.compare_seeds = j.at("compare_seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("sweep_alphas")) cfg.sweep_alphas = j.at("sweep_alphas").get<std::vector<double>>();
        if (j.contains("sweep_seeds")) cfg.sweep_seeds = j.at("sweep_seeds").get<std::vector<std::uint64_t>>();
        cfg.output_dir = j.value("output_dir", std::string());
        cfg.threads = j.value("threads", 1u);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const NonPositiveError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

/// Echo of everything that determines results. output_dir and threads are
/// omitted so that outputs do not depend on where or how wide a run executes.
inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    using nlohmann::json;
    const EpisodeConfig& ep = cfg.episode;
    json j;
    j["dt"] = ep.model.dt;
    j["q_diag"] = detail::diag_json(ep.model.Q);
    j["K"] = ep.sensing.K;
    j["bandwidth_hz"] = ep.sensing.bandwidth_hz;
    j["gamma"] = ep.sensing.gamma;
    j["sigma_theta_sq"] = ep.sensing.sigma_theta_sq;
    j["c"] = ep.sensing.c;
    j["q_goal_diag"] = detail::diag_json(ep.goals.Q_goal);
    j["r_goal_diag"] = detail::diag_json(ep.goals.R_goal);
    j["alpha"] = ep.goals.alpha;
    j["beta"] = ep.goals.beta;
    j["traj_amplitude"] = ep.goals.traj.amplitude;
    j["traj_velocity_amplitude"] = ep.goals.traj.velocity_amplitude;
    j["traj_frequency"] = ep.goals.traj.frequency;
    j["traj_offset"] = ep.goals.traj.offset;
    j["traj_omega"] = ep.goals.traj.omega;
    j["traj_psi0"] = ep.goals.traj.psi0;
    j["policy"] = std::string(to_string(ep.policy));
    j["horizon"] = ep.horizon_steps;
    j["seed"] = ep.seed;
    j["initial_state"] = detail::vec_json(ep.initial_state.vec());
    j["initial_belief_mean"] = detail::vec_json(ep.initial_belief.mean);
    j["initial_belief_cov_diag"] = detail::diag_json(ep.initial_belief.cov);
    j["initial_k"] = ep.initial_k;
    j["compare_seeds"] = cfg.compare_seeds;
    j["sweep_alphas"] = cfg.sweep_alphas;
    j["sweep_seeds"] = cfg.sweep_seeds;
    return j;
}

/// Reads and parses a config file. Throws ConfigError when the file is missing or malformed.
inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse config file '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

/// Applies overrides and resolves the output directory
/// (override, then config, then $AIF_SCC_OUT, then the working directory).
inline void apply_overrides(ExperimentConfig& cfg, const Overrides& o) {
    EpisodeConfig& ep = cfg.episode;
    if (o.policy) {
        const auto kind = parse_policy(*o.policy);
        if (!kind) throw ConfigError("unknown policy '" + *o.policy + "'");
        ep.policy = *kind;
    }
    if (o.seed) ep.seed = *o.seed;
    if (o.alpha) ep.goals.alpha = *o.alpha;
    if (o.gamma) ep.sensing.gamma = *o.gamma;
    if (o.horizon) ep.horizon_steps = *o.horizon;
    if (o.out) cfg.output_dir = *o.out;
    if (o.threads) cfg.threads = *o.threads;
    if (cfg.output_dir.empty()) {
        const char* env = std::getenv("AIF_SCC_OUT");
        cfg.output_dir = env && *env ? env : ".";
    }
}

inline void validate_episode_config(const EpisodeConfig& ep) {
    try {
        ep.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

// ---------------------------------------------------------------------------
// Statistics

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) throw EmptySequenceError("mean_of: empty");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Ranks starting at 1; tied values share their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t m = i; m <= j; ++m) ranks[idx[m]] = r;
        i = j + 1;
    }
    return ranks;
}

/// Spearman rank correlation (Pearson correlation of average ranks).
inline double spearman_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) throw ConfigError("spearman_correlation: need two equal-length series");
    const std::vector<double> ra = average_ranks(a), rb = average_ranks(b);
    const double ma = mean_of(ra), mb = mean_of(rb);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

inline double mean_k_used(const EpisodeLog& log) {
    double s = 0.0;
    for (const StepRecord& r : log.records) s += r.k_used;
    return s / static_cast<double>(log.records.size());
}

// ---------------------------------------------------------------------------
// Writers

inline void write_header(std::ostream& os, const ExperimentConfig& cfg) {
    os << kCsvVersionTag << '\n';
    os << "# config: " << config_to_json(cfg).dump() << '\n';
}

inline void write_episode_csv(std::ostream& os, const EpisodeLog& log, const ExperimentConfig& cfg) {
    write_header(os, cfg);
    os << "t,time_s,true_rho,true_psi,true_vrho,true_omega,des_rho,des_psi,des_vrho,des_omega,"
          "est_rho,est_psi,est_vrho,est_omega,cov_trace,y_r,y_theta,k,u_arho,u_aomega,j_control,j_sensing\n";
    for (const StepRecord& r : log.records) {
        const auto f = fmt_double;
        os << r.t << ',' << f(r.time_s) << ',' << f(r.x_true.rho) << ',' << f(r.x_true.psi) << ','
           << f(r.x_true.v_rho) << ',' << f(r.x_true.omega) << ',' << f(r.x_desired.rho) << ','
           << f(r.x_desired.psi) << ',' << f(r.x_desired.v_rho) << ',' << f(r.x_desired.omega) << ','
           << f(r.belief_mean(0)) << ',' << f(r.belief_mean(1)) << ',' << f(r.belief_mean(2)) << ','
           << f(r.belief_mean(3)) << ',' << f(r.belief_cov_trace) << ',' << f(r.y.r_meas) << ','
           << f(r.y.theta_meas) << ',' << r.k_used << ',' << f(r.u.a_rho) << ',' << f(r.u.a_omega) << ','
           << f(r.costs.j_control) << ',' << f(r.costs.j_sensing) << '\n';
    }
}

inline nlohmann::json summary_json(const EpisodeLog& log, const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["format"] = "aif-scc v1";
    j["policy"] = std::string(to_string(log.config_echo.policy));
    j["seed"] = log.config_echo.seed;
    j["steps"] = log.records.size();
    j["totals"] = {{"control", log.totals.control}, {"sensing", log.totals.sensing}, {"total", log.totals.total}};
    j["k_star"] = select_sensing(log.config_echo.goals, log.config_echo.sensing).value();
    j["config"] = config_to_json(cfg);
    return j;
}

struct PolicySummary {
    PolicyKind policy;
    std::vector<std::uint64_t> seeds;
    std::vector<EpisodeLog> logs;
    CostTotals mean;
    std::size_t failures = 0;
};

inline CostTotals mean_totals(const std::vector<EpisodeLog>& logs) {
    CostTotals m;
    std::size_t n = 0;
    for (const EpisodeLog& l : logs) {
        if (l.failure) continue;
        m.control += l.totals.control;
        m.sensing += l.totals.sensing;
        m.total += l.totals.total;
        ++n;
    }
    if (n == 0) {
        const double nan = std::nan("");
        return {nan, nan, nan};
    }
    const double d = static_cast<double>(n);
    return {m.control / d, m.sensing / d, m.total / d};
}

inline void write_compare_csv(std::ostream& os, const std::vector<PolicySummary>& rows, const ExperimentConfig& cfg) {
    write_header(os, cfg);
    os << "policy,seed,status,control_cost,sensing_cost,total_cost\n";
    for (const PolicySummary& p : rows) {
        const std::string name(to_string(p.policy));
        for (std::size_t i = 0; i < p.logs.size(); ++i) {
            const EpisodeLog& l = p.logs[i];
            os << name << ',' << p.seeds[i] << ',' << (l.failure ? "failed" : "ok") << ','
               << fmt_double(l.failure ? std::nan("") : l.totals.control) << ','
               << fmt_double(l.failure ? std::nan("") : l.totals.sensing) << ','
               << fmt_double(l.failure ? std::nan("") : l.totals.total) << '\n';
        }
        os << name << ",mean," << (p.failures ? "partial" : "ok") << ',' << fmt_double(p.mean.control) << ','
           << fmt_double(p.mean.sensing) << ',' << fmt_double(p.mean.total) << '\n';
    }
}

struct SweepRow {
    double alpha = 0.0;
    double mean_k = 0.0;
    double mean_control = 0.0;
    double mean_sensing = 0.0;
    double mean_total = 0.0;
    std::size_t failures = 0;
};

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const ExperimentConfig& cfg) {
    write_header(os, cfg);
    os << "alpha,mean_k,mean_control_cost,mean_sensing_cost,mean_total\n";
    for (const SweepRow& r : rows) {
        os << fmt_double(r.alpha) << ',' << fmt_double(r.mean_k) << ',' << fmt_double(r.mean_control) << ','
           << fmt_double(r.mean_sensing) << ',' << fmt_double(r.mean_total) << '\n';
    }
}

inline void write_tradeoff_plot(std::ostream& os) {
    os << "# gnuplot script: control cost vs sensing cost across the alpha sweep\n"
          "# usage: gnuplot plot_tradeoff.gp  (reads sweep.csv from the working directory)\n"
          "set datafile separator ','\n"
          "set datafile commentschars '#'\n"
          "set key off\n"
          "set grid\n"
          "set xlabel 'mean sensing cost'\n"
          "set ylabel 'mean control cost'\n"
          "set title 'Control / sensing cost trade-off'\n"
          "set terminal pngcairo size 800,600\n"
          "set output 'tradeoff.png'\n"
          "plot 'sweep.csv' every ::1 using 4:3 with linespoints pt 7, \\\n"
          "     '' every ::1 using 4:3:(sprintf('a=%g', $1)) with labels offset 1,1 font ',8'\n";
}

// ---------------------------------------------------------------------------
// Experiments

inline PolicySummary run_policy(const ExperimentConfig& cfg, PolicyKind policy, const std::vector<std::uint64_t>& seeds) {
    EpisodeConfig ep = cfg.episode;
    ep.policy = policy;
    PolicySummary s{policy, seeds, run_batch(ep, seeds, cfg.threads), {}, 0};
    s.failures = static_cast<std::size_t>(
        std::count_if(s.logs.begin(), s.logs.end(), [](const EpisodeLog& l) { return l.failure.has_value(); }));
    s.mean = mean_totals(s.logs);
    return s;
}

inline std::vector<PolicySummary> run_compare(const ExperimentConfig& cfg) {
    if (cfg.compare_seeds.empty()) throw ConfigError("compare_seeds must not be empty");
    std::vector<PolicySummary> out;
    for (PolicyKind p : {PolicyKind::Aif, PolicyKind::GreedyControl, PolicyKind::RandomSensing}) {
        out.push_back(run_policy(cfg, p, cfg.compare_seeds));
    }
    return out;
}

inline void validate_sweep(const ExperimentConfig& cfg) {
    if (cfg.sweep_alphas.empty()) throw ConfigError("sweep_alphas must not be empty");
    if (cfg.sweep_seeds.empty()) throw ConfigError("sweep_seeds must not be empty");
    for (std::size_t i = 0; i < cfg.sweep_alphas.size(); ++i) {
        if (!(cfg.sweep_alphas[i] > 0.0)) throw ConfigError("sweep_alphas must be strictly positive");
        if (i > 0 && !(cfg.sweep_alphas[i] > cfg.sweep_alphas[i - 1])) {
            throw ConfigError("sweep_alphas must be sorted ascending");
        }
    }
}

inline std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    validate_sweep(cfg);
    std::vector<SweepRow> rows;
    for (double alpha : cfg.sweep_alphas) {
        ExperimentConfig c = cfg;
        c.episode.goals.alpha = alpha;
        const PolicySummary s = run_policy(c, PolicyKind::Aif, cfg.sweep_seeds);
        SweepRow row{alpha, 0.0, s.mean.control, s.mean.sensing, s.mean.total, s.failures};
        std::size_t n = 0;
        for (const EpisodeLog& l : s.logs) {
            if (l.failure) continue;
            row.mean_k += mean_k_used(l);
            ++n;
        }
        row.mean_k = n ? row.mean_k / static_cast<double>(n) : std::nan("");
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& config_path, const Overrides& o) {
    ExperimentConfig cfg = config_path ? load_config(*config_path) : ExperimentConfig{};
    apply_overrides(cfg, o);
    validate_episode_config(cfg.episode);
    return cfg;
}

inline std::ofstream open_output(const std::filesystem::path& dir, const char* name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + (dir / name).string() + "'");
    return os;
}

inline void print_totals_row(std::ostream& os, const std::string& name, const CostTotals& t) {
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %14.4e %14.4e %14.4e\n", name.c_str(), t.control, t.sensing, t.total);
    os << line;
}

inline void print_totals_header(std::ostream& os) {
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %14s %14s %14s\n", "method", "control", "sensing", "total J");
    os << line;
}

}  // namespace detail

/// Single episode; writes episode.csv and summary.json.
inline int cmd_run(const std::optional<std::filesystem::path>& config_path, const Overrides& overrides,
                   std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    ExperimentConfig cfg;
    try {
        cfg = detail::resolve_config(config_path, overrides);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    EpisodeLog log;
    try {
        log = run_episode(cfg.episode);
    } catch (const EpisodeAbort& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }

    try {
        const std::filesystem::path dir(cfg.output_dir);
        std::filesystem::create_directories(dir);
        auto csv = detail::open_output(dir, "episode.csv");
        write_episode_csv(csv, log, cfg);
        auto js = detail::open_output(dir, "summary.json");
        js << summary_json(log, cfg).dump(2) << '\n';
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return kExitConfig;
    }

    detail::print_totals_header(out);
    detail::print_totals_row(out, std::string(to_string(cfg.episode.policy)), log.totals);
    return kExitOk;
}

/// All three policies over compare_seeds with paired noise; writes compare.csv.
inline int cmd_compare(const std::optional<std::filesystem::path>& config_path, const Overrides& overrides,
                       std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    ExperimentConfig cfg;
    try {
        cfg = detail::resolve_config(config_path, overrides);
        if (cfg.compare_seeds.empty()) throw ConfigError("compare_seeds must not be empty");
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    const std::vector<PolicySummary> rows = run_compare(cfg);
    try {
        const std::filesystem::path dir(cfg.output_dir);
        std::filesystem::create_directories(dir);
        auto csv = detail::open_output(dir, "compare.csv");
        write_compare_csv(csv, rows, cfg);
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return kExitConfig;
    }

    out << "mean over " << cfg.compare_seeds.size() << " seeds\n";
    detail::print_totals_header(out);
    std::size_t failures = 0;
    for (const PolicySummary& p : rows) {
        detail::print_totals_row(out, std::string(to_string(p.policy)), p.mean);
        failures += p.failures;
        for (std::size_t i = 0; i < p.logs.size(); ++i) {
            if (p.logs[i].failure) err << "numerical error (seed " << p.seeds[i] << "): " << *p.logs[i].failure << '\n';
        }
    }
    return failures ? kExitNumerical : kExitOk;
}

/// AIF over sweep_seeds for each alpha; writes sweep.csv and plot_tradeoff.gp.
inline int cmd_sweep(const std::optional<std::filesystem::path>& config_path, const Overrides& overrides,
                     std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    ExperimentConfig cfg;
    try {
        cfg = detail::resolve_config(config_path, overrides);
        validate_sweep(cfg);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    const std::vector<SweepRow> rows = run_sweep(cfg);
    try {
        const std::filesystem::path dir(cfg.output_dir);
        std::filesystem::create_directories(dir);
        auto csv = detail::open_output(dir, "sweep.csv");
        write_sweep_csv(csv, rows, cfg);
        auto gp = detail::open_output(dir, "plot_tradeoff.gp");
        write_tradeoff_plot(gp);
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return kExitConfig;
    }

    char line[200];
    std::snprintf(line, sizeof line, "%12s %8s %14s %14s %14s\n", "alpha", "mean_k", "control", "sensing", "total");
    out << line;
    std::size_t failures = 0;
    for (const SweepRow& r : rows) {
        std::snprintf(line, sizeof line, "%12.4g %8.3f %14.4e %14.4e %14.4e\n", r.alpha, r.mean_k, r.mean_control,
                      r.mean_sensing, r.mean_total);
        out << line;
        failures += r.failures;
    }
    if (failures) err << "numerical error: " << failures << " sweep episodes aborted\n";
    return failures ? kExitNumerical : kExitOk;
}

}  // namespace aifscc
