#pragma once

// One episode of the sense -> estimate -> plan -> actuate loop, and seeded
// batches of independent episodes.
//
// Slot t (1-based) runs at time (t-1) dt:
//   1. observe x_t with the allocation k_t chosen in the previous slot
//   2. fold y_t into the belief b(x_t)
//   3. plan (u_t, k_{t+1}) toward x^desired at time t dt
//   4. charge J_control(x_t, u_t) + J_sensing(k_t)
//   5. advance the true state with u_t
//
// The initial belief is a prior over x_1 itself, so slot 1 performs an update
// with no prediction step.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "aifscc/baseline_policies.hpp"
#include "aifscc/efe_planner.hpp"
#include "aifscc/gaussian.hpp"
#include "aifscc/objective.hpp"
#include "aifscc/sensing_model.hpp"
#include "aifscc/uav_model.hpp"
#include "aifscc/vfe_estimator.hpp"

namespace aifscc {

/// Substream ids derived from the episode seed. Process noise and measurement
/// noise are shared by every policy for a given seed.
enum class Stream : std::uint64_t { Process = 1, Measurement = 2, Policy = 3 };

struct EpisodeConfig {
    ModelParams model = make_model(0.1, {1e-2, 1e-3, 1e-2, 1e-3});
    SensingParams sensing;
    GoalParams goals;
    PolicyKind policy = PolicyKind::Aif;
    std::size_t horizon_steps = 628;
    std::uint64_t seed = 1;
    UavState initial_state{100.0, 0.0, 5.0, 0.1};
    StateBelief initial_belief{Vec4(100.0, 0.0, 5.0, 0.1), Mat4::Identity()};
    int initial_k = 64;
    NoiseMode process_noise = NoiseMode::Sampled;
    NoiseMode measurement_noise = NoiseMode::Sampled;

    void validate() const {
        if (horizon_steps < 1) throw ConfigError("horizon_steps must be >= 1");
        sensing.validate();
        goals.validate();
        SubcarrierAllocation(initial_k, sensing.K);
        if (!initial_state.finite()) throw ConfigError("initial_state must be finite");
        initial_belief.validate("initial_belief");
    }
};

struct StepRecord {
    std::size_t t = 0;
    double time_s = 0.0;
    UavState x_true;
    UavState x_desired;
    Vec4 belief_mean = Vec4::Zero();
    double belief_cov_trace = 0.0;
    Observation y;
    int k_used = 0;
    ControlInput u;
    StepCosts costs;
};

struct CostTotals {
    double control = 0.0;
    double sensing = 0.0;
    double total = 0.0;
};

struct EpisodeLog {
    std::vector<StepRecord> records;
    CostTotals totals;
    EpisodeConfig config_echo;
    /// Set by run_batch when the episode aborted; records are then partial.
    std::optional<std::string> failure;
};

/// Optional instrumentation. on_observe may alter the observation before it is
/// used; on_posterior sees every filtered belief.
struct EpisodeHooks {
    std::function<void(std::size_t t, Observation& y)> on_observe;
    std::function<void(std::size_t t, const StateBelief& b)> on_posterior;
};

inline EpisodeLog run_episode(const EpisodeConfig& cfg, const EpisodeHooks& hooks = {}) {
    cfg.validate();
    const ModelParams& model = cfg.model;
    const SensingParams& sensing = cfg.sensing;
    const GoalParams& goals = cfg.goals;
    const EfePlanner planner(model, goals, sensing);

    RandomSource process_rng(cfg.seed, static_cast<std::uint64_t>(Stream::Process));
    RandomSource measurement_rng(cfg.seed, static_cast<std::uint64_t>(Stream::Measurement));
    RandomSource policy_rng(cfg.seed, static_cast<std::uint64_t>(Stream::Policy));

    EpisodeLog log;
    log.config_echo = cfg;
    log.records.reserve(cfg.horizon_steps);

    UavState x = cfg.initial_state;
    StateBelief belief = cfg.initial_belief;
    SubcarrierAllocation k(cfg.initial_k, sensing.K);
    ControlInput u_prev;

    for (std::size_t t = 1; t <= cfg.horizon_steps; ++t) {
        try {
            const double time_s = static_cast<double>(t - 1) * model.dt;
            const UavState x_desired = desired_state(time_s, goals.traj);

            Observation y = observe(sensing, model.C, x, k, measurement_rng, cfg.measurement_noise);
            if (hooks.on_observe) hooks.on_observe(t, y);

            const Mat2 R = obs_covariance(sensing, k);
            belief = t == 1 ? update(PredictedBelief{belief.mean, belief.cov}, y, model.C, R)
                            : estimate_step(model, belief, u_prev, y, R);
            if (hooks.on_posterior) hooks.on_posterior(t, belief);

            const UavState x_desired_next = desired_state(static_cast<double>(t) * model.dt, goals.traj);
            ControlInput u;
            SubcarrierAllocation k_next = planner.sensing();
            switch (cfg.policy) {
                case PolicyKind::Aif:
                    u = planner.plan(belief, x_desired_next).u;
                    break;
                case PolicyKind::GreedyControl:
                    u = greedy_control(model, belief.mean, x_desired_next);
                    break;
                case PolicyKind::RandomSensing:
                    u = planner.plan(belief, x_desired_next).u;
                    k_next = random_sensing(policy_rng, goals, sensing);
                    break;
            }

            StepRecord rec;
            rec.t = t;
            rec.time_s = time_s;
            rec.x_true = x;
            rec.x_desired = x_desired;
            rec.belief_mean = belief.mean;
            rec.belief_cov_trace = belief.cov.trace();
            rec.y = y;
            rec.k_used = k.value();
            rec.u = u;
            rec.costs = StepCosts::of(control_cost(goals, x, x_desired, u), sensing_cost(goals, sensing, k));
            log.records.push_back(rec);

            x = step_truth(model, x, u, process_rng, cfg.process_noise);
            u_prev = u;
            k = k_next;
        } catch (const NotSpdError& e) {
            throw EpisodeAbort(t, e.what());
        }
    }

    for (const StepRecord& r : log.records) {
        log.totals.control += r.costs.j_control;
        log.totals.sensing += r.costs.j_sensing;
        log.totals.total += r.costs.j_total;
    }
    return log;
}

/// Runs one episode per seed (cfg.seed is replaced). Results are in seed order
/// regardless of scheduling; an aborted episode yields a log with failure set.
inline std::vector<EpisodeLog> run_batch(const EpisodeConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                         unsigned threads = 1) {
    if (seeds.empty()) throw EmptySequenceError("run_batch: no seeds");
    std::vector<EpisodeLog> results(seeds.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            EpisodeConfig c = cfg;
            c.seed = seeds[i];
            try {
                results[i] = run_episode(c);
            } catch (const std::exception& e) {
                results[i].config_echo = c;
                results[i].failure = e.what();
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(seeds.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    return results;
}

}  // namespace aifscc
