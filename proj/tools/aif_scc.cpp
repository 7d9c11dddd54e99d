// Command-line front end: `aif_scc run|compare|sweep [--config file] [overrides]`.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "aifscc/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Active-inference UAV sensing/control simulator"};
    app.require_subcommand(1);

    std::string config_path;
    aifscc::Overrides overrides;
    std::string policy, out;
    std::uint64_t seed = 0;
    double alpha = 0.0, gamma = 0.0;
    std::size_t horizon = 0;
    unsigned threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON experiment config");
        sub->add_option("--policy", policy, "aif | greedy | random");
        sub->add_option("--seed", seed, "episode seed");
        sub->add_option("--alpha", alpha, "sensing subcarrier penalty");
        sub->add_option("--gamma", gamma, "linear SNR used in the ranging bound");
        sub->add_option("--horizon", horizon, "number of slots T");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--threads", threads, "episodes run concurrently");
    };

    CLI::App* run = app.add_subcommand("run", "single episode -> episode.csv, summary.json");
    CLI::App* compare = app.add_subcommand("compare", "AIF vs baselines over compare_seeds -> compare.csv");
    CLI::App* sweep = app.add_subcommand("sweep", "alpha sweep over sweep_seeds -> sweep.csv, plot_tradeoff.gp");
    for (CLI::App* sub : {run, compare, sweep}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : aifscc::kExitConfig;
    }

    CLI::App* active = app.get_subcommands().front();
    if (active->count("--policy")) overrides.policy = policy;
    if (active->count("--seed")) overrides.seed = seed;
    if (active->count("--alpha")) overrides.alpha = alpha;
    if (active->count("--gamma")) overrides.gamma = gamma;
    if (active->count("--horizon")) overrides.horizon = horizon;
    if (active->count("--out")) overrides.out = out;
    if (active->count("--threads")) overrides.threads = threads;

    std::optional<std::filesystem::path> cfg;
    if (!config_path.empty()) cfg = config_path;

    if (active == run) return aifscc::cmd_run(cfg, overrides);
    if (active == compare) return aifscc::cmd_compare(cfg, overrides);
    return aifscc::cmd_sweep(cfg, overrides);
}
