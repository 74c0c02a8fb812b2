// Batch CLI for the swarm-link simulator.
//
//   swarmctl run           one episode, per-step CSV output
//   swarmctl montecarlo    paired multi-controller Monte Carlo
//   swarmctl sweep-epsilon solver robustness across smoothing radii
//   swarmctl theory        regularity / quadrature / contraction checks
//   swarmctl plot          SVG panels from a fresh Monte Carlo run

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "swarmlink/harness.hpp"

using namespace swarmlink;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int realizations = 10;
    std::string controller = "joint";
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_controller) {
    cmd->add_option("--config", opts->config_path, "configuration file (INI)");
    cmd->add_option("--out", opts->out_dir, "output directory");
    cmd->add_option("--seed", opts->seed, "master seed (overrides the config)")
        ->each([opts](const std::string&) { opts->seed_set = true; });
    cmd->add_option("--realizations", opts->realizations, "number of realizations")
        ->check(CLI::PositiveNumber);
    if (with_controller) {
        cmd->add_option("--controller", opts->controller,
                        "joint | ideal | ele | std | pid");
    }
}

ScenarioConfig load(const CommonOpts& opts) {
    ScenarioConfig cfg;
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
    if (opts.seed_set) cfg.seed = opts.seed;
    cfg.validate();
    return cfg;
}

std::vector<ControllerKind> all_kinds() {
    return {ControllerKind::Joint, ControllerKind::Ideal, ControllerKind::Ele,
            ControllerKind::Std, ControllerKind::Pid};
}

void prepare_out(const CommonOpts& opts) {
    std::filesystem::create_directories(opts.out_dir);
}

double run_and_write(const ScenarioConfig& cfg, const std::vector<ControllerKind>& kinds,
                     int n_real, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const MonteCarloResult mc = monte_carlo(cfg, kinds, n_real);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_links_csv(mc.records, out_dir + "/links.csv");
    write_kinematic_csv(mc.records, out_dir + "/kinematics.csv");
    write_aggregate_csv(mc.metrics, out_dir + "/aggregate.csv");
    write_manifest(cfg, n_real, wall, out_dir + "/manifest.json");
    std::printf("%s", format_metrics_table(mc.metrics).c_str());
    return wall;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directional-swarm MPC simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, mc_opts, sweep_opts, theory_opts, plot_opts;

    CLI::App* cmd_run = app.add_subcommand("run", "single episode of one controller");
    add_common(cmd_run, &run_opts, true);

    CLI::App* cmd_mc = app.add_subcommand("montecarlo", "paired Monte Carlo, all controllers");
    add_common(cmd_mc, &mc_opts, false);

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep-epsilon", "success rate across smoothing radii");
    add_common(cmd_sweep, &sweep_opts, false);
    std::vector<double> epsilons = {0.01, 0.03, 0.05, 0.08, 0.15, 0.20};
    cmd_sweep->add_option("--epsilons", epsilons, "smoothing radii in meters");

    CLI::App* cmd_theory =
        app.add_subcommand("theory", "regularity, quadrature and contraction checks");
    add_common(cmd_theory, &theory_opts, false);

    CLI::App* cmd_plot = app.add_subcommand("plot", "SVG panels from a Monte Carlo run");
    add_common(cmd_plot, &plot_opts, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const ScenarioConfig cfg = load(run_opts);
            prepare_out(run_opts);
            const ControllerKind kind = controller_from_name(run_opts.controller);
            const auto t0 = std::chrono::steady_clock::now();
            const EpisodeRecord ep = run_episode(cfg, kind, split_seed(cfg.seed, 0));
            const double wall = std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - t0).count();
            std::map<ControllerKind, std::vector<EpisodeRecord>> records;
            records[kind].push_back(ep);
            std::map<ControllerKind, AggregateMetrics> metrics;
            metrics[kind] = compute_metrics({ep});
            write_links_csv(records, run_opts.out_dir + "/links.csv");
            write_kinematic_csv(records, run_opts.out_dir + "/kinematics.csv");
            write_aggregate_csv(metrics, run_opts.out_dir + "/aggregate.csv");
            write_manifest(cfg, 1, wall, run_opts.out_dir + "/manifest.json");
            std::printf("%s", format_metrics_table(metrics).c_str());
        } else if (cmd_mc->parsed()) {
            const ScenarioConfig cfg = load(mc_opts);
            prepare_out(mc_opts);
            run_and_write(cfg, all_kinds(), mc_opts.realizations, mc_opts.out_dir);
        } else if (cmd_sweep->parsed()) {
            const ScenarioConfig cfg = load(sweep_opts);
            prepare_out(sweep_opts);
            const auto rows = epsilon_sweep(cfg, epsilons, sweep_opts.realizations);
            std::ofstream csv(sweep_opts.out_dir + "/epsilon_sweep.csv");
            csv << "epsilon_m,success_rate,avg_capacity_bps,avg_misalign_rad\n";
            std::printf("%8s %10s %10s %10s\n", "eps_m", "success", "cap_gbps", "mis_deg");
            for (const EpsilonSweepRow& r : rows) {
                char line[160];
                std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g,%.10g\n", r.epsilon_m,
                              r.success_rate, r.avg_capacity_bps, r.avg_misalign_rad);
                csv << line;
                std::printf("%8.3f %9.2f%% %10.3f %10.3f\n", r.epsilon_m,
                            100.0 * r.success_rate, r.avg_capacity_bps * 1e-9,
                            r.avg_misalign_rad * 180.0 / kPi);
            }
        } else if (cmd_theory->parsed()) {
            const ScenarioConfig cfg = load(theory_opts);
            prepare_out(theory_opts);
            const TheoryReport rep = theory_report(cfg);
            write_theory_csv(rep, theory_opts.out_dir + "/theory.csv");
            std::printf("%s", format_theory_report(rep).c_str());
        } else if (cmd_plot->parsed()) {
            const ScenarioConfig cfg = load(plot_opts);
            prepare_out(plot_opts);
            const MonteCarloResult mc =
                monte_carlo(cfg, all_kinds(), plot_opts.realizations);
            emit_plots(mc.records, cfg, plot_opts.out_dir);
            std::printf("wrote %s/{trajectories_topdown,min_distance,capacity}.svg\n",
                        plot_opts.out_dir.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
