#include "swarmlink/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace swarmlink {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

ReferenceFn make_reference(const Scenario& scenario) {
    return [scenario](int agent, double t) {
        return akima_interpolate(scenario.waypoints[static_cast<std::size_t>(agent)], t);
    };
}

LinkSeries evaluate_for_kind(ControllerKind kind, const Trajectory& traj,
                             const SwarmTopology& topo, const LinkBudget& budget) {
    switch (kind) {
        case ControllerKind::Joint: return evaluate_joint(traj, topo, budget);
        case ControllerKind::Ideal: return evaluate_ideal(traj, topo, budget);
        case ControllerKind::Ele: return evaluate_ele(traj, topo, budget);
        case ControllerKind::Std:
        case ControllerKind::Pid: return evaluate_omni(traj, topo, budget);
    }
    throw std::logic_error("evaluate_for_kind: unreachable");
}

// Closed-loop MPC run (joint weights or the kinematic w_comm = 0 variant).
// Returns per-step records without the link series filled in.
std::vector<StepRecord> run_mpc_loop(const ScenarioConfig& cfg, const Scenario& scenario,
                                     const SwarmTopology& topo) {
    const ReferenceFn refs = make_reference(scenario);
    SimState sim;
    sim.states = scenario.initial_states;
    sim.plans = cold_start_plans(sim.states, cfg);

    std::vector<StepRecord> steps;
    steps.reserve(static_cast<std::size_t>(cfg.n_steps()));
    for (int k = 0; k < cfg.n_steps(); ++k) {
        StepRecord rec;
        rec.states = sim.states;
        rec.min_dist = cfg.n_agents > 1 ? min_pairwise_distance(sim.states) : 0.0;
        RoundReport report;
        receding_horizon_step(sim, refs, topo, cfg, &rec.inputs, &report);
        rec.solver_time_s = report.solver_time_s;
        rec.solves = report.solves;
        rec.solves_converged = report.solves_converged;
        steps.push_back(std::move(rec));
    }
    return steps;
}

std::vector<StepRecord> run_pid_loop(const ScenarioConfig& cfg, const Scenario& scenario) {
    const ReferenceFn refs = make_reference(scenario);
    std::vector<AgentState> states = scenario.initial_states;
    std::vector<StepRecord> steps;
    steps.reserve(static_cast<std::size_t>(cfg.n_steps()));
    double t = 0.0;
    for (int k = 0; k < cfg.n_steps(); ++k) {
        StepRecord rec;
        rec.states = states;
        rec.min_dist = cfg.n_agents > 1 ? min_pairwise_distance(states) : 0.0;
        std::vector<Vec3> ref_positions(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            ref_positions[i] = refs(static_cast<int>(i), t);
        }
        rec.inputs = pid_step(states, ref_positions, cfg.pid, cfg.dynamics);
        for (std::size_t i = 0; i < states.size(); ++i) {
            states[i] = step(states[i], rec.inputs[i], cfg.dynamics);
        }
        steps.push_back(std::move(rec));
        t += cfg.dynamics.ts;
    }
    return steps;
}

void fill_links(std::vector<StepRecord>& steps, ControllerKind kind,
                const SwarmTopology& topo, const LinkBudget& budget) {
    Trajectory traj(steps.size());
    for (std::size_t k = 0; k < steps.size(); ++k) traj[k] = steps[k].states;
    const LinkSeries series = evaluate_for_kind(kind, traj, topo, budget);
    for (std::size_t k = 0; k < steps.size(); ++k) steps[k].links = series[k];
}

EpisodeRecord make_record(const ScenarioConfig& cfg, ControllerKind kind,
                          std::uint64_t seed, std::vector<StepRecord> steps) {
    EpisodeRecord ep;
    ep.kind = kind;
    ep.seed = seed;
    ep.cfg_hash = config_hash(cfg);
    ep.ts = cfg.dynamics.ts;
    ep.steps = std::move(steps);
    return ep;
}

}  // namespace

std::map<ControllerKind, EpisodeRecord> run_realization(
    const ScenarioConfig& cfg, const std::vector<ControllerKind>& kinds,
    std::uint64_t realization_seed) {
    cfg.validate();
    ScenarioConfig run_cfg = cfg;
    run_cfg.budget.finalize();
    const Scenario scenario = antipodal_scenario(run_cfg, realization_seed);
    const SwarmTopology topo = SwarmTopology::ring(run_cfg.n_agents);

    const bool want_kinematic =
        std::any_of(kinds.begin(), kinds.end(), [](ControllerKind k) {
            return k == ControllerKind::Ideal || k == ControllerKind::Ele ||
                   k == ControllerKind::Std;
        });

    std::map<ControllerKind, EpisodeRecord> out;
    std::vector<StepRecord> kinematic_steps;
    if (want_kinematic) {
        // pure tracking MPC: no comm shaping and no safety shell, so the
        // baseline flies the nominal crossing geometry as-is
        ScenarioConfig kin_cfg = run_cfg;
        kin_cfg.weights.w_comm = 0.0;
        kin_cfg.weights.w_safe = 0.0;
        kinematic_steps = run_mpc_loop(kin_cfg, scenario, topo);
    }

    for (ControllerKind kind : kinds) {
        std::vector<StepRecord> steps;
        switch (kind) {
            case ControllerKind::Joint:
                steps = run_mpc_loop(run_cfg, scenario, topo);
                break;
            case ControllerKind::Pid:
                steps = run_pid_loop(run_cfg, scenario);
                break;
            default:
                steps = kinematic_steps;   // shared trajectory
                break;
        }
        fill_links(steps, kind, topo, run_cfg.budget);
        out.emplace(kind, make_record(run_cfg, kind, realization_seed, std::move(steps)));
    }
    return out;
}

EpisodeRecord run_episode(const ScenarioConfig& cfg, ControllerKind kind,
                          std::uint64_t realization_seed) {
    return run_realization(cfg, {kind}, realization_seed).at(kind);
}

AggregateMetrics compute_metrics(const std::vector<EpisodeRecord>& records,
                                 double outage_threshold_bps) {
    if (records.empty()) {
        throw std::invalid_argument("compute_metrics: empty record set");
    }
    AggregateMetrics m;
    m.n_realizations = static_cast<int>(records.size());

    std::vector<double> per_real_min;
    double cap_sum = 0.0, mis_sum = 0.0, effort_sum = 0.0, solver_sum_ms = 0.0;
    long link_steps = 0, outages = 0, agent_steps = 0, solver_steps = 0;
    long solves = 0, solves_converged = 0;
    std::vector<double> per_step_solver_ms;

    for (const EpisodeRecord& ep : records) {
        double ep_min = std::numeric_limits<double>::infinity();
        for (const StepRecord& s : ep.steps) {
            ep_min = std::min(ep_min, s.min_dist);
            for (const LinkSample& l : s.links) {
                cap_sum += l.capacity_bps;
                mis_sum += l.misalign_rad;
                if (l.capacity_bps < outage_threshold_bps) ++outages;
                ++link_steps;
            }
            for (const ControlInput& u : s.inputs) {
                effort_sum += u.accel.squaredNorm() + u.yaw_rate * u.yaw_rate;
                ++agent_steps;
            }
            if (s.solves > 0) {
                solver_sum_ms += 1e3 * s.solver_time_s;
                per_step_solver_ms.push_back(1e3 * s.solver_time_s);
                ++solver_steps;
                solves += s.solves;
                solves_converged += s.solves_converged;
            }
        }
        per_real_min.push_back(ep_min);
    }

    const double n = static_cast<double>(per_real_min.size());
    m.min_dist_avg = std::accumulate(per_real_min.begin(), per_real_min.end(), 0.0) / n;
    double var = 0.0;
    for (double d : per_real_min) var += (d - m.min_dist_avg) * (d - m.min_dist_avg);
    m.min_dist_var = var / n;
    m.min_dist_min = *std::min_element(per_real_min.begin(), per_real_min.end());

    m.avg_capacity_bps = link_steps > 0 ? cap_sum / link_steps : 0.0;
    m.outage_prob = link_steps > 0 ? static_cast<double>(outages) / link_steps : 0.0;
    m.avg_misalign_rad = link_steps > 0 ? mis_sum / link_steps : 0.0;
    m.avg_effort = agent_steps > 0 ? effort_sum / agent_steps : 0.0;
    m.avg_solver_ms = solver_steps > 0 ? solver_sum_ms / solver_steps : 0.0;
    if (!per_step_solver_ms.empty()) {
        std::sort(per_step_solver_ms.begin(), per_step_solver_ms.end());
        m.median_solver_ms = per_step_solver_ms[per_step_solver_ms.size() / 2];
    }
    m.solver_success_rate =
        solves > 0 ? static_cast<double>(solves_converged) / solves : 1.0;
    return m;
}

MonteCarloResult monte_carlo(const ScenarioConfig& cfg,
                             const std::vector<ControllerKind>& kinds, int n_real) {
    if (n_real < 1) throw std::invalid_argument("monte_carlo: n_real must be >= 1");
    MonteCarloResult result;
    for (int r = 0; r < n_real; ++r) {
        const std::uint64_t seed = split_seed(cfg.seed, static_cast<std::uint64_t>(r));
        auto realization = run_realization(cfg, kinds, seed);
        for (auto& [kind, ep] : realization) {
            result.records[kind].push_back(std::move(ep));
        }
    }
    for (const auto& [kind, eps] : result.records) {
        result.metrics[kind] = compute_metrics(eps);
    }
    return result;
}

std::vector<EpsilonSweepRow> epsilon_sweep(const ScenarioConfig& cfg,
                                           const std::vector<double>& epsilons, int n_real) {
    std::vector<EpsilonSweepRow> rows;
    for (double eps : epsilons) {
        if (!(eps > 0.0)) throw std::invalid_argument("epsilon_sweep: epsilon must be > 0");
        ScenarioConfig c = cfg;
        c.smoothing.epsilon = eps;
        const MonteCarloResult mc = monte_carlo(c, {ControllerKind::Joint}, n_real);
        const AggregateMetrics& m = mc.metrics.at(ControllerKind::Joint);
        rows.push_back({eps, m.solver_success_rate, m.avg_capacity_bps, m.avg_misalign_rad});
    }
    return rows;
}

double ball_average(const std::function<double(const Vec3&)>& field, const Vec3& p,
                    double epsilon, int grid_n) {
    double sum = 0.0;
    long count = 0;
    for (int ix = 0; ix < grid_n; ++ix) {
        for (int iy = 0; iy < grid_n; ++iy) {
            for (int iz = 0; iz < grid_n; ++iz) {
                const Vec3 d(((ix + 0.5) / grid_n * 2.0 - 1.0) * epsilon,
                             ((iy + 0.5) / grid_n * 2.0 - 1.0) * epsilon,
                             ((iz + 0.5) / grid_n * 2.0 - 1.0) * epsilon);
                if (d.squaredNorm() > epsilon * epsilon) continue;
                sum += field(p + d);
                ++count;
            }
        }
    }
    return sum / static_cast<double>(count);
}

double synthetic_snr_field(const Vec3& p) {
    // smooth, strongly curved bump; length scale well above every tested eps
    const Vec3 c(0.0, 0.0, 10.0);
    const double w = 0.6;
    return 40.0 * std::exp(-(p - c).squaredNorm() / (2.0 * w * w)) + 0.5;
}

TheoryReport theory_report(const ScenarioConfig& cfg,
                           const std::vector<double>& lipschitz_epsilons,
                           const std::vector<double>& quadrature_epsilons) {
    TheoryReport report;
    LinkBudget budget = cfg.budget;
    budget.finalize();

    LipschitzRegion region;
    region.neighbor = Vec3(0.0, 0.0, cfg.altitude_m);
    region.lo = Vec3(14.0, -1.0, cfg.altitude_m - 1.0);
    region.hi = Vec3(16.0, 1.0, cfg.altitude_m + 1.0);
    region.yaw = kPi;   // aimed at the neighbor from the box center

    for (double eps : lipschitz_epsilons) {
        SmoothingConfig sc;
        sc.epsilon = eps;
        LipschitzRow row;
        row.epsilon_m = eps;
        row.l_hat_smoothed = estimate_lipschitz(budget, sc, region, 400, false);
        row.l_hat_raw = estimate_lipschitz(budget, sc, region, 400, true);
        report.lipschitz.push_back(row);
    }

    const Vec3 eval_point(0.3, 0.15, 10.2);
    auto capacity_of_mean = [&](double mean_snr) {
        return 2.16 * std::log2(1.0 + mean_snr);   // Gbit/s scale for readability
    };
    for (double eps : quadrature_epsilons) {
        QuadratureRow row;
        row.epsilon_m = eps;
        for (int half = 0; half < 2; ++half) {
            const double e = half == 0 ? eps : eps / 2.0;
            SmoothingConfig sc;
            sc.epsilon = e;
            const double stencil = smooth_field(synthetic_snr_field, eval_point, sc);
            const double dense = ball_average(synthetic_snr_field, eval_point, e);
            const double err = std::abs(capacity_of_mean(dense) - capacity_of_mean(stencil));
            (half == 0 ? row.error_eps : row.error_half_eps) = err;
        }
        row.halving_ratio = row.error_eps / row.error_half_eps;
        report.quadrature.push_back(row);
    }

    SmoothingConfig sc = cfg.smoothing;
    const double l_hat = estimate_lipschitz(budget, sc, region, 400, false);
    std::tie(report.contraction_ratio, report.contraction_stable) =
        check_contraction(cfg.weights, l_hat);
    return report;
}

// ---------------------------------------------------------------------------
// formatting and file outputs

std::string format_metrics_table(const std::map<ControllerKind, AggregateMetrics>& metrics) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %12s %9s %10s %10s %10s\n",
                  "controller", "dmin_avg", "dmin_var", "dmin_min", "cap_gbps",
                  "outage", "mis_deg", "effort", "solver_ms");
    out += line;
    for (const auto& [kind, m] : metrics) {
        std::snprintf(line, sizeof(line),
                      "%-10s %10.3f %10.3f %10.3f %12.3f %9.4f %10.2f %10.2f %10.2f\n",
                      controller_name(kind), m.min_dist_avg, m.min_dist_var, m.min_dist_min,
                      m.avg_capacity_bps * 1e-9, m.outage_prob,
                      m.avg_misalign_rad * 180.0 / kPi, m.avg_effort, m.avg_solver_ms);
        out += line;
    }
    return out;
}

std::string format_theory_report(const TheoryReport& report) {
    std::string out = "gradient Lipschitz estimates (Gbit/s/m^2):\n";
    char line[256];
    for (const auto& r : report.lipschitz) {
        std::snprintf(line, sizeof(line),
                      "  eps=%6.3f m  L_smoothed=%12.4g  L_raw=%12.4g\n", r.epsilon_m,
                      r.l_hat_smoothed, r.l_hat_raw);
        out += line;
    }
    out += "stencil quadrature error halving ratios (target ~4):\n";
    for (const auto& r : report.quadrature) {
        std::snprintf(line, sizeof(line),
                      "  eps=%6.3f m  err(eps)=%10.4g  err(eps/2)=%10.4g  ratio=%6.3f\n",
                      r.epsilon_m, r.error_eps, r.error_half_eps, r.halving_ratio);
        out += line;
    }
    std::snprintf(line, sizeof(line), "contraction ratio=%.4g stable=%d\n",
                  report.contraction_ratio, report.contraction_stable ? 1 : 0);
    out += line;
    if (!report.contraction_stable) {
        out += "warning: sufficient contraction condition not met over the "
               "sampled region; sweep convergence is not guaranteed there\n";
    }
    return out;
}

void write_links_csv(const std::map<ControllerKind, std::vector<EpisodeRecord>>& records,
                     const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_links_csv: cannot open " + path);
    f << "controller,realization,step,link,capacity_bps,misalign_rad\n";
    for (const auto& [kind, eps] : records) {
        for (std::size_t r = 0; r < eps.size(); ++r) {
            const EpisodeRecord& ep = eps[r];
            for (std::size_t k = 0; k < ep.steps.size(); ++k) {
                for (std::size_t l = 0; l < ep.steps[k].links.size(); ++l) {
                    const LinkSample& s = ep.steps[k].links[l];
                    f << controller_name(kind) << ',' << r << ',' << k << ',' << l << ','
                      << fmt(s.capacity_bps) << ',' << fmt(s.misalign_rad) << '\n';
                }
            }
        }
    }
}

void write_kinematic_csv(const std::map<ControllerKind, std::vector<EpisodeRecord>>& records,
                         const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_kinematic_csv: cannot open " + path);
    // no wall-clock columns: CSV bytes must be identical across reruns
    f << "controller,realization,step,agent,px,py,pz,vx,vy,vz,yaw,ax,ay,az,yaw_rate,"
         "min_dist,solves_converged,solves\n";
    for (const auto& [kind, eps] : records) {
        for (std::size_t r = 0; r < eps.size(); ++r) {
            const EpisodeRecord& ep = eps[r];
            for (std::size_t k = 0; k < ep.steps.size(); ++k) {
                const StepRecord& s = ep.steps[k];
                for (std::size_t a = 0; a < s.states.size(); ++a) {
                    const AgentState& st = s.states[a];
                    const ControlInput& u = s.inputs[a];
                    f << controller_name(kind) << ',' << r << ',' << k << ',' << a << ','
                      << fmt(st.position.x()) << ',' << fmt(st.position.y()) << ','
                      << fmt(st.position.z()) << ',' << fmt(st.velocity.x()) << ','
                      << fmt(st.velocity.y()) << ',' << fmt(st.velocity.z()) << ','
                      << fmt(st.yaw) << ',' << fmt(u.accel.x()) << ',' << fmt(u.accel.y())
                      << ',' << fmt(u.accel.z()) << ',' << fmt(u.yaw_rate) << ','
                      << fmt(s.min_dist) << ',' << s.solves_converged << ',' << s.solves
                      << '\n';
                }
            }
        }
    }
}

void write_aggregate_csv(const std::map<ControllerKind, AggregateMetrics>& metrics,
                         const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_aggregate_csv: cannot open " + path);
    // wall-clock solver times live in the text table and the manifest, not
    // here: CSV bytes must be identical across reruns of the same seed
    f << "controller,min_dist_avg,min_dist_var,min_dist_min,avg_capacity_bps,outage_prob,"
         "avg_misalign_rad,avg_effort,success_rate,n_realizations\n";
    for (const auto& [kind, m] : metrics) {
        f << controller_name(kind) << ',' << fmt(m.min_dist_avg) << ','
          << fmt(m.min_dist_var) << ',' << fmt(m.min_dist_min) << ','
          << fmt(m.avg_capacity_bps) << ',' << fmt(m.outage_prob) << ','
          << fmt(m.avg_misalign_rad) << ',' << fmt(m.avg_effort) << ','
          << fmt(m.solver_success_rate) << ',' << m.n_realizations << '\n';
    }
}

void write_theory_csv(const TheoryReport& report, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_theory_csv: cannot open " + path);
    f << "section,epsilon_m,value_a,value_b,value_c\n";
    for (const auto& r : report.lipschitz) {
        f << "lipschitz," << fmt(r.epsilon_m) << ',' << fmt(r.l_hat_smoothed) << ','
          << fmt(r.l_hat_raw) << ",\n";
    }
    for (const auto& r : report.quadrature) {
        f << "quadrature," << fmt(r.epsilon_m) << ',' << fmt(r.error_eps) << ','
          << fmt(r.error_half_eps) << ',' << fmt(r.halving_ratio) << '\n';
    }
    f << "contraction,," << fmt(report.contraction_ratio) << ','
      << (report.contraction_stable ? 1 : 0) << ",\n";
}

void write_manifest(const ScenarioConfig& cfg, int n_real, double wall_time_s,
                    const std::string& path) {
    nlohmann::json j;
    j["schema_version"] = cfg.schema_version;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.seed;
    j["realizations"] = n_real;
    j["wall_time_s"] = wall_time_s;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_manifest: cannot open " + path);
    f << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// SVG plots

namespace {

struct SvgPlot {
    double w{640}, h{420}, margin{48};
    double xmin{0}, xmax{1}, ymin{0}, ymax{1};
    std::string body;

    double px(double x) const { return margin + (x - xmin) / (xmax - xmin) * (w - 2 * margin); }
    double py(double y) const { return h - margin - (y - ymin) / (ymax - ymin) * (h - 2 * margin); }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        if (pts.empty()) return;
        body += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) {
            body += fmt(px(x)) + "," + fmt(py(y)) + " ";
        }
        body += "\"/>\n";
    }

    void hline(double y, const std::string& color) {
        body += "<line stroke=\"" + color + "\" stroke-dasharray=\"6,4\" x1=\"" +
                fmt(px(xmin)) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" + fmt(px(xmax)) +
                "\" y2=\"" + fmt(py(y)) + "\"/>\n";
    }

    void label(const std::string& text) {
        body += "<text x=\"" + fmt(margin) + "\" y=\"20\" font-family=\"sans-serif\" "
                "font-size=\"14\">" + text + "</text>\n";
    }

    void save(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("SvgPlot: cannot open " + path);
        f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
          << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
          << body << "</svg>\n";
    }
};

const char* kind_color(ControllerKind kind) {
    switch (kind) {
        case ControllerKind::Joint: return "#1f77b4";
        case ControllerKind::Ideal: return "#2ca02c";
        case ControllerKind::Ele: return "#ff7f0e";
        case ControllerKind::Std: return "#9467bd";
        case ControllerKind::Pid: return "#d62728";
    }
    return "black";
}

}  // namespace

void emit_plots(const std::map<ControllerKind, std::vector<EpisodeRecord>>& records,
                const ScenarioConfig& cfg, const std::string& out_dir) {
    if (records.empty() || records.begin()->second.empty()) {
        throw std::invalid_argument("emit_plots: need at least one record");
    }
    std::filesystem::create_directories(out_dir);

    // top-down trajectories of the preferred (joint if present) controller
    const auto traj_it = records.count(ControllerKind::Joint)
                             ? records.find(ControllerKind::Joint)
                             : records.begin();
    const EpisodeRecord& traj_ep = traj_it->second.front();
    {
        SvgPlot plot;
        plot.xmin = plot.ymin = 1e30;
        plot.xmax = plot.ymax = -1e30;
        for (const StepRecord& s : traj_ep.steps) {
            for (const AgentState& a : s.states) {
                plot.xmin = std::min(plot.xmin, a.position.x());
                plot.xmax = std::max(plot.xmax, a.position.x());
                plot.ymin = std::min(plot.ymin, a.position.y());
                plot.ymax = std::max(plot.ymax, a.position.y());
            }
        }
        plot.label("top-down trajectories (" +
                   std::string(controller_name(traj_it->first)) + ")");
        const char* agent_colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                      "#9467bd", "#8c564b"};
        const std::size_t n_agents = traj_ep.steps.front().states.size();
        for (std::size_t a = 0; a < n_agents; ++a) {
            std::vector<std::pair<double, double>> pts;
            for (const StepRecord& s : traj_ep.steps) {
                pts.emplace_back(s.states[a].position.x(), s.states[a].position.y());
            }
            plot.polyline(pts, agent_colors[a % 6]);
        }
        plot.save(out_dir + "/trajectories_topdown.svg");
    }

    // min pairwise distance vs time
    {
        SvgPlot plot;
        plot.xmin = 0.0;
        plot.xmax = cfg.duration_s;
        plot.ymin = 0.0;
        plot.ymax = 2.0 * cfg.dynamics.d_min;
        plot.label("min inter-agent distance [m] vs time [s]");
        for (const auto& [kind, eps] : records) {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t k = 0; k < eps.front().steps.size(); ++k) {
                pts.emplace_back(k * cfg.dynamics.ts,
                                 std::min(eps.front().steps[k].min_dist, plot.ymax));
            }
            plot.polyline(pts, kind_color(kind));
        }
        plot.hline(cfg.dynamics.d_min, "red");
        plot.save(out_dir + "/min_distance.svg");
    }

    // mean link capacity vs time
    {
        SvgPlot plot;
        plot.xmin = 0.0;
        plot.xmax = cfg.duration_s;
        plot.ymin = 0.0;
        plot.ymax = 1.0;
        for (const auto& [kind, eps] : records) {
            for (const StepRecord& s : eps.front().steps) {
                for (const LinkSample& l : s.links) {
                    plot.ymax = std::max(plot.ymax, l.capacity_bps * 1e-9);
                }
            }
        }
        plot.label("mean link capacity [Gbit/s] vs time [s]");
        for (const auto& [kind, eps] : records) {
            std::vector<std::pair<double, double>> pts;
            for (std::size_t k = 0; k < eps.front().steps.size(); ++k) {
                const StepRecord& s = eps.front().steps[k];
                double sum = 0.0;
                for (const LinkSample& l : s.links) sum += l.capacity_bps;
                const double mean = s.links.empty() ? 0.0 : sum / s.links.size();
                pts.emplace_back(k * cfg.dynamics.ts, mean * 1e-9);
            }
            plot.polyline(pts, kind_color(kind));
        }
        plot.save(out_dir + "/capacity.svg");
    }
}

}  // namespace swarmlink
