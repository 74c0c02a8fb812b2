#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "swarmlink/harness.hpp"

using namespace swarmlink;

namespace {

ScenarioConfig short_config() {
    ScenarioConfig cfg;
    cfg.duration_s = 5.0;
    return cfg;
}

EpisodeRecord hand_built_record() {
    // two steps, two agents, one link; all numbers chosen for hand arithmetic
    EpisodeRecord ep;
    ep.ts = 0.1;
    for (int k = 0; k < 2; ++k) {
        StepRecord s;
        s.states.resize(2);
        s.inputs.resize(2);
        s.inputs[0].accel = Vec3(1.0, 0.0, 0.0);            // ||u||^2 = 1
        s.inputs[1].accel = Vec3(0.0, 2.0, 0.0);            // ||u||^2 = 4
        s.links.push_back({k == 0 ? 0.5e9 : 1.5e9, 0.1});   // one outage of two
        s.min_dist = k == 0 ? 4.0 : 6.0;
        s.solver_time_s = k == 0 ? 0.010 : 0.030;
        s.solves = 3;
        s.solves_converged = k == 0 ? 3 : 1;
        ep.steps.push_back(s);
    }
    return ep;
}

}  // namespace

TEST_CASE("episode length follows duration and Ts") {
    const ScenarioConfig cfg = short_config();
    const EpisodeRecord ep = run_episode(cfg, ControllerKind::Pid, 1);
    CHECK(ep.steps.size() == 50);
    CHECK(ep.ts == doctest::Approx(0.1));
}

TEST_CASE("episodes are deterministic in the seed") {
    const ScenarioConfig cfg = short_config();
    const EpisodeRecord a = run_episode(cfg, ControllerKind::Joint, 7);
    const EpisodeRecord b = run_episode(cfg, ControllerKind::Joint, 7);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        for (std::size_t i = 0; i < a.steps[k].states.size(); ++i) {
            CHECK(a.steps[k].states[i].position == b.steps[k].states[i].position);
            CHECK(a.steps[k].states[i].yaw == b.steps[k].states[i].yaw);
        }
        for (std::size_t l = 0; l < a.steps[k].links.size(); ++l) {
            CHECK(a.steps[k].links[l].capacity_bps == b.steps[k].links[l].capacity_bps);
        }
    }
}

TEST_CASE("metrics from a hand-built record") {
    const AggregateMetrics m = compute_metrics({hand_built_record()});
    CHECK(m.n_realizations == 1);
    CHECK(m.min_dist_avg == doctest::Approx(4.0));   // per-realization minimum
    CHECK(m.min_dist_var == doctest::Approx(0.0));
    CHECK(m.min_dist_min == doctest::Approx(4.0));
    CHECK(m.avg_capacity_bps == doctest::Approx(1.0e9));
    CHECK(m.outage_prob == doctest::Approx(0.5));
    CHECK(m.avg_misalign_rad == doctest::Approx(0.1));
    CHECK(m.avg_effort == doctest::Approx((1.0 + 4.0) / 2.0));
    CHECK(m.avg_solver_ms == doctest::Approx(20.0));
    CHECK(m.median_solver_ms == doctest::Approx(30.0));   // upper median of {10, 30}
    CHECK(m.solver_success_rate == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("outage edge cases") {
    EpisodeRecord ep;
    ep.ts = 0.1;
    SUBCASE("constant 2 Gbps never drops out") {
        for (int k = 0; k < 5; ++k) {
            StepRecord s;
            s.states.resize(1);
            s.inputs.resize(1);
            s.links.push_back({2.0e9, 0.0});
            ep.steps.push_back(s);
        }
        CHECK(compute_metrics({ep}).outage_prob == doctest::Approx(0.0));
    }
    SUBCASE("alternating 0.5/1.5 Gbps gives one half") {
        for (int k = 0; k < 10; ++k) {
            StepRecord s;
            s.states.resize(1);
            s.inputs.resize(1);
            s.links.push_back({k % 2 == 0 ? 0.5e9 : 1.5e9, 0.0});
            ep.steps.push_back(s);
        }
        CHECK(compute_metrics({ep}).outage_prob == doctest::Approx(0.5));
    }
    SUBCASE("empty record set rejected") {
        CHECK_THROWS_AS(compute_metrics({}), std::invalid_argument);
    }
}

TEST_CASE("paired realizations share the kinematic trajectory") {
    const ScenarioConfig cfg = short_config();
    const auto recs = run_realization(
        cfg, {ControllerKind::Ideal, ControllerKind::Ele, ControllerKind::Std}, 3);
    const EpisodeRecord& a = recs.at(ControllerKind::Ideal);
    const EpisodeRecord& b = recs.at(ControllerKind::Ele);
    const EpisodeRecord& c = recs.at(ControllerKind::Std);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        for (std::size_t i = 0; i < a.steps[k].states.size(); ++i) {
            CHECK(a.steps[k].states[i].position == b.steps[k].states[i].position);
            CHECK(b.steps[k].states[i].position == c.steps[k].states[i].position);
        }
        CHECK(a.steps[k].min_dist == c.steps[k].min_dist);
    }
}

TEST_CASE("monte carlo with one realization reduces to a single episode") {
    const ScenarioConfig cfg = short_config();
    const MonteCarloResult mc = monte_carlo(cfg, {ControllerKind::Pid}, 1);
    const EpisodeRecord direct = run_episode(cfg, ControllerKind::Pid,
                                             split_seed(cfg.seed, 0));
    const EpisodeRecord& ep = mc.records.at(ControllerKind::Pid).front();
    REQUIRE(ep.steps.size() == direct.steps.size());
    for (std::size_t k = 0; k < ep.steps.size(); ++k) {
        CHECK(ep.steps[k].min_dist == direct.steps[k].min_dist);
    }
}

TEST_CASE("ball average oracle integrates smooth fields to second order") {
    // f(x) = |x|^2 over a ball of radius eps has mean 3/5 eps^2 about the center
    const double eps = 0.3;
    const double mean = ball_average(
        [](const Vec3& p) { return p.squaredNorm(); }, Vec3::Zero(), eps, 41);
    CHECK(mean == doctest::Approx(0.6 * eps * eps).epsilon(5e-3));
}

TEST_CASE("theory report structure") {
    ScenarioConfig cfg;
    const TheoryReport report = theory_report(cfg, {0.05}, {0.05});
    REQUIRE(report.lipschitz.size() == 1);
    REQUIRE(report.quadrature.size() == 1);
    CHECK(report.lipschitz[0].l_hat_smoothed < report.lipschitz[0].l_hat_raw);
    CHECK(report.quadrature[0].halving_ratio > 3.0);
    CHECK(report.quadrature[0].halving_ratio < 5.0);
    CHECK(report.contraction_ratio > 0.0);
    const std::string text = format_theory_report(report);
    CHECK(text.find("contraction") != std::string::npos);
}

TEST_CASE("csv and plot outputs") {
    const ScenarioConfig cfg = short_config();
    const auto dir = std::filesystem::temp_directory_path() / "swarmlink_out_test";
    std::filesystem::create_directories(dir);

    MonteCarloResult mc = monte_carlo(cfg, {ControllerKind::Joint, ControllerKind::Pid}, 1);
    write_links_csv(mc.records, (dir / "links.csv").string());
    write_kinematic_csv(mc.records, (dir / "kinematics.csv").string());
    write_aggregate_csv(mc.metrics, (dir / "aggregate.csv").string());
    write_manifest(cfg, 1, 0.0, (dir / "manifest.json").string());
    emit_plots(mc.records, cfg, dir.string());

    for (const char* name : {"links.csv", "kinematics.csv", "aggregate.csv",
                             "manifest.json", "trajectories_topdown.svg",
                             "min_distance.svg", "capacity.svg"}) {
        CHECK(std::filesystem::exists(dir / name));
    }
    {
        std::ifstream svg(dir / "min_distance.svg");
        std::string body((std::istreambuf_iterator<char>(svg)),
                         std::istreambuf_iterator<char>());
        CHECK(body.rfind("<svg", 0) == 0);
        CHECK(body.find("stroke-dasharray") != std::string::npos);   // d_min marker
    }
    {
        std::ifstream f(dir / "links.csv");
        std::string header;
        std::getline(f, header);
        CHECK(header == "controller,realization,step,link,capacity_bps,misalign_rad");
    }
    std::filesystem::remove_all(dir);
}
