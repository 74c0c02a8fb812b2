#include "swarmlink/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace swarmlink {

ScenarioConfig::ScenarioConfig() {
    budget.snr0 = calibrate_snr0(budget, 20.0, 4.8e9);
}

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("ScenarioConfig: " + field + ": " + why);
    };
    if (n_agents < 1) fail("scenario.n_agents", "must be >= 1");
    if (!(duration_s > 0.0)) fail("scenario.duration_s", "must be > 0");
    if (horizon < 1) fail("scenario.horizon", "must be >= 1");
    if (!(circle_radius_m > 0.0)) fail("scenario.circle_radius_m", "must be > 0");
    if (!(altitude_m > 0.0)) fail("scenario.altitude_m", "must be > 0");
    if (!(crossing_fraction > 0.0) || crossing_fraction >= 1.0) {
        fail("scenario.crossing_fraction", "must lie in (0, 1)");
    }
    if (jitter_sigma_m < 0.0) fail("scenario.jitter_sigma_m", "must be >= 0");
    dynamics.validate();
    smoothing.validate();
    weights.validate();
    solver.validate();
    if (swarm.n_sweeps < 1) fail("swarm.n_sweeps", "must be >= 1");
    LinkBudget b = budget;
    b.finalize();   // throws on invalid physical-layer fields
}

// ---------------------------------------------------------------------------
// Akima interpolation

namespace {

double akima_axis(const std::vector<double>& x, const std::vector<double>& y, double t) {
    const std::size_t n = x.size();
    if (n == 1) return y[0];
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();

    // Segment slopes with the quadratic end extension: me[j] = m_{j-2}.
    std::vector<double> me(n + 3);
    for (std::size_t i = 0; i + 1 < n; ++i) me[i + 2] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    me[1] = 2.0 * me[2] - me[3 < n + 1 ? 3 : 2];
    me[0] = 2.0 * me[1] - me[2];
    me[n + 1] = 2.0 * me[n] - me[n - 1];
    me[n + 2] = 2.0 * me[n + 1] - me[n];

    auto slope = [&](std::size_t i) {
        const double w1 = std::abs(me[i + 3] - me[i + 2]);
        const double w2 = std::abs(me[i + 1] - me[i]);
        if (w1 + w2 < 1e-30) return 0.5 * (me[i + 1] + me[i + 2]);
        return (w1 * me[i + 1] + w2 * me[i + 2]) / (w1 + w2);
    };

    const std::size_t seg =
        static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) - 1;
    const double h = x[seg + 1] - x[seg];
    const double u = (t - x[seg]) / h;
    const double s0 = slope(seg);
    const double s1 = slope(seg + 1);
    const double u2 = u * u, u3 = u2 * u;
    return y[seg] * (2.0 * u3 - 3.0 * u2 + 1.0) + h * s0 * (u3 - 2.0 * u2 + u) +
           y[seg + 1] * (-2.0 * u3 + 3.0 * u2) + h * s1 * (u3 - u2);
}

}  // namespace

Vec3 akima_interpolate(const std::vector<Waypoint>& waypoints, double t) {
    if (waypoints.empty()) throw std::invalid_argument("akima_interpolate: no waypoints");
    std::vector<double> x(waypoints.size());
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        x[i] = waypoints[i].time;
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw std::invalid_argument("akima_interpolate: times must be strictly increasing");
        }
    }
    Vec3 out;
    for (int a = 0; a < 3; ++a) {
        std::vector<double> y(waypoints.size());
        for (std::size_t i = 0; i < waypoints.size(); ++i) y[i] = waypoints[i].position[a];
        out[a] = akima_axis(x, y, t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Antipodal crossing scenario

Scenario antipodal_scenario(const ScenarioConfig& cfg, std::uint64_t realization_seed) {
    cfg.validate();
    if (cfg.n_agents < 2) {
        throw std::invalid_argument("antipodal_scenario: need at least 2 agents");
    }
    std::mt19937_64 rng(realization_seed);
    std::normal_distribution<double> jitter(0.0, cfg.jitter_sigma_m);

    Scenario sc;
    sc.waypoints.resize(cfg.n_agents);
    const double t_cross = cfg.crossing_fraction * cfg.duration_s;
    const double t_form = 0.5 * (cfg.crossing_fraction + 1.0) * cfg.duration_s;
    const double form_turn = 2.0 * kPi / (3.0 * cfg.n_agents);

    for (int i = 0; i < cfg.n_agents; ++i) {
        const double th = 2.0 * kPi * i / cfg.n_agents;
        const Vec3 radial(std::cos(th), std::sin(th), 0.0);
        const Vec3 perp(std::sin(th), -std::cos(th), 0.0);
        const Vec3 alt(0.0, 0.0, cfg.altitude_m);

        std::vector<Waypoint>& wps = sc.waypoints[i];
        wps.push_back({0.0, cfg.circle_radius_m * radial + alt});
        wps.push_back({0.5 * t_cross, cfg.mid_offset_m * perp + alt});
        wps.push_back({t_cross, -cfg.circle_radius_m * radial + alt});
        const double th_f = th + kPi;
        wps.push_back({t_form, cfg.formation_radius_m *
                                       Vec3(std::cos(th_f), std::sin(th_f), 0.0) +
                                   alt});
        wps.push_back({cfg.duration_s,
                       cfg.formation_radius_m * Vec3(std::cos(th_f + form_turn),
                                                     std::sin(th_f + form_turn), 0.0) +
                           alt});

        // Per-realization horizontal jitter on every waypoint after the start.
        for (std::size_t w = 1; w < wps.size(); ++w) {
            wps[w].position.x() += jitter(rng);
            wps[w].position.y() += jitter(rng);
        }
    }

    sc.initial_states.resize(cfg.n_agents);
    for (int i = 0; i < cfg.n_agents; ++i) {
        AgentState s;
        s.position = sc.waypoints[i][0].position;
        s.velocity = Vec3::Zero();
        const Vec3& nb = sc.waypoints[(i + 1) % cfg.n_agents][0].position;
        s.yaw = los_azimuth(s.position, nb);
        sc.initial_states[i] = s;
    }
    return sc;
}

double calibrate_snr0(const LinkBudget& budget, double range_m, double capacity_bps) {
    const double snr = std::exp2(capacity_bps / budget.bandwidth_hz) - 1.0;
    return snr * range_m * range_m / budget.n_ula;
}

// ---------------------------------------------------------------------------
// Config file I/O (flat INI-style tables, one per module)

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ConfigWriter {
    std::ostringstream out;
    void section(const std::string& name) { out << "[" << name << "]\n"; }
    void kv(const std::string& key, double v) { out << key << " = " << fmt_double(v) << "\n"; }
    void kv(const std::string& key, int v) { out << key << " = " << v << "\n"; }
    void kv(const std::string& key, std::uint64_t v) { out << key << " = " << v << "\n"; }
    void kv(const std::string& key, bool v) { out << key << " = " << (v ? 1 : 0) << "\n"; }
    void blank() { out << "\n"; }
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string serialize_config(const ScenarioConfig& cfg) {
    ConfigWriter w;
    w.section("meta");
    w.kv("schema_version", cfg.schema_version);
    w.blank();
    w.section("scenario");
    w.kv("n_agents", cfg.n_agents);
    w.kv("duration_s", cfg.duration_s);
    w.kv("horizon", cfg.horizon);
    w.kv("circle_radius_m", cfg.circle_radius_m);
    w.kv("altitude_m", cfg.altitude_m);
    w.kv("formation_radius_m", cfg.formation_radius_m);
    w.kv("crossing_fraction", cfg.crossing_fraction);
    w.kv("mid_offset_m", cfg.mid_offset_m);
    w.kv("jitter_sigma_m", cfg.jitter_sigma_m);
    w.kv("seed", cfg.seed);
    w.blank();
    w.section("dynamics");
    w.kv("ts_s", cfg.dynamics.ts);
    w.kv("a_max", cfg.dynamics.a_max);
    w.kv("omega_max", cfg.dynamics.omega_max);
    w.kv("d_min", cfg.dynamics.d_min);
    w.blank();
    w.section("link");
    w.kv("carrier_hz", cfg.budget.carrier_hz);
    w.kv("bandwidth_hz", cfg.budget.bandwidth_hz);
    w.kv("n_ula", cfg.budget.n_ula);
    w.kv("hpbw_deg", cfg.budget.hpbw_rad * 180.0 / kPi);
    w.kv("fov_deg", cfg.budget.fov_rad * 180.0 / kPi);
    w.kv("kappa", cfg.budget.kappa);
    w.kv("snr0", cfg.budget.snr0);
    w.kv("gamma_refl", cfg.budget.gamma_refl);
    w.blank();
    w.section("smoothing");
    w.kv("epsilon_m", cfg.smoothing.epsilon);
    w.blank();
    w.section("weights");
    w.kv("q_pos", cfg.weights.q_pos(0, 0));
    w.kv("r_ax", cfg.weights.r_diag(0));
    w.kv("r_ay", cfg.weights.r_diag(1));
    w.kv("r_az", cfg.weights.r_diag(2));
    w.kv("r_omega", cfg.weights.r_diag(3));
    w.kv("w_comm", cfg.weights.w_comm);
    w.kv("w_safe", cfg.weights.w_safe);
    w.kv("mu", cfg.weights.mu);
    w.blank();
    w.section("solver");
    w.kv("max_iters", cfg.solver.max_iters);
    w.kv("grad_tol", cfg.solver.grad_tol);
    w.kv("step_tol", cfg.solver.step_tol);
    w.kv("armijo_c", cfg.solver.armijo_c);
    w.kv("backtrack_ratio", cfg.solver.backtrack_ratio);
    w.kv("max_backtracks", cfg.solver.max_backtracks);
    w.blank();
    w.section("swarm");
    w.kv("n_sweeps", cfg.swarm.n_sweeps);
    w.kv("jacobi", cfg.swarm.jacobi);
    w.blank();
    w.section("pid");
    w.kv("kp", cfg.pid.kp);
    w.kv("kd", cfg.pid.kd);
    w.kv("krep", cfg.pid.krep);
    return w.out.str();
}

void save_config(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_config: cannot open " + path);
    f << serialize_config(cfg);
}

namespace {

ScenarioConfig config_from_map(const std::map<std::string, std::string>& kv) {
    ScenarioConfig cfg;
    std::map<std::string, std::string> remaining = kv;

    auto take = [&](const std::string& key, auto& target) {
        auto it = remaining.find(key);
        if (it == remaining.end()) return;   // keep the documented default
        std::istringstream ss(it->second);
        ss >> target;
        if (ss.fail()) {
            throw std::invalid_argument("load_config: field " + key + ": cannot parse '" +
                                        it->second + "'");
        }
        remaining.erase(it);
    };

    take("meta.schema_version", cfg.schema_version);
    take("scenario.n_agents", cfg.n_agents);
    take("scenario.duration_s", cfg.duration_s);
    take("scenario.horizon", cfg.horizon);
    take("scenario.circle_radius_m", cfg.circle_radius_m);
    take("scenario.altitude_m", cfg.altitude_m);
    take("scenario.formation_radius_m", cfg.formation_radius_m);
    take("scenario.crossing_fraction", cfg.crossing_fraction);
    take("scenario.mid_offset_m", cfg.mid_offset_m);
    take("scenario.jitter_sigma_m", cfg.jitter_sigma_m);
    take("scenario.seed", cfg.seed);
    take("dynamics.ts_s", cfg.dynamics.ts);
    take("dynamics.a_max", cfg.dynamics.a_max);
    take("dynamics.omega_max", cfg.dynamics.omega_max);
    take("dynamics.d_min", cfg.dynamics.d_min);
    take("link.carrier_hz", cfg.budget.carrier_hz);
    take("link.bandwidth_hz", cfg.budget.bandwidth_hz);
    take("link.n_ula", cfg.budget.n_ula);
    double hpbw_deg = cfg.budget.hpbw_rad * 180.0 / kPi;
    double fov_deg = cfg.budget.fov_rad * 180.0 / kPi;
    take("link.hpbw_deg", hpbw_deg);
    take("link.fov_deg", fov_deg);
    cfg.budget.hpbw_rad = hpbw_deg * kPi / 180.0;
    cfg.budget.fov_rad = fov_deg * kPi / 180.0;
    take("link.kappa", cfg.budget.kappa);
    take("link.snr0", cfg.budget.snr0);
    take("link.gamma_refl", cfg.budget.gamma_refl);
    cfg.budget.finalize();
    take("smoothing.epsilon_m", cfg.smoothing.epsilon);
    double q = cfg.weights.q_pos(0, 0);
    take("weights.q_pos", q);
    cfg.weights.q_pos = q * Eigen::Matrix3d::Identity();
    take("weights.r_ax", cfg.weights.r_diag(0));
    take("weights.r_ay", cfg.weights.r_diag(1));
    take("weights.r_az", cfg.weights.r_diag(2));
    take("weights.r_omega", cfg.weights.r_diag(3));
    take("weights.w_comm", cfg.weights.w_comm);
    take("weights.w_safe", cfg.weights.w_safe);
    take("weights.mu", cfg.weights.mu);
    take("solver.max_iters", cfg.solver.max_iters);
    take("solver.grad_tol", cfg.solver.grad_tol);
    take("solver.step_tol", cfg.solver.step_tol);
    take("solver.armijo_c", cfg.solver.armijo_c);
    take("solver.backtrack_ratio", cfg.solver.backtrack_ratio);
    take("solver.max_backtracks", cfg.solver.max_backtracks);
    take("swarm.n_sweeps", cfg.swarm.n_sweeps);
    int jacobi = cfg.swarm.jacobi ? 1 : 0;
    take("swarm.jacobi", jacobi);
    cfg.swarm.jacobi = jacobi != 0;
    take("pid.kp", cfg.pid.kp);
    take("pid.kd", cfg.pid.kd);
    take("pid.krep", cfg.pid.krep);

    if (!remaining.empty()) {
        throw std::invalid_argument("load_config: unknown field " + remaining.begin()->first);
    }
    cfg.validate();
    return cfg;
}

}  // namespace

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[' && s.back() == ']') {
            section = s.substr(1, s.size() - 2);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("load_config: line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        const std::string key = section + "." + trim(s.substr(0, eq));
        kv[key] = trim(s.substr(eq + 1));
    }
    try {
        return config_from_map(kv);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(e.what()) + " (file " + path + ")");
    }
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    // FNV-1a over the canonical serialization
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace swarmlink
