#include "lowrf/commands.hpp"

#include "lowrf/approximations.hpp"
#include "lowrf/bussgang.hpp"
#include "lowrf/direct_detection.hpp"
#include "lowrf/filter.hpp"
#include "lowrf/montecarlo.hpp"
#include "lowrf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lowrf {

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const KvMap& kv, const std::string& key) {
    const std::string& raw = kv.at(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + raw + "'");
    }
}

std::int64_t parse_int(const KvMap& kv, const std::string& key) {
    const std::string& raw = kv.at(key);
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + raw + "'");
    }
}

std::uint64_t parse_u64(const KvMap& kv, const std::string& key) {
    const std::int64_t v = parse_int(kv, key);
    if (v < 0) throw ConfigError("key '" + key + "': must be non-negative");
    return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_list(const KvMap& kv, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(kv.at(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': bad list element '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::ofstream open_output(const KvMap& kv) {
    const std::string& path = kv.at("output");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

void echo_config(std::ofstream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    for (const auto& [k, v] : rows) out << "# " << k << " = " << v << "\n";
}

// log-spaced integer grid, deduplicated, endpoints included
std::vector<int> log_int_grid(int lo, int hi, int points) {
    if (lo < 1 || hi <= lo || points < 2) throw ConfigError("bad N grid (need 1 <= n_min < n_max, n_points >= 2)");
    std::vector<int> grid;
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        const int n = static_cast<int>(std::lround(std::exp(std::log(lo) * (1.0 - t) + std::log(hi) * t)));
        if (grid.empty() || n > grid.back()) grid.push_back(n);
    }
    return grid;
}

arma::cx_mat draw_channel(std::uint64_t seed, arma::uword n, arma::uword k) {
    SplitMix64 gen(seed);
    arma::cx_mat h(n, k);
    double a = 0.0, b = 0.0;
    for (arma::uword j = 0; j < k; ++j)
        for (arma::uword i = 0; i < n; ++i) {
            gen.next_normal_pair(a, b);
            h(i, j) = std::complex<double>(a, b) / std::sqrt(2.0);
        }
    return h;
}

}  // namespace

KvMap resolve_config(const CommandSpec& spec, const std::string& config_path,
                     const KvMap& overrides) {
    KvMap kv;
    for (const auto& key : spec.keys) kv[key.key] = key.default_value;

    auto known = [&](const std::string& k) {
        return std::any_of(spec.keys.begin(), spec.keys.end(),
                           [&](const KeySpec& ks) { return k == ks.key; });
    };

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(config_path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!known(key))
                throw ConfigError(config_path + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "' for subcommand '" + spec.name + "'");
            kv[key] = value;
        }
    }
    for (const auto& [k, v] : overrides) {
        if (!known(k))
            throw ConfigError("unknown key '" + k + "' for subcommand '" + std::string(spec.name) + "'");
        kv[k] = v;
    }
    return kv;
}

int cmd_filter_response(const KvMap& kv, std::ostream& summary) {
    FilterSpec spec{parse_double(kv, "bandwidth_hz"), parse_double(kv, "sigma")};
    spec.validate();
    const double b = spec.bandwidth_hz;
    const double f0 = parse_double(kv, "f0_over_b") * b;
    const RlcParams rlc = RlcParams::from_band_ratios(
        b, f0, parse_double(kv, "shunt_q"), parse_double(kv, "series_dissipation"),
        parse_double(kv, "series_scale_ohm"), parse_double(kv, "shunt_scale_ohm"));

    auto out = open_output(kv);
    echo_config(out, {{"bandwidth_hz", format_g17(b)},
                      {"sigma", format_g17(spec.dissipation)},
                      {"center_frequency_hz", format_g17(f0)},
                      {"series_r_ohm", format_g17(rlc.r)},
                      {"series_l_h", format_g17(rlc.l)},
                      {"series_c_f", format_g17(rlc.c)},
                      {"shunt_r_ohm", format_g17(rlc.r1)},
                      {"shunt_l_h", format_g17(rlc.l1)},
                      {"shunt_c_f", format_g17(rlc.c1)}});
    out << "f_over_B,analytic_mag2,rlc_mag2\n";

    constexpr int kPoints = 1000;
    // normalize the ladder response to its band-center value so the two
    // shapes are directly comparable
    const double rlc_center = rlc_ladder_response(rlc, f0);
    for (int i = 0; i < kPoints; ++i) {
        const double frac = -0.6 + 1.2 * i / (kPoints - 1);
        const double f = frac * b;
        out << format_g17(frac) << ',' << format_g17(baseband_gain2(f, spec)) << ','
            << format_g17(rlc_ladder_response(rlc, f0 + f) / rlc_center) << "\n";
    }
    summary << "filter-response: wrote " << kPoints << " rows to " << kv.at("output") << "\n";
    return kExitOk;
}

int cmd_dd_sweep(const KvMap& kv, std::ostream& summary) {
    const double bandwidth = parse_double(kv, "bandwidth_hz");
    const double n0 = dbm_to_watts(parse_double(kv, "n0_dbm_per_hz")) *
                      db_to_linear(parse_double(kv, "noise_figure_db"));
    DirectDetectionScenario sc;
    sc.bandwidth_hz = bandwidth;
    sc.noise_density_w_per_hz = n0;
    sc.signal_power_w = db_to_linear(parse_double(kv, "snr_db")) * bandwidth * n0;
    sc.lo_power_w = dbm_to_watts(parse_double(kv, "p_lo_dbm"));
    sc.filter = {bandwidth, parse_double(kv, "sigma")};
    sc.num_antennas = 1;     // per-point values set by the sweep
    sc.lo_capture = 0.5;     // placeholder; sweep applies eps = N^-2
    sc.validate();

    const auto grid = log_int_grid(static_cast<int>(parse_int(kv, "n_min")),
                                   static_cast<int>(parse_int(kv, "n_max")),
                                   static_cast<int>(parse_int(kv, "n_points")));

    auto out = open_output(kv);
    echo_config(out, {{"bandwidth_hz", format_g17(bandwidth)},
                      {"noise_density_w_per_hz", format_g17(n0)},
                      {"signal_power_w", format_g17(sc.signal_power_w)},
                      {"lo_power_w", format_g17(sc.lo_power_w)},
                      {"sigma", format_g17(sc.filter.dissipation)},
                      {"lo_capture_rule", "N^-2"}});
    out << "N,rate_bps,upper_bound_bps\n";

    int failures = 0;
    RatePoint best{0, -1.0, 0.0};
    for (int n : grid) {
        DirectDetectionScenario point = sc;
        point.num_antennas = n;
        point.lo_capture = 1.0 / (static_cast<double>(n) * n);
        try {
            const RatePoint row{n, achievable_rate_dd(point), upper_bound_rate(point)};
            if (row.rate_bps > best.rate_bps) best = row;
            out << n << ',' << format_g17(row.rate_bps) << ',' << format_g17(row.upper_bound_bps)
                << "\n";
        } catch (const std::runtime_error& e) {
            ++failures;
            summary << "dd-sweep: N=" << n << " failed: " << e.what() << "\n";
            out << n << ",nan,nan\n";
        }
    }
    summary << "dd-sweep: " << grid.size() << " points, best rate " << format_g17(best.rate_bps)
            << " bit/s at N=" << best.num_antennas << "\n";
    if (failures > 0) {
        summary << "dd-sweep: " << failures << " points failed to integrate\n";
        return kExitNumericalError;
    }
    return kExitOk;
}

int cmd_onebit_sweep(const KvMap& kv, std::ostream& summary) {
    const int users = static_cast<int>(parse_int(kv, "users_k"));
    const double rho = db_to_linear(parse_double(kv, "snr_db"));
    const auto n_raw = parse_list(kv, "n_list");
    const int draws = static_cast<int>(parse_int(kv, "channel_draws"));
    const std::uint64_t seed = parse_u64(kv, "seed");
    if (users < 1 || draws < 1) throw ConfigError("onebit-sweep: need users_k >= 1 and channel_draws >= 1");

    auto out = open_output(kv);
    echo_config(out, {{"users_k", std::to_string(users)},
                      {"rho", format_g17(rho)},
                      {"channel_draws", std::to_string(draws)},
                      {"seed", std::to_string(seed)}});
    out << "N,K,rho,gamma_exact_mean,gamma_first,gamma_third,gamma_saturation,gain_over_rho\n";

    int flagged = 0;
    for (std::size_t ni = 0; ni < n_raw.size(); ++ni) {
        const int n = static_cast<int>(n_raw[ni]);
        if (n < users) throw ConfigError("onebit-sweep: need N >= K for every grid point");
        double acc = 0.0;
        int ok = 0;
        SindrReport approx;
        fill_approximations(approx, {n, users, rho});
        for (int d = 0; d < draws; ++d) {
            MimoScenario sc;
            sc.channel.entries = draw_channel(child_seed(child_seed(seed, ni), d), n, users);
            sc.snr = rho;
            try {
                const SindrReport report = sindr_report(build_bussgang_model(sc), sc);
                acc += arma::sum(report.gamma);
                ++ok;
            } catch (const std::runtime_error& e) {
                ++flagged;
                summary << "onebit-sweep: N=" << n << " draw=" << d << " flagged: " << e.what()
                        << "\n";
            }
        }
        const double mean_gamma =
            ok > 0 ? acc / (static_cast<double>(ok) * users) : std::nan("");
        out << n << ',' << users << ',' << format_g17(rho) << ',' << format_g17(mean_gamma)
            << ',' << format_g17(approx.first_order) << ',' << format_g17(approx.third_order)
            << ',' << format_g17(approx.saturation) << ',' << format_g17(mean_gamma / rho)
            << "\n";
    }
    summary << "onebit-sweep: " << n_raw.size() << " points, K=" << users
            << ", rho=" << format_g17(rho) << (flagged ? " (some draws flagged)" : "") << "\n";
    return kExitOk;
}

int cmd_mc_validate(const KvMap& kv, std::ostream& summary) {
    McConfig cfg;
    const int n = static_cast<int>(parse_int(kv, "antennas_n"));
    const int k = static_cast<int>(parse_int(kv, "users_k"));
    if (n < 1 || k < 1) throw ConfigError("mc-validate: need antennas_n >= 1 and users_k >= 1");
    cfg.master_seed = parse_u64(kv, "seed");
    cfg.num_trials = parse_u64(kv, "trials");
    cfg.scenario.snr = db_to_linear(parse_double(kv, "snr_db"));
    // channel drawn from a reserved child stream so trial seeds never collide
    cfg.scenario.channel.entries =
        draw_channel(child_seed(cfg.master_seed, ~std::uint64_t{0}), n, k);

    const McReport rep = run_trials(cfg);

    auto out = open_output(kv);
    echo_config(out, {{"antennas_n", std::to_string(n)},
                      {"users_k", std::to_string(k)},
                      {"rho", format_g17(cfg.scenario.snr)},
                      {"trials", std::to_string(cfg.num_trials)},
                      {"seed", std::to_string(cfg.master_seed)}});
    out << "check_name,analytic,empirical,stderr,z,pass\n";
    int failed = 0;
    double worst_z = 0.0;
    for (const auto& c : rep.checks) {
        const char* verdict = !rep.conclusive ? "inconclusive" : (c.pass ? "pass" : "fail");
        if (rep.conclusive && !c.pass) ++failed;
        if (std::isfinite(c.z)) worst_z = std::max(worst_z, std::abs(c.z));
        out << c.name << ',' << format_g17(c.analytic) << ',' << format_g17(c.empirical) << ','
            << format_g17(c.std_error) << ',' << format_g17(c.z) << ',' << verdict << "\n";
    }
    summary << "mc-validate: " << rep.checks.size() << " checks, worst |z| = "
            << format_g17(worst_z) << "\n";
    if (!rep.conclusive) {
        summary << "mc-validate: warning: " << cfg.num_trials
                << " trials are too few for batch-means standard errors; gates inconclusive\n";
        return kExitOk;
    }
    if (failed > 0) {
        summary << "mc-validate: " << failed << " gate(s) failed\n";
        return kExitGateFailure;
    }
    summary << "mc-validate: all gates passed\n";
    return kExitOk;
}

int cmd_prop1(const KvMap& kv, std::ostream& summary) {
    const auto k_list = parse_list(kv, "k_list");
    const auto r_list = parse_list(kv, "r_bits_list");

    auto out = open_output(kv);
    echo_config(out, {{"recommendation_factor", "10"}});
    out << "K,R_bits,gamma,N_threshold,N_recommended\n";
    summary << "  K   R_bits        gamma  N_threshold  N_recommended\n";
    for (double kd : k_list) {
        const int k = static_cast<int>(kd);
        if (k < 1) throw ConfigError("prop1: need K >= 1");
        for (double r : r_list) {
            if (r < 0.0) throw ConfigError("prop1: need R >= 0");
            const double gamma = std::exp2(r) - 1.0;
            const double threshold = linear_dsp_threshold(k, gamma);
            out << k << ',' << format_g17(r) << ',' << format_g17(gamma) << ','
                << format_g17(threshold) << ',' << format_g17(10.0 * threshold) << "\n";
            char line[128];
            std::snprintf(line, sizeof(line), "%3d %8.3f %12.4f %12.4f %14.4f\n", k, r, gamma,
                          threshold, 10.0 * threshold);
            summary << line;
        }
    }
    return kExitOk;
}

const std::vector<CommandSpec>& command_specs() {
    static const std::vector<CommandSpec> specs = {
        {"filter-response",
         "Tabulate the analytic passband shape and its RLC-ladder realization",
         {{"bandwidth_hz", "1", "two-sided bandwidth B [Hz]"},
          {"sigma", "0.05", "filter dissipation factor (inverse Q)"},
          {"f0_over_b", "6", "RLC center frequency as a multiple of B"},
          {"shunt_q", "80", "tank quality factor sqrt(l1/c1)/r1"},
          {"series_dissipation", "4", "series branch ratio r*sqrt(c/l)"},
          {"series_scale_ohm", "1", "series branch impedance scale"},
          {"shunt_scale_ohm", "0.01", "tank impedance scale"},
          {"output", "filter_response.csv", "CSV output path"}},
         &cmd_filter_response},
        {"dd-sweep",
         "Direct-detection achievable rate vs antenna count (capture eps = N^-2)",
         {{"snr_db", "0", "per-antenna SNR rho/(B*N0) [dB]"},
          {"bandwidth_hz", "1e9", "two-sided bandwidth B [Hz]"},
          {"p_lo_dbm", "-30", "radiated carrier power P_LO [dBm]"},
          {"n0_dbm_per_hz", "-174.2", "noise density before noise figure [dBm/Hz]"},
          {"noise_figure_db", "3", "receiver noise figure [dB]"},
          {"sigma", "0.05", "filter dissipation factor"},
          {"n_min", "16", "smallest antenna count"},
          {"n_max", "65536", "largest antenna count"},
          {"n_points", "13", "log-spaced grid size"},
          {"output", "dd_sweep.csv", "CSV output path"}},
         &cmd_dd_sweep},
        {"onebit-sweep",
         "One-bit uplink SINDR vs antenna count: channel-averaged exact value "
         "against the closed-form approximations",
         {{"users_k", "10", "number of single-antenna users/streams"},
          {"snr_db", "-6", "per-user SNR rho [dB], noise normalized"},
          {"n_list", "64,128,256,512,1024", "comma-separated antenna counts"},
          {"channel_draws", "20", "i.i.d. channel draws averaged per point"},
          {"seed", "1", "channel RNG seed"},
          {"output", "onebit_sweep.csv", "CSV output path"}},
         &cmd_onebit_sweep},
        {"mc-validate",
         "Monte Carlo validation of the arcsine law, Bussgang uncorrelatedness, "
         "and the exact SINDR (z-test gates at 3/4 sigma)",
         {{"antennas_n", "8", "receive antennas N"},
          {"users_k", "2", "users K"},
          {"snr_db", "0", "per-user SNR rho [dB]"},
          {"trials", "1000000", "Monte Carlo trials"},
          {"seed", "1", "master seed (trials and channel derive from it)"},
          {"output", "mc_validate.csv", "CSV output path"}},
         &cmd_mc_validate},
        {"prop1",
         "Antenna-count threshold for near-optimal linear processing, per "
         "(K, target rate) pair, with a 10x recommendation",
         {{"k_list", "1,2,4", "stream counts"},
          {"r_bits_list", "1,2,3,4", "target per-stream rates [bits]"},
          {"output", "prop1.csv", "CSV output path"}},
         &cmd_prop1},
    };
    return specs;
}

}  // namespace lowrf
