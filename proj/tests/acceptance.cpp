// SPDX-License-Identifier: Apache-2.0
//
// leoris: link-level simulation of RIS-assisted LEO satellite downlinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include "leoris/beamforming.hpp"
#include "leoris/geometry.hpp"
#include "leoris/run_io.hpp"
#include "leoris/scenario.hpp"
#include "leoris/sim_engine.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace leoris;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = LEORIS_TEST_SCENARIO_DIR;
const fs::path kData = LEORIS_TEST_DATA_DIR;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const char* name, double budget_s, const std::function<Outcome()>& check)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_s) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(budget_s)) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("%s  %-28s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), dt);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

LinkBudget unit_budget()
{
    LinkBudget b;
    b.noise_temperature_k = 1.0 / kBoltzmann;
    b.bandwidth_hz = 1.0;
    return b;
}

double db(double x) { return 10.0 * std::log10(x); }

using Key = std::tuple<Scheme, std::size_t, double, double>;

std::map<Key, SweepPoint> index_rows(const MonteCarloResult& r)
{
    std::map<Key, SweepPoint> m;
    for (const auto& p : r.rows) m[{p.scheme, p.n_elements, p.elevation_deg, p.r_th_bpcu}] = p;
    return m;
}

// Shipped-scenario runs shared by several criteria.
struct ShippedRuns {
    LoadedScenario fig3;
    LoadedScenario fig4;
    std::string fig3_csv;
    std::string fig4_csv;
    MonteCarloResult fig3_result;
    MonteCarloResult fig4_result;
};

ShippedRuns& shipped()
{
    static ShippedRuns runs = [] {
        ShippedRuns r;
        r.fig3 = load_scenario(kScenarios / "fig3_s_band.json");
        r.fig4 = load_scenario(kScenarios / "fig4_ka_band.json");
        return r;
    }();
    return runs;
}

Outcome doppler_anchors()
{
    const OrbitSpec leo(600.0);
    const double s = max_doppler_hz(leo, 2e9, 0.0);
    const double k = max_doppler_hz(leo, 20e9, 0.0);
    const bool ok = std::abs(s / 48e3 - 1.0) <= 0.1 && std::abs(k / 480e3 - 1.0) <= 0.1;
    return {ok, "S-band " + fmt("%.0f Hz", s) + " vs 48 kHz, Ka-band " + fmt("%.0f Hz", k) + " vs 480 kHz (+-10%)"};
}

Outcome delay_anchor()
{
    const double d = slant_range_km(OrbitSpec(600.0), 10.0);
    const double t = propagation_delay_ms(d, 4);
    return {t < 30.0, "4 legs over " + fmt("%.1f km", d) + " = " + fmt("%.3f ms", t) + " < 30 ms"};
}

Outcome los_anchors()
{
    const auto table = LosTable::load(kData / "los_tr38811.tsv");
    const double du = los_probability(10.0, Environment::dense_urban, table);
    const double sr = los_probability(10.0, Environment::suburban_rural, table);
    return {du == 0.282 && sr == 0.782, "dense urban " + fmt("%.3f", du) + ", suburban/rural " + fmt("%.3f", sr)};
}

Outcome oracle_equivalence()
{
    constexpr int instances = 200;
    constexpr int bits = 3;
    double worst_restart_db = 0.0;
    double worst_default_db = 0.0;
    double worst_fixed_beam_db = 0.0;
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < instances; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
        const std::size_t m = 1 + static_cast<std::size_t>((i / 4) % 2);
        const auto ch = oracle::random_channel(m, n, rng, (i / 8) % 3 == 0 ? 0.0 : 0.5);
        const auto panel = RisPanel::passive(n, bits);
        const auto budget = unit_budget();
        const double optimum = db(std::pow(oracle::joint_brute_force(ch, bits, 1.0).gain, 2));

        // restart from every grid point
        const std::size_t levels = 1u << bits;
        std::size_t total = 1;
        for (std::size_t k = 0; k < n; ++k) total *= levels;
        BeamformerSolution best;
        best.snr_linear = -1.0;
        for (std::size_t code = 0; code < total; ++code) {
            RisState init = RisState::uniform(n, 1.0);
            std::size_t c = code;
            for (std::size_t k = 0; k < n; ++k, c /= levels) {
                init.phases_rad[k] = 2.0 * std::numbers::pi * static_cast<double>(c % levels) / levels;
            }
            auto sol = ao_optimize_from(ch, panel, budget, AoConfig{}, init);
            if (sol.snr_linear > best.snr_linear) best = std::move(sol);
        }
        worst_restart_db = std::max(worst_restart_db, std::abs(best.snr_db - optimum));

        // the library's fixed-beam exhaustive search at the restart winner's beam
        const auto fixed = brute_force_phases(ch, best.w, bits, panel);
        const double fixed_db = received_snr_db(effective_channel(ch, fixed, best.w), budget);
        worst_fixed_beam_db = std::max(worst_fixed_beam_db, std::abs(fixed_db - best.snr_db));

        const auto dflt = ao_optimize(ch, panel, budget);
        worst_default_db = std::max(worst_default_db, optimum - dflt.snr_db);
    }
    const bool ok = worst_restart_db <= 1e-9 && worst_fixed_beam_db <= 1e-9 && worst_default_db <= 0.5;
    return {ok, std::to_string(instances) + " instances: grid restarts off by " + fmt("%.2e dB", worst_restart_db) +
                    " (fixed-beam brute force " + fmt("%.2e dB", worst_fixed_beam_db) + "), default init within " +
                    fmt("%.3f dB", worst_default_db) + " (limits 1e-9 / 0.5 dB)"};
}

Outcome monotone_ao()
{
    constexpr int runs = 1000;
    int monotone = 0;
    int dominant = 0;
    std::mt19937_64 rng(0xa0a0);
    const std::size_t ms[] = {1, 2, 4, 16};
    for (int i = 0; i < runs; ++i) {
        const std::size_t m = ms[i % 4];
        const std::size_t n = 1 + static_cast<std::size_t>((i * 7) % 64);
        const int bits = (i / 4) % 4;
        const double direct = (i / 16) % 3 == 0 ? 0.0 : ((i / 16) % 3 == 1 ? 0.3 : 3.0);
        const auto ch = oracle::random_channel(m, n, rng, direct);
        const auto panel = i % 5 == 4 ? RisPanel::active(n, 2.0, 290.0) : RisPanel::passive(n, bits);
        LinkBudget budget;
        budget.tx_power_dbw = -100.0;
        budget.bandwidth_hz = 1e6;
        const auto ao = ao_optimize(ch, panel, budget);
        bool up = true;
        for (std::size_t k = 1; k < ao.snr_trace_db.size(); ++k) up = up && ao.snr_trace_db[k] >= ao.snr_trace_db[k - 1];
        monotone += up;
        const double bench = std::max(tx_ris_mrt(ch, panel, budget).snr_linear, tx_su_mrt(ch, panel, budget).snr_linear);
        dominant += ao.snr_linear >= bench;
    }
    return {monotone == runs && dominant == runs, std::to_string(monotone) + "/" + std::to_string(runs) +
                                                      " non-decreasing traces, " + std::to_string(dominant) + "/" +
                                                      std::to_string(runs) + " with ao >= max(benchmarks)"};
}

Outcome array_gain_law()
{
    auto& s = shipped();
    s.fig3_result = run_study(s.fig3.config);
    s.fig3_csv = format_results_csv(s.fig3_result);
    const auto rows = index_rows(s.fig3_result);
    const auto& cfg = s.fig3.config;
    const double el = cfg.elevations_deg.front();
    const double rth = cfg.rate_thresholds_bpcu.front();

    std::string detail = "gap vs without_ris:";
    bool ok = true;
    double prev_gap = -1e300;
    for (auto n : cfg.n_elements) {
        const double gap = rows.at({Scheme::ao_distributed, n, el, rth}).mean_snr_db -
                           rows.at({Scheme::without_ris, n, el, rth}).mean_snr_db;
        detail += " N=" + std::to_string(n) + " " + fmt("%.2f", gap);
        ok = ok && gap > prev_gap;
        prev_gap = gap;
    }
    ok = ok && prev_gap > 6.0;

    auto zeroed = cfg;
    zeroed.direct_link = false;
    zeroed.schemes = {Scheme::ao_distributed};
    const auto r = index_rows(run_study(zeroed));
    detail += " dB; per doubling, direct link off:";
    for (std::size_t k = 1; k < zeroed.n_elements.size(); ++k) {
        if (zeroed.n_elements[k] != 2 * zeroed.n_elements[k - 1]) continue;
        const double step = r.at({Scheme::ao_distributed, zeroed.n_elements[k], el, rth}).mean_snr_db -
                            r.at({Scheme::ao_distributed, zeroed.n_elements[k - 1], el, rth}).mean_snr_db;
        detail += " " + fmt("%.3f", step);
        ok = ok && std::abs(step - 6.02) <= 0.3;
    }
    return {ok, detail + " dB (6.02 +- 0.3)"};
}

Outcome fig4_trends()
{
    auto& s = shipped();
    const auto& cfg = s.fig4.config;
    s.fig4_result = run_study(cfg);
    s.fig4_csv = format_results_csv(s.fig4_result);
    const auto rows = index_rows(s.fig4_result);
    int n_violations = 0;
    int elev_violations = 0;
    int rth_violations = 0;
    int in_region = 0;
    for (auto scheme : cfg.schemes) {
        for (std::size_t k = 0; k < cfg.n_elements.size(); ++k) {
            for (double el : cfg.elevations_deg) {
                for (std::size_t j = 0; j < cfg.rate_thresholds_bpcu.size(); ++j) {
                    const auto& p = rows.at({scheme, cfg.n_elements[k], el, cfg.rate_thresholds_bpcu[j]});
                    if (p.outage_prob <= 1e-2 && p.outage_prob >= 1e-4) ++in_region;
                    if (k > 0) {
                        const auto& q = rows.at({scheme, cfg.n_elements[k - 1], el, cfg.rate_thresholds_bpcu[j]});
                        n_violations += p.outage_count > q.outage_count;
                    }
                    if (j > 0) {
                        const auto& q = rows.at({scheme, cfg.n_elements[k], el, cfg.rate_thresholds_bpcu[j - 1]});
                        rth_violations += p.outage_count < q.outage_count;
                    }
                }
            }
            for (double rth : cfg.rate_thresholds_bpcu) {
                const auto& hi = rows.at({scheme, cfg.n_elements[k], 30.0, rth});
                const auto& lo = rows.at({scheme, cfg.n_elements[k], 10.0, rth});
                elev_violations += hi.outage_count > lo.outage_count;
            }
        }
    }

    // deterministic channel: OP is the indicator of SNR < 2^R - 1
    auto det = cfg;
    det.deterministic_channel = true;
    det.elevations_deg = {90.0};
    det.trials = 16;
    det.tx_power_dbw = -118.0;
    const double noise = kBoltzmann * det.noise_temperature_k * det.bandwidth_hz;
    std::vector<double> th;
    for (auto n : det.n_elements) {
        const double snr = std::pow(10.0, det.tx_power_dbw / 10.0) * double(n * n) / noise;
        th.push_back(std::nextafter(std::log2(1.0 + snr), 0.0));
        th.push_back(std::nextafter(std::log2(1.0 + snr), 100.0));
    }
    std::sort(th.begin(), th.end());
    det.rate_thresholds_bpcu = th;
    int step_errors = 0;
    for (const auto& p : run_study(det).rows) {
        const double snr = std::pow(10.0, det.tx_power_dbw / 10.0) * double(p.n_elements * p.n_elements) / noise;
        const double expect = snr < std::exp2(p.r_th_bpcu) - 1.0 ? 1.0 : 0.0;
        step_errors += p.outage_prob != expect;
    }

    const bool ok = n_violations == 0 && elev_violations == 0 && rth_violations == 0 && step_errors == 0 && in_region > 0;
    return {ok, "violations: N " + std::to_string(n_violations) + ", elevation " + std::to_string(elev_violations) +
                    ", R_th " + std::to_string(rth_violations) + "; deterministic step errors " +
                    std::to_string(step_errors) + "; " + std::to_string(in_region) + " points in [1e-4, 1e-2] at " +
                    std::to_string(cfg.trials) + " trials"};
}

Outcome sampler_fidelity()
{
    const auto presets = FadingPresets::load(kData / "shadowed_rician_presets.tsv");
    constexpr int draws = 1'000'000;
    double worst = 0.0;
    std::string detail;
    for (const auto& name : presets.names()) {
        const auto& p = presets.get(name);
        RandomStream rng = substream(1, 100, 0);
        double sum = 0.0;
        for (int i = 0; i < draws; ++i) sum += std::norm(sample_shadowed_rician(p, rng));
        const double err = std::abs(sum / draws / p.mean_power() - 1.0);
        worst = std::max(worst, err);
        detail += name + " " + fmt("%.3f%%", 100.0 * err) + ", ";
    }
    RandomStream rng = substream(1, 101, 0);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) sum += std::norm(sample_rayleigh(1.7, rng));
    const double err = std::abs(sum / draws / 1.7 - 1.0);
    worst = std::max(worst, err);
    detail += "rayleigh " + fmt("%.3f%%", 100.0 * err);
    return {worst <= 0.01, detail + " (limit 1%)"};
}

Outcome determinism()
{
    auto& s = shipped();
    if (s.fig3_csv.empty()) s.fig3_csv = format_results_csv(run_study(s.fig3.config));
    if (s.fig4_csv.empty()) s.fig4_csv = format_results_csv(run_study(s.fig4.config));
    RunOptions eight;
    eight.workers = 8;
    const bool f3 = format_results_csv(run_study(load_scenario(kScenarios / "fig3_s_band.json").config, eight)) == s.fig3_csv;
    const bool f4 = format_results_csv(run_study(load_scenario(kScenarios / "fig4_ka_band.json").config, eight)) == s.fig4_csv;
    return {f3 && f4, std::string("fig3_s_band ") + (f3 ? "identical" : "differs") + ", fig4_ka_band " +
                          (f4 ? "identical" : "differs") + " (workers 1 vs 8, separate runs)"};
}

}  // namespace

int main()
{
    std::printf("leoris %s acceptance\n", tool_version().c_str());
    report("doppler anchors", 1.0, doppler_anchors);
    report("delay anchor", 1.0, delay_anchor);
    report("LOS anchors", 1.0, los_anchors);
    report("optimizer oracle equivalence", 60.0, oracle_equivalence);
    report("monotone AO", 60.0, monotone_ao);
    report("array-gain law", 300.0, array_gain_law);
    report("outage trends", 600.0, fig4_trends);
    report("sampler fidelity", 30.0, sampler_fidelity);
    report("determinism", 300.0, determinism);
    std::printf("%d failure(s)\n", failures);
    return failures;
}
