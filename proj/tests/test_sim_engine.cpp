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

#include "leoris/sim_engine.hpp"

#include <doctest.h>

#include <cmath>

using namespace leoris;

namespace {

LosTable shipped_table() { return LosTable::load(std::filesystem::path(LEORIS_TEST_DATA_DIR) / "los_tr38811.tsv"); }

ScenarioConfig small_outage()
{
    ScenarioConfig c;
    c.name = "small_outage";
    c.study = Study::outage_sweep;
    c.carrier_hz = 20e9;
    c.altitude_km = 1000.0;
    c.elevations_deg = {10.0, 30.0};
    c.tx_power_dbw = 34.0;
    c.tx_gain_dbi = 24.0;
    c.noise_temperature_k = 500.0;
    c.subcarrier_samples = 2;
    c.los_table = shipped_table();
    c.n_elements = {4, 8, 16, 24};
    c.ris_element_gain_dbi = 46.0;
    c.compensation = CompensationMode{CompensationKind::direct, 0.01};
    c.rate_thresholds_bpcu = {0.5, 1.0, 2.0};
    c.trials = 600;
    c.master_seed = 77;
    return c;
}

ScenarioConfig small_case_study()
{
    ScenarioConfig c;
    c.name = "small_case_study";
    c.study = Study::snr_case_study;
    c.carrier_hz = 2e9;
    c.altitude_km = 600.0;
    c.elevations_deg = {10.0};
    c.tx_antennas = 4;
    c.tx_power_dbw = 10.0;
    c.tx_gain_dbi = 24.0;
    c.noise_temperature_k = 290.0;
    c.n_subcarriers = 1;
    c.bandwidth_hz = 1e6;
    c.subcarrier_samples = 1;
    c.los_table = shipped_table();
    c.n_elements = {0, 10, 20};
    c.ris_element_gain_dbi = 48.0;
    c.direct_link = true;
    c.clutter_loss_db = 34.3;
    c.ris_user_clutter_loss_db = 34.3;
    c.schemes = {kAllSchemes.begin(), kAllSchemes.end()};
    c.trials = 300;
    return c;
}

const SweepPoint& find(const MonteCarloResult& r, Scheme s, std::size_t n, double el, double rth)
{
    for (const auto& p : r.rows) {
        if (p.scheme == s && p.n_elements == n && p.elevation_deg == el && p.r_th_bpcu == rth) return p;
    }
    throw std::out_of_range("row not found");
}

}  // namespace

TEST_SUITE("sim_engine")
{
    TEST_CASE("Wilson interval")
    {
        const auto [lo, hi] = confidence_interval(50, 100, 0.95);
        CHECK(lo == doctest::Approx(0.4038315304).epsilon(1e-9));
        CHECK(hi == doctest::Approx(0.5961684696).epsilon(1e-9));
        CHECK(confidence_interval(0, 100).first == 0.0);
        CHECK(confidence_interval(100, 100).second == 1.0);
        CHECK_THROWS(confidence_interval(5, 0));
        CHECK_THROWS(confidence_interval(5, 4));
        CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
        CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
        CHECK(normal_quantile(1e-6) == doctest::Approx(-4.753424309).epsilon(1e-8));
    }

    TEST_CASE("substreams")
    {
        auto a = substream(1, 4, 10);
        auto b = substream(1, 4, 10);
        auto c = substream(1, 4, 11);
        auto d = substream(2, 4, 10);
        const auto x = a();
        CHECK(x == b());
        CHECK(x != c());
        CHECK(x != d());
    }

    TEST_CASE("row layout and provenance")
    {
        const auto cfg = small_outage();
        const auto r = run_outage_sweep(cfg);
        REQUIRE(r.rows.size() == cfg.n_elements.size() * cfg.elevations_deg.size() * cfg.rate_thresholds_bpcu.size());
        CHECK(r.master_seed == cfg.master_seed);
        CHECK(r.rows.front().n_elements == 4);
        CHECK(r.rows.back().n_elements == 24);
        for (const auto& p : r.rows) {
            CHECK(p.trials == cfg.trials * cfg.subcarrier_samples);
            CHECK(p.ci_low <= p.outage_prob);
            CHECK(p.outage_prob <= p.ci_high);
        }
    }

    TEST_CASE("result does not depend on the worker count")
    {
        const auto cfg = small_outage();
        const auto one = run_outage_sweep(cfg, RunOptions{1, 64});
        const auto many = run_outage_sweep(cfg, RunOptions{8, 64});
        REQUIRE(one.rows.size() == many.rows.size());
        for (std::size_t i = 0; i < one.rows.size(); ++i) {
            CHECK(one.rows[i].outage_count == many.rows[i].outage_count);
            CHECK(one.rows[i].mean_snr_db == many.rows[i].mean_snr_db);
        }
    }

    TEST_CASE("paired outage trends")
    {
        const auto cfg = small_outage();
        const auto r = run_outage_sweep(cfg);
        for (double el : cfg.elevations_deg) {
            for (double rth : cfg.rate_thresholds_bpcu) {
                for (std::size_t k = 1; k < cfg.n_elements.size(); ++k) {
                    CHECK(find(r, Scheme::ao_distributed, cfg.n_elements[k], el, rth).outage_count <=
                          find(r, Scheme::ao_distributed, cfg.n_elements[k - 1], el, rth).outage_count);
                }
            }
        }
        for (auto n : cfg.n_elements) {
            for (double rth : cfg.rate_thresholds_bpcu) {
                CHECK(find(r, Scheme::ao_distributed, n, 30.0, rth).outage_count <=
                      find(r, Scheme::ao_distributed, n, 10.0, rth).outage_count);
            }
            for (double el : cfg.elevations_deg) {
                CHECK(find(r, Scheme::ao_distributed, n, el, 0.5).outage_count <=
                      find(r, Scheme::ao_distributed, n, el, 1.0).outage_count);
                CHECK(find(r, Scheme::ao_distributed, n, el, 1.0).outage_count <=
                      find(r, Scheme::ao_distributed, n, el, 2.0).outage_count);
            }
        }
    }

    TEST_CASE("no signal and zero threshold")
    {
        auto cfg = small_outage();
        cfg.tx_power_dbw = -300.0;
        cfg.rate_thresholds_bpcu = {0.0, 1e-3, 1.0};
        const auto r = run_outage_sweep(cfg);
        for (const auto& p : r.rows) {
            if (p.r_th_bpcu == 0.0) CHECK(p.outage_prob == 0.0);
            else CHECK(p.outage_prob == 1.0);
        }
    }

    TEST_CASE("deterministic channel gives the analytic step")
    {
        auto cfg = small_outage();
        cfg.deterministic_channel = true;
        cfg.elevations_deg = {90.0};
        cfg.tx_power_dbw = -118.0;
        cfg.n_elements = {1, 2, 4};
        cfg.trials = 10;
        const double noise = kBoltzmann * cfg.noise_temperature_k * cfg.bandwidth_hz;
        // SNR = P N^2 / noise; thresholds bracket each N's step
        std::vector<double> th;
        for (double n : {1.0, 2.0, 4.0}) {
            const double snr = std::pow(10.0, cfg.tx_power_dbw / 10.0) * n * n / noise;
            const double r = std::log2(1.0 + snr);
            th.push_back(r * (1.0 - 1e-9));
            th.push_back(r * (1.0 + 1e-9));
        }
        std::sort(th.begin(), th.end());
        cfg.rate_thresholds_bpcu = th;
        const auto res = run_outage_sweep(cfg);
        for (const auto& p : res.rows) {
            const double snr = std::pow(10.0, cfg.tx_power_dbw / 10.0) * double(p.n_elements * p.n_elements) / noise;
            const bool out = std::log2(1.0 + snr) < p.r_th_bpcu;
            CHECK(p.outage_prob == (out ? 1.0 : 0.0));
            CHECK(p.mean_snr_db == doctest::Approx(10.0 * std::log10(snr)));
        }
    }

    TEST_CASE("empty panel collapses to the direct link")
    {
        const auto cfg = small_case_study();
        const auto r = run_snr_case_study(cfg);
        const double none = find(r, Scheme::without_ris, 0, 10.0, 1.0).mean_snr_db;
        for (auto s : kAllSchemes) CHECK(find(r, s, 0, 10.0, 1.0).mean_snr_db == doctest::Approx(none).epsilon(1e-12));
        CHECK(find(r, Scheme::ao_distributed, 20, 10.0, 1.0).mean_snr_db > none);
    }

    TEST_CASE("case study ordering per scheme")
    {
        const auto cfg = small_case_study();
        const auto r = run_snr_case_study(cfg);
        for (auto n : cfg.n_elements) {
            const double ao = find(r, Scheme::ao_distributed, n, 10.0, 1.0).mean_snr_db;
            CHECK(ao >= find(r, Scheme::tx_ris_mrt, n, 10.0, 1.0).mean_snr_db);
            CHECK(ao >= find(r, Scheme::tx_su_mrt, n, 10.0, 1.0).mean_snr_db);
        }
    }

    TEST_CASE("contract violations")
    {
        auto cfg = small_outage();
        cfg.trials = 0;
        CHECK_THROWS_AS(run_outage_sweep(cfg), std::domain_error);
        cfg = small_outage();
        cfg.n_elements = {8, 4};
        CHECK_THROWS_AS(run_outage_sweep(cfg), std::invalid_argument);
        cfg = small_outage();
        cfg.altitude_km = -5.0;
        const auto d = cfg.diagnostics();
        REQUIRE(d.size() == 1);
        CHECK(d[0].find("altitude_km") == 0);
        CHECK(d[0].find("[200, 36000]") != std::string::npos);
        cfg = small_outage();
        cfg.tx_power_dbw = 5000.0;
        CHECK_THROWS_AS(run_outage_sweep(cfg), std::runtime_error);
    }
}
