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

#include "leoris/ris.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace leoris;

namespace {

CascadedChannel ones(std::size_t m, std::size_t n)
{
    return CascadedChannel{CVector::Ones(static_cast<Eigen::Index>(m)),
                           CMatrix::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)),
                           CVector::Ones(static_cast<Eigen::Index>(n))};
}

LinkBudget unit_budget()
{
    LinkBudget b;
    b.tx_power_dbw = 0.0;
    b.noise_temperature_k = 1.0 / kBoltzmann;
    b.bandwidth_hz = 1.0;
    return b;
}

}  // namespace

TEST_SUITE("ris")
{
    TEST_CASE("coherent unit case")
    {
        const auto ch = ones(1, 1);
        CHECK(effective_channel(ch, RisState::uniform(1, 1.0), CVector::Ones(1)) == Complex(2.0, 0.0));
    }

    TEST_CASE("switched-off panel leaves the direct path")
    {
        std::mt19937_64 rng(1);
        const auto ch = oracle::random_channel(3, 5, rng);
        CVector w = CVector::Random(3).normalized();
        CHECK(std::abs(effective_channel(ch, RisState::off(5), w) - ch.h_direct.dot(w)) < 1e-14);
    }

    TEST_CASE("matches term-by-term oracle")
    {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
        std::uniform_real_distribution<double> amp(0.0, 1.0);
        for (int k = 0; k < 50; ++k) {
            const auto ch = oracle::random_channel(2, 4, rng);
            RisState s = RisState::uniform(4, 1.0);
            for (std::size_t n = 0; n < 4; ++n) {
                s.phases_rad[n] = ph(rng);
                s.amplitudes[n] = amp(rng);
            }
            CVector w = CVector::Random(2).normalized();
            const Complex a = effective_channel(ch, s, w);
            const Complex b = oracle::effective_channel(ch, s.phases_rad, s.amplitudes, w);
            CHECK(std::abs(a - b) < 1e-12);
        }
    }

    TEST_CASE("linearity and contract checks")
    {
        std::mt19937_64 rng(3);
        auto ch = oracle::random_channel(2, 3, rng);
        const auto s = RisState::uniform(3, 1.0, 0.4);
        CVector w = CVector::Random(2).normalized();
        const Complex g = effective_channel(ch, s, w);
        auto scaled = ch;
        scaled.h_direct *= Complex(0.0, 2.0);
        scaled.h_ris_user *= Complex(0.0, 2.0);
        // conjugate-linear in both user-side channels
        CHECK(std::abs(effective_channel(scaled, s, w) - Complex(0.0, -2.0) * g) < 1e-12);
        CHECK_THROWS_AS(effective_channel(ch, s, CVector::Ones(2)), std::invalid_argument);
        CHECK_THROWS_AS(effective_channel(ch, RisState::uniform(2, 1.0), w), std::invalid_argument);
        CHECK_THROWS_AS(effective_channel(ch, s, CVector::Ones(3).normalized()), std::invalid_argument);
    }

    TEST_CASE("co-phased magnitude grows linearly in N")
    {
        for (std::size_t n : {1u, 2u, 5u, 64u, 800u}) {
            auto ch = ones(1, n);
            ch.h_direct.setZero();
            CHECK(std::abs(effective_channel(ch, RisState::uniform(n, 1.0), CVector::Ones(1))) ==
                  doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
        }
    }

    TEST_CASE("phase quantization")
    {
        const std::vector<double> zero{0.0};
        for (int bits = 1; bits <= 6; ++bits) CHECK(quantize_phases(zero, bits)[0] == 0.0);
        const std::vector<double> third{std::numbers::pi / 3.0};
        CHECK(quantize_phases(third, 1)[0] == 0.0);
        // exact tie between 0 and pi/2 goes to the lower index
        const std::vector<double> tie{std::numbers::pi / 4.0};
        CHECK(quantize_phases(tie, 2)[0] == 0.0);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> ph(-10.0, 10.0);
        for (int bits = 1; bits <= 5; ++bits) {
            for (int i = 0; i < 200; ++i) {
                const double x = ph(rng);
                const std::vector<double> in{x};
                const double q = quantize_phases(in, bits)[0];
                CHECK(q >= 0.0);
                CHECK(q < 2.0 * std::numbers::pi);
                const double diff = std::abs(std::remainder(q - x, 2.0 * std::numbers::pi));
                CHECK(diff <= std::numbers::pi / (1 << bits) + 1e-12);
            }
        }
    }

    TEST_CASE("received SNR")
    {
        const auto b = unit_budget();
        CHECK(received_snr_db(Complex(1.0, 0.0), b) == doctest::Approx(0.0));
        CHECK(received_snr_db(Complex{}, b) == kSnrFloorDb);
        CHECK(snr_to_db(0.0) == kSnrFloorDb);
    }

    TEST_CASE("active RIS adds re-radiated noise")
    {
        const auto b = unit_budget();
        CascadedChannel ch{CVector::Ones(1), CMatrix::Ones(2, 1), CVector(2)};
        ch.h_ris_user << Complex(0.5, 0.0), Complex(0.0, 2.0);
        const auto panel = RisPanel::active(2, 2.0, 1.0 / kBoltzmann);
        const auto s = RisState::uniform(2, 2.0);
        const Complex g(3.0, 1.0);
        // sigma^2 = 1, sigma_v^2 = 1, sum a^2 |r|^2 = 4 (0.25 + 4) = 17
        CHECK(received_snr_linear(g, b, panel, s, ch) == doctest::Approx(10.0 / 18.0));
        const auto passive = RisPanel::passive(2);
        CHECK(received_snr_linear(g, b, passive, RisState::uniform(2, 1.0), ch) == doctest::Approx(10.0));
    }

    TEST_CASE("passive SNR ignores a common phase rotation")
    {
        std::mt19937_64 rng(8);
        const auto ch = oracle::random_channel(3, 6, rng);
        RisState s = RisState::uniform(6, 1.0);
        for (std::size_t n = 0; n < 6; ++n) s.phases_rad[n] = 0.3 * n;
        CVector w = CVector::Random(3).normalized();
        const double base = std::norm(effective_channel(ch, s, w));
        const double phi = 1.234;
        RisState r = s;
        for (auto& p : r.phases_rad) p += phi;
        // rotating w by phi rotates the direct term by phi too
        CVector wr = w * std::polar(1.0, phi);
        auto ch_no_direct = ch;
        ch_no_direct.h_direct.setZero();
        CHECK(std::norm(effective_channel(ch_no_direct, r, w)) ==
              doctest::Approx(std::norm(effective_channel(ch_no_direct, s, w))));
        CHECK(std::norm(effective_channel(ch, s, wr)) == doctest::Approx(base));
    }

    TEST_CASE("panel and state validation")
    {
        CHECK_THROWS(RisPanel{4, RisMode::passive, 0, 2.0, 290.0}.validate());
        CHECK_THROWS(RisPanel{4, RisMode::passive, 17, 1.0, 290.0}.validate());
        const auto p = RisPanel::passive(3);
        CHECK_THROWS(RisState::uniform(2, 1.0).validate(p));
        CHECK_THROWS(RisState::uniform(3, 1.5).validate(p));
        CHECK_NOTHROW(RisState::off(3).validate(p));
        for (auto m : {RisMode::passive, RisMode::active}) CHECK(parse_ris_mode(to_string(m)) == m);
    }

    TEST_CASE("leading elements keep the prefix")
    {
        std::mt19937_64 rng(9);
        const auto ch = oracle::random_channel(2, 8, rng);
        const auto sub = ch.leading_elements(3);
        CHECK(sub.n_elements() == 3);
        CHECK(sub.h_sat_ris == ch.h_sat_ris.topRows(3));
        CHECK(sub.h_ris_user == ch.h_ris_user.head(3));
        CHECK(sub.h_direct == ch.h_direct);
    }
}
