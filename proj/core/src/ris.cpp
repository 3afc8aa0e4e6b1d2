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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leoris {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string_view to_string(RisMode mode) noexcept
{
    return mode == RisMode::passive ? "passive" : "active";
}

RisMode parse_ris_mode(std::string_view name)
{
    if (name == "passive") return RisMode::passive;
    if (name == "active") return RisMode::active;
    throw std::invalid_argument("unknown RIS mode '" + std::string(name) + "'");
}

RisPanel RisPanel::passive(std::size_t n, int bits)
{
    RisPanel p;
    p.n_elements = n;
    p.phase_bits = bits;
    p.validate();
    return p;
}

RisPanel RisPanel::active(std::size_t n, double max_amplitude, double noise_temperature_k)
{
    RisPanel p;
    p.n_elements = n;
    p.mode = RisMode::active;
    p.max_amplitude = max_amplitude;
    p.ris_noise_temperature_k = noise_temperature_k;
    p.validate();
    return p;
}

void RisPanel::validate() const
{
    if (phase_bits < 0) throw std::invalid_argument("RisPanel: phase_bits must be >= 0");
    if (phase_bits > 16) throw std::invalid_argument("RisPanel: phase_bits must be <= 16");
    if (mode == RisMode::passive && max_amplitude != 1.0) {
        throw std::invalid_argument("RisPanel: passive panels have max_amplitude 1");
    }
    if (!(max_amplitude >= 1.0)) throw std::invalid_argument("RisPanel: max_amplitude must be >= 1");
    if (mode == RisMode::active && !(ris_noise_temperature_k > 0.0)) {
        throw std::invalid_argument("RisPanel: active panels need a positive noise temperature");
    }
}

RisState RisState::uniform(std::size_t n, double amplitude, double phase_rad)
{
    return RisState{std::vector<double>(n, wrap_phase(phase_rad)), std::vector<double>(n, amplitude)};
}

void RisState::validate(const RisPanel& panel) const
{
    if (phases_rad.size() != panel.n_elements || amplitudes.size() != panel.n_elements) {
        throw std::invalid_argument("RisState: size does not match panel");
    }
    const int levels = panel.phase_bits > 0 ? 1 << panel.phase_bits : 0;
    for (std::size_t n = 0; n < phases_rad.size(); ++n) {
        if (!(phases_rad[n] >= 0.0 && phases_rad[n] < kTwoPi)) {
            throw std::invalid_argument("RisState: phase outside [0, 2 pi)");
        }
        if (!(amplitudes[n] >= 0.0 && amplitudes[n] <= panel.max_amplitude)) {
            throw std::invalid_argument("RisState: amplitude outside [0, max_amplitude]");
        }
        if (levels > 0) {
            const double k = phases_rad[n] / (kTwoPi / levels);
            if (std::abs(k - std::round(k)) > 1e-9) {
                throw std::invalid_argument("RisState: phase not on the quantization grid");
            }
        }
    }
}

void CascadedChannel::validate() const
{
    const auto m = h_direct.size();
    const auto n = h_ris_user.size();
    if (h_sat_ris.rows() != n || h_sat_ris.cols() != m) {
        throw std::invalid_argument("CascadedChannel: h_sat_ris must be N x M (" + std::to_string(n) + " x " +
                                    std::to_string(m) + ")");
    }
    if (!h_direct.allFinite() || !h_sat_ris.allFinite() || !h_ris_user.allFinite()) {
        throw std::invalid_argument("CascadedChannel: non-finite entries");
    }
}

CascadedChannel CascadedChannel::leading_elements(std::size_t n) const
{
    if (n > n_elements()) throw std::invalid_argument("leading_elements: n exceeds element count");
    const auto rows = static_cast<Eigen::Index>(n);
    return CascadedChannel{h_direct, h_sat_ris.topRows(rows), h_ris_user.head(rows)};
}

CVector cascaded_terms(const CascadedChannel& ch, const CVector& w)
{
    return ch.h_ris_user.conjugate().cwiseProduct(ch.h_sat_ris * w);
}

Complex effective_channel(const CascadedChannel& ch, const RisState& ris, const CVector& w)
{
    if (w.size() != ch.h_direct.size() || ch.h_sat_ris.cols() != w.size() ||
        ch.h_sat_ris.rows() != ch.h_ris_user.size()) {
        throw std::invalid_argument("effective_channel: dimension mismatch");
    }
    if (ris.size() != ch.n_elements() || ris.amplitudes.size() != ch.n_elements()) {
        throw std::invalid_argument("effective_channel: RIS state size does not match channel");
    }
    if (std::abs(w.norm() - 1.0) > 1e-9) throw std::invalid_argument("effective_channel: beam must have unit norm");

    Complex g = ch.h_direct.dot(w);  // Eigen's dot conjugates the left operand
    if (ch.n_elements() == 0) return g;
    const CVector terms = cascaded_terms(ch, w);
    for (Eigen::Index n = 0; n < terms.size(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        g += terms[n] * std::polar(ris.amplitudes[i], ris.phases_rad[i]);
    }
    return g;
}

double wrap_phase(double phase_rad) noexcept
{
    double r = std::fmod(phase_rad, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

std::vector<double> quantize_phases(std::span<const double> phases, int bits)
{
    if (bits < 1) throw std::invalid_argument("quantize_phases: bits must be >= 1");
    const long levels = 1L << bits;
    const double step = kTwoPi / static_cast<double>(levels);
    std::vector<double> out;
    out.reserve(phases.size());
    for (double phase : phases) {
        const double x = wrap_phase(phase) / step;
        // ceil(x - 1/2) resolves exact ties toward the lower index
        long k = static_cast<long>(std::ceil(x - 0.5));
        k %= levels;
        out.push_back(static_cast<double>(k) * step);
    }
    return out;
}

double snr_to_db(double snr_linear) noexcept
{
    if (!(snr_linear > 0.0)) return kSnrFloorDb;
    return std::max(kSnrFloorDb, 10.0 * std::log10(snr_linear));
}

double received_snr_linear(Complex g, const LinkBudget& budget)
{
    const double noise = budget.noise_power_w();
    if (!(noise > 0.0)) throw std::domain_error("received_snr: noise power must be > 0");
    return budget.tx_power_w() * std::norm(g) / noise;
}

double received_snr_linear(Complex g, const LinkBudget& budget, const RisPanel& panel, const RisState& ris,
                           const CascadedChannel& ch)
{
    if (panel.mode == RisMode::passive) return received_snr_linear(g, budget);
    const double noise = budget.noise_power_w();
    if (!(noise > 0.0)) throw std::domain_error("received_snr: noise power must be > 0");
    if (ris.size() != ch.n_elements()) throw std::invalid_argument("received_snr: RIS/channel size mismatch");
    const double ris_noise = kBoltzmann * panel.ris_noise_temperature_k * budget.bandwidth_hz;
    double reradiated = 0.0;
    for (std::size_t n = 0; n < ris.size(); ++n) {
        const double a = ris.amplitudes[n];
        reradiated += a * a * std::norm(ch.h_ris_user[static_cast<Eigen::Index>(n)]);
    }
    return budget.tx_power_w() * std::norm(g) / (noise + ris_noise * reradiated);
}

double received_snr_db(Complex g, const LinkBudget& budget) { return snr_to_db(received_snr_linear(g, budget)); }

double received_snr_db(Complex g, const LinkBudget& budget, const RisPanel& panel, const RisState& ris,
                       const CascadedChannel& ch)
{
    return snr_to_db(received_snr_linear(g, budget, panel, ris, ch));
}

}  // namespace leoris
