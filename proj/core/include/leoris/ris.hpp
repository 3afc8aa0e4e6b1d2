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

#pragma once

#include "leoris/channel.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace leoris {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Serialized SNR for a zero effective channel; keeps CSV columns numeric.
inline constexpr double kSnrFloorDb = -400.0;

enum class RisMode { passive, active };

std::string_view to_string(RisMode mode) noexcept;
RisMode parse_ris_mode(std::string_view name);

struct RisPanel {
    std::size_t n_elements = 0;
    RisMode mode = RisMode::passive;
    int phase_bits = 0;  ///< 0 means continuous phases
    double max_amplitude = 1.0;
    double ris_noise_temperature_k = 290.0;  ///< active mode only

    static RisPanel passive(std::size_t n, int bits = 0);
    static RisPanel active(std::size_t n, double max_amplitude, double noise_temperature_k);

    void validate() const;
    /// Amplitude every element is driven at once configured.
    double drive_amplitude() const noexcept { return mode == RisMode::passive ? 1.0 : max_amplitude; }
};

/// Per-element reflection coefficients a_n e^{j theta_n}. An amplitude of 0
/// switches the element off.
struct RisState {
    std::vector<double> phases_rad;
    std::vector<double> amplitudes;

    static RisState uniform(std::size_t n, double amplitude, double phase_rad = 0.0);
    static RisState off(std::size_t n) { return uniform(n, 0.0); }

    std::size_t size() const noexcept { return phases_rad.size(); }
    void validate(const RisPanel& panel) const;
};

/// Direct and reflected channel for one realization with M transmit antennas and
/// N RIS elements. Coefficients include path loss and antenna gains.
struct CascadedChannel {
    CVector h_direct;    ///< M, transmitter -> user
    CMatrix h_sat_ris;   ///< N x M, transmitter -> RIS
    CVector h_ris_user;  ///< N, RIS -> user

    std::size_t tx_antennas() const noexcept { return static_cast<std::size_t>(h_direct.size()); }
    std::size_t n_elements() const noexcept { return static_cast<std::size_t>(h_ris_user.size()); }

    /// Throws std::invalid_argument on inconsistent sizes or non-finite entries.
    void validate() const;
    /// Same realization restricted to the first n RIS elements.
    CascadedChannel leading_elements(std::size_t n) const;
};

/// g = h_d^H w + sum_n conj(r_n) a_n e^{j theta_n} (H1 w)_n
Complex effective_channel(const CascadedChannel& ch, const RisState& ris, const CVector& w);

/// Per-element cascaded coefficients t_n = conj(r_n) (H1 w)_n, before the RIS coefficient.
CVector cascaded_terms(const CascadedChannel& ch, const CVector& w);

/// Snaps each phase to the nearest point of the 2^bits grid k 2 pi / 2^bits.
/// Ties go to the lower grid index. Results lie in [0, 2 pi).
std::vector<double> quantize_phases(std::span<const double> phases, int bits);

/// Wraps any angle to [0, 2 pi).
double wrap_phase(double phase_rad) noexcept;

/// Linear SNR. Passive: P |g|^2 / sigma^2.
double received_snr_linear(Complex g, const LinkBudget& budget);
/// Active mode adds sigma_v^2 sum_n a_n^2 |r_n|^2 to the denominator, with
/// sigma_v^2 = k T_ris B thermal noise amplified and re-radiated by each element.
double received_snr_linear(Complex g, const LinkBudget& budget, const RisPanel& panel, const RisState& ris,
                           const CascadedChannel& ch);

double received_snr_db(Complex g, const LinkBudget& budget);
double received_snr_db(Complex g, const LinkBudget& budget, const RisPanel& panel, const RisState& ris,
                       const CascadedChannel& ch);

/// 10 log10 with the kSnrFloorDb sentinel for zero.
double snr_to_db(double snr_linear) noexcept;

}  // namespace leoris
