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
#include "leoris/ris.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace leoris {

enum class Scheme { ao_distributed, tx_ris_mrt, tx_su_mrt, without_ris };

inline constexpr std::array kAllSchemes{Scheme::ao_distributed, Scheme::tx_ris_mrt, Scheme::tx_su_mrt,
                                        Scheme::without_ris};

std::string_view to_string(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view name);

enum class AoInit {
    from_tx_ris_mrt,
    from_tx_su_mrt,
    from_best_mrt,  ///< start from whichever MRT benchmark has the higher SNR
    random,
};

std::string_view to_string(AoInit init) noexcept;
AoInit parse_ao_init(std::string_view name);

struct AoConfig {
    int max_iterations = 50;
    double convergence_tol = 1e-6;  ///< relative SNR change between outer iterations
    AoInit init = AoInit::from_best_mrt;
    std::uint64_t random_seed = 0;  ///< only used by AoInit::random

    void validate() const;
};

struct BeamformerSolution {
    CVector w;
    RisState ris;
    std::vector<double> snr_trace_db;  ///< one entry per outer iteration, first entry is the start point
    Scheme scheme = Scheme::ao_distributed;
    Complex g{};
    double snr_linear = 0.0;
    double snr_db = kSnrFloorDb;
    int iterations = 0;
    bool converged = true;
    bool fallback = false;  ///< a degenerate channel forced a substitute beam
};

// Closed-form building blocks -------------------------------------------------

/// c = h_d + H1^H diag(a e^{-j theta}) r, so that g = c^H w for any beam w.
CVector composite_channel(const CascadedChannel& ch, const RisState& ris);

/// Unit beam along v with a canonical global phase (first significant entry real
/// and positive). A zero vector maps to the first unit vector.
CVector mrt_beam(const CVector& v);

/// Dominant right singular vector of h, canonical phase.
CVector principal_right_singular_vector(const CMatrix& h);

/// Transmit step: best beam for fixed RIS coefficients.
CVector transmit_step(const CascadedChannel& ch, const RisState& ris);

/// Reflection step: best RIS phases for a fixed beam. Every element is driven at
/// the panel's drive amplitude. Continuous panels co-phase each cascaded term with
/// the direct term (reference phase 0 when there is no direct term); quantized
/// panels get the exact discrete maximizer.
RisState reflection_step(const CascadedChannel& ch, const CVector& w, const RisPanel& panel);

/// Exact maximizer of |direct + sum_n amplitude t_n e^{j theta_n}| over theta_n on the
/// 2^bits grid. The optimum rounds every element toward one common reference phase,
/// so sweeping that reference over its N 2^bits breakpoints visits it.
std::vector<double> best_discrete_phases(Complex direct, const CVector& terms, double amplitude, int bits);

// Schemes ------------------------------------------------------------------------

BeamformerSolution ao_optimize(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget,
                               const AoConfig& cfg = {});

/// AO started from the given RIS configuration (used for grid restarts).
BeamformerSolution ao_optimize_from(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget,
                                    const AoConfig& cfg, const RisState& initial);

/// Beam matched to the transmitter->RIS link, RIS phases from the reflection step.
BeamformerSolution tx_ris_mrt(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget);

/// Beam matched to the direct link, RIS phases from the reflection step.
BeamformerSolution tx_su_mrt(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget);

/// Direct link only, RIS switched off.
BeamformerSolution without_ris(const CascadedChannel& ch, const LinkBudget& budget);

BeamformerSolution run_scheme(Scheme scheme, const CascadedChannel& ch, const RisPanel& panel,
                              const LinkBudget& budget, const AoConfig& cfg = {});

/// Largest N * bits the exhaustive search accepts.
inline constexpr int kBruteForceMaxBits = 24;

/// Exhaustive search of the RIS phase grid for a fixed beam. Throws
/// std::length_error when N * bits exceeds kBruteForceMaxBits.
RisState brute_force_phases(const CascadedChannel& ch, const CVector& w, int bits, const RisPanel& panel);

}  // namespace leoris
