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

#include "leoris/doppler_ofdm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leoris {

OfdmGrid::OfdmGrid(std::size_t n_subcarriers, double bandwidth_hz)
    : n_subcarriers_(n_subcarriers), bandwidth_hz_(bandwidth_hz)
{
    if (n_subcarriers == 0) throw std::invalid_argument("OfdmGrid: n_subcarriers must be > 0");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("OfdmGrid: bandwidth_hz must be > 0");
}

std::string_view to_string(CompensationKind kind) noexcept
{
    switch (kind) {
    case CompensationKind::none: return "none";
    case CompensationKind::indirect: return "indirect";
    case CompensationKind::direct: return "direct";
    }
    return "unknown";
}

CompensationKind parse_compensation(std::string_view name)
{
    for (auto k : {CompensationKind::none, CompensationKind::indirect, CompensationKind::direct}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown compensation mode '" + std::string(name) + "'");
}

void CompensationMode::validate() const
{
    if (!(direct_residual_factor >= 0.0 && direct_residual_factor <= 1.0)) {
        throw std::invalid_argument("CompensationMode: direct_residual_factor must lie in [0, 1]");
    }
}

void OutageSpec::validate() const
{
    if (!(rate_threshold_bpcu >= 0.0)) throw std::invalid_argument("OutageSpec: rate threshold must be >= 0");
}

double residual_cfo(double doppler_hz, const OfdmGrid& grid, const CompensationMode& mode)
{
    if (!(doppler_hz >= 0.0)) throw std::domain_error("residual_cfo: Doppler must be >= 0");
    mode.validate();
    const double epsilon = doppler_hz / grid.subcarrier_spacing_hz();
    return mode.kind == CompensationKind::direct ? mode.direct_residual_factor * epsilon : epsilon;
}

double wrap_cfo(double epsilon) noexcept { return epsilon - std::round(epsilon); }

double sinc(double x) noexcept
{
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

double SincIciModel::sinr(double snr_linear, double epsilon) const
{
    if (!(snr_linear >= 0.0)) throw std::domain_error("ici_sinr: SNR must be >= 0");
    const double e = wrap_cfo(epsilon);
    if (e == 0.0) return snr_linear;
    const double s2 = sinc(e) * sinc(e);
    return snr_linear * s2 / (1.0 + snr_linear * (1.0 - s2));
}

double ici_sinr(double snr_linear, double epsilon) { return SincIciModel{}.sinr(snr_linear, epsilon); }

double achievable_rate(double sinr_linear)
{
    if (!(sinr_linear >= 0.0)) throw std::domain_error("achievable_rate: SINR must be >= 0");
    return std::log2(1.0 + sinr_linear);
}

bool outage_indicator(double rate_bpcu, const OutageSpec& spec) { return rate_bpcu < spec.rate_threshold_bpcu; }

}  // namespace leoris
