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

#include <cstddef>
#include <memory>
#include <string_view>

namespace leoris {

/// Subcarrier spacing is always bandwidth / n_subcarriers.
class OfdmGrid {
public:
    OfdmGrid(std::size_t n_subcarriers, double bandwidth_hz);

    std::size_t n_subcarriers() const noexcept { return n_subcarriers_; }
    double bandwidth_hz() const noexcept { return bandwidth_hz_; }
    double subcarrier_spacing_hz() const noexcept { return bandwidth_hz_ / static_cast<double>(n_subcarriers_); }

private:
    std::size_t n_subcarriers_;
    double bandwidth_hz_;
};

enum class CompensationKind {
    none,      ///< no RIS-side handling; full Doppler offset remains
    indirect,  ///< RIS phases track channel phases only; Doppler offset untouched
    direct,    ///< RIS tracks the Doppler phase ramp, leaving a residual fraction
};

std::string_view to_string(CompensationKind kind) noexcept;
CompensationKind parse_compensation(std::string_view name);

struct CompensationMode {
    CompensationKind kind = CompensationKind::indirect;
    double direct_residual_factor = 0.01;

    void validate() const;
};

struct OutageSpec {
    double rate_threshold_bpcu = 1.0;

    void validate() const;
};

/// Carrier offset normalized to the subcarrier spacing, before wrapping.
double residual_cfo(double doppler_hz, const OfdmGrid& grid, const CompensationMode& mode);

/// Removes the integer part of a normalized offset; the result lies in [-0.5, 0.5].
/// Integer offsets are taken as corrected by the receiver's frame timing and map to 0.
double wrap_cfo(double epsilon) noexcept;

/// sin(pi x) / (pi x), 1 at 0.
double sinc(double x) noexcept;

/// SINR of one subcarrier under a residual normalized offset.
class IciModel {
public:
    virtual ~IciModel() = default;
    virtual double sinr(double snr_linear, double epsilon) const = 0;
};

/// Single-tap CFO model: S sinc^2(e) / (1 + S (1 - sinc^2(e))), e wrapped first.
class SincIciModel final : public IciModel {
public:
    double sinr(double snr_linear, double epsilon) const override;
};

/// Convenience wrapper around SincIciModel.
double ici_sinr(double snr_linear, double epsilon);

/// log2(1 + sinr) in bits per channel use.
double achievable_rate(double sinr_linear);

/// True iff rate < R_th (strict).
bool outage_indicator(double rate_bpcu, const OutageSpec& spec);

}  // namespace leoris
