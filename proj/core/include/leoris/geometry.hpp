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

// Circular-orbit geometry over a spherical, non-rotating Earth.

namespace leoris {

inline constexpr double kSpeedOfLightKmS = 299792.458;
inline constexpr double kSpeedOfLightMS = 299792458.0;

struct EarthModel {
    double radius_km = 6371.0;
    double gravitational_parameter_km3_s2 = 398600.4418;

    /// Throws std::domain_error on non-positive constants.
    void validate() const;
};

/// Orbit altitude, restricted to [200, 36000] km at construction.
class OrbitSpec {
public:
    static constexpr double kMinAltitudeKm = 200.0;
    static constexpr double kMaxAltitudeKm = 36000.0;

    explicit OrbitSpec(double altitude_km);

    double altitude_km() const noexcept { return altitude_km_; }

private:
    double altitude_km_;
};

/// Snapshot of one satellite/terminal pair.
struct GeometryState {
    double elevation_deg = 90.0;
    double slant_range_km = 0.0;
    double orbital_velocity_km_s = 0.0;
    double max_doppler_hz = 0.0;
};

/// Distance from a ground terminal to the satellite at the given elevation.
/// d = sqrt(Re^2 sin^2(el) + 2 Re h + h^2) - Re sin(el)
double slant_range_km(const OrbitSpec& orbit, double elevation_deg, const EarthModel& earth = {});

/// v = sqrt(mu / (Re + h))
double orbital_velocity_km_s(const OrbitSpec& orbit, const EarthModel& earth = {});

/// Doppler seen by a fixed terminal: (fc / c) * v * Re / (Re + h) * cos(el).
/// Largest at the horizon, zero at zenith.
double max_doppler_hz(const OrbitSpec& orbit, double carrier_hz, double elevation_deg,
                      const EarthModel& earth = {});

/// Doppler spread between two terminals seeing the satellite at different elevations
/// (e.g. the two edges of a beam footprint).
double differential_doppler_hz(const OrbitSpec& orbit, double carrier_hz, double elevation_a_deg,
                               double elevation_b_deg, const EarthModel& earth = {});

/// One-way delay over `legs` hops of length `slant_range_km`, in milliseconds.
/// A transparent-payload round trip is 4 legs (gateway up/down, terminal up/down).
double propagation_delay_ms(double slant_range_km, int legs);

GeometryState make_geometry_state(const OrbitSpec& orbit, double carrier_hz, double elevation_deg,
                                  const EarthModel& earth = {});

}  // namespace leoris
