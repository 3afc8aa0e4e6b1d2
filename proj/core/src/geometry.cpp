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

#include "leoris/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leoris {

namespace {

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

void check_elevation(double elevation_deg)
{
    if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0)) {
        throw std::domain_error("elevation_deg must lie in [0, 90], got " + std::to_string(elevation_deg));
    }
}

}  // namespace

void EarthModel::validate() const
{
    if (!(radius_km > 0.0)) throw std::domain_error("EarthModel: radius_km must be > 0");
    if (!(gravitational_parameter_km3_s2 > 0.0))
        throw std::domain_error("EarthModel: gravitational_parameter_km3_s2 must be > 0");
}

OrbitSpec::OrbitSpec(double altitude_km) : altitude_km_(altitude_km)
{
    if (!(altitude_km >= kMinAltitudeKm && altitude_km <= kMaxAltitudeKm)) {
        throw std::domain_error("OrbitSpec: altitude_km must lie in [200, 36000], got " +
                                std::to_string(altitude_km));
    }
}

double slant_range_km(const OrbitSpec& orbit, double elevation_deg, const EarthModel& earth)
{
    check_elevation(elevation_deg);
    earth.validate();
    const double re = earth.radius_km;
    const double h = orbit.altitude_km();
    if (elevation_deg == 90.0) return h;
    const double s = std::sin(deg2rad(elevation_deg));
    return std::sqrt(re * re * s * s + 2.0 * re * h + h * h) - re * s;
}

double orbital_velocity_km_s(const OrbitSpec& orbit, const EarthModel& earth)
{
    earth.validate();
    return std::sqrt(earth.gravitational_parameter_km3_s2 / (earth.radius_km + orbit.altitude_km()));
}

double max_doppler_hz(const OrbitSpec& orbit, double carrier_hz, double elevation_deg, const EarthModel& earth)
{
    if (!(carrier_hz >= 0.0)) throw std::domain_error("max_doppler_hz: carrier_hz must be >= 0");
    check_elevation(elevation_deg);
    if (carrier_hz == 0.0 || elevation_deg == 90.0) return 0.0;
    const double v = orbital_velocity_km_s(orbit, earth);
    const double projection = earth.radius_km / (earth.radius_km + orbit.altitude_km());
    return carrier_hz / kSpeedOfLightKmS * v * projection * std::cos(deg2rad(elevation_deg));
}

double differential_doppler_hz(const OrbitSpec& orbit, double carrier_hz, double elevation_a_deg,
                               double elevation_b_deg, const EarthModel& earth)
{
    return std::abs(max_doppler_hz(orbit, carrier_hz, elevation_a_deg, earth) -
                    max_doppler_hz(orbit, carrier_hz, elevation_b_deg, earth));
}

double propagation_delay_ms(double slant_range_km, int legs)
{
    if (legs < 1) throw std::domain_error("propagation_delay_ms: legs must be >= 1");
    if (!(slant_range_km >= 0.0)) throw std::domain_error("propagation_delay_ms: slant range must be >= 0");
    return 1e3 * legs * slant_range_km / kSpeedOfLightKmS;
}

GeometryState make_geometry_state(const OrbitSpec& orbit, double carrier_hz, double elevation_deg,
                                  const EarthModel& earth)
{
    return GeometryState{
        .elevation_deg = elevation_deg,
        .slant_range_km = slant_range_km(orbit, elevation_deg, earth),
        .orbital_velocity_km_s = orbital_velocity_km_s(orbit, earth),
        .max_doppler_hz = max_doppler_hz(orbit, carrier_hz, elevation_deg, earth),
    };
}

}  // namespace leoris
