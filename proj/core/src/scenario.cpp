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

#include "leoris/scenario.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace leoris {

using json = nlohmann::json;

namespace {

std::string join_diagnostics(const std::vector<std::string>& diagnostics)
{
    std::string out = "invalid scenario";
    for (const auto& d : diagnostics) out += "\n  " + d;
    return out;
}

std::string format_number(double v)
{
    std::ostringstream s;
    s << v;
    return s.str();
}

/// Schema walker: collects every problem instead of stopping at the first.
class Reader {
public:
    explicit Reader(std::vector<std::string>& diagnostics) : diagnostics_(diagnostics) {}

    void fail(const std::string& where, const std::string& message) { diagnostics_.push_back(where + ": " + message); }

    bool check_object(const json& node, const std::string& where, std::initializer_list<std::string_view> allowed)
    {
        if (!node.is_object()) {
            fail(where.empty() ? "document" : where, "expected an object");
            return false;
        }
        for (const auto& [key, _] : node.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(path(where, key), "unknown key");
            }
        }
        return true;
    }

    const json* child(const json& node, const std::string& where, const std::string& key, bool required)
    {
        if (!node.is_object()) return nullptr;
        const auto it = node.find(key);
        if (it == node.end()) {
            if (required) fail(path(where, key), "required key is missing");
            return nullptr;
        }
        return &*it;
    }

    void number(const json& node, const std::string& where, const std::string& key, double& out, bool required)
    {
        if (const auto* v = child(node, where, key, required)) {
            if (v->is_number()) out = v->get<double>();
            else fail(path(where, key), "expected a number");
        }
    }

    template <class Int>
    void integer(const json& node, const std::string& where, const std::string& key, Int& out, bool required)
    {
        if (const auto* v = child(node, where, key, required)) {
            if (v->is_number_unsigned()) out = static_cast<Int>(v->get<std::uint64_t>());
            else if (v->is_number_integer()) fail(path(where, key), "must be >= 0 (got " + v->dump() + ")");
            else fail(path(where, key), "expected a non-negative integer");
        }
    }

    void boolean(const json& node, const std::string& where, const std::string& key, bool& out, bool required)
    {
        if (const auto* v = child(node, where, key, required)) {
            if (v->is_boolean()) out = v->get<bool>();
            else fail(path(where, key), "expected true or false");
        }
    }

    bool string(const json& node, const std::string& where, const std::string& key, std::string& out, bool required)
    {
        if (const auto* v = child(node, where, key, required)) {
            if (v->is_string()) {
                out = v->get<std::string>();
                return true;
            }
            fail(path(where, key), "expected a string");
        }
        return false;
    }

    void numbers(const json& node, const std::string& where, const std::string& key, std::vector<double>& out,
                 bool required)
    {
        if (const auto* v = child(node, where, key, required)) {
            if (v->is_number()) {
                out = {v->get<double>()};
                return;
            }
            if (!v->is_array() || v->empty()) {
                fail(path(where, key), "expected a number or a non-empty array of numbers");
                return;
            }
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number()) {
                    fail(path(where, key), "expected only numbers");
                    return;
                }
                out.push_back(e.get<double>());
            }
        }
    }

    void sizes(const json& node, const std::string& where, const std::string& key, std::vector<std::size_t>& out,
               bool required)
    {
        if (const auto* v = child(node, where, key, required)) {
            if (!v->is_array() || v->empty()) {
                fail(path(where, key), "expected a non-empty array of non-negative integers");
                return;
            }
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number_unsigned()) {
                    fail(path(where, key), "expected only non-negative integers");
                    return;
                }
                out.push_back(e.get<std::size_t>());
            }
        }
    }

    static std::string path(const std::string& where, const std::string& key)
    {
        return where.empty() ? key : where + "." + key;
    }

private:
    std::vector<std::string>& diagnostics_;
};

template <class Fn>
void parse_enum(Reader& r, const std::string& where, const std::string& text, Fn&& fn)
{
    try {
        fn(text);
    } catch (const std::invalid_argument& e) {
        r.fail(where, e.what());
    }
}

std::string los_rows_to_text(const json& rows, Reader& r, const std::string& where)
{
    std::ostringstream text;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_string() || !row[1].is_number() || !row[2].is_number()) {
            r.fail(where, "inline rows must be [environment, elevation_deg, p_los]");
            return {};
        }
        text << row[0].get<std::string>() << ' ' << row[1].get<double>() << ' ' << row[2].get<double>() << '\n';
    }
    return text.str();
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioIoError("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json los_table_rows(const LosTable& table)
{
    json rows = json::array();
    for (auto env : kAllEnvironments) {
        for (double elev : LosTable::kGridDeg) {
            try {
                rows.push_back(json::array({std::string(to_string(env)), elev, table.at(env, elev)}));
            } catch (const std::out_of_range&) {
                break;
            }
        }
    }
    return rows;
}

json to_canonical_json(const ScenarioConfig& c)
{
    json schemes = json::array();
    for (auto s : c.schemes) schemes.push_back(std::string(to_string(s)));
    json doc = {
        {"name", c.name},
        {"study", std::string(to_string(c.study))},
        {"carrier_hz", c.carrier_hz},
        {"altitude_km", c.altitude_km},
        {"elevations_deg", c.elevations_deg},
        {"environment", std::string(to_string(c.environment))},
        {"tx", {{"antennas", c.tx_antennas}, {"power_dbw", c.tx_power_dbw}, {"gain_dbi", c.tx_gain_dbi}}},
        {"rx", {{"gain_dbi", c.rx_gain_dbi}, {"noise_temperature_k", c.noise_temperature_k}}},
        {"ofdm",
         {{"n_subcarriers", c.n_subcarriers},
          {"bandwidth_hz", c.bandwidth_hz},
          {"subcarrier_samples", c.subcarrier_samples}}},
        {"fading",
         {{"preset", c.fading_preset},
          {"params", {{"b", c.fading.b}, {"m", c.fading.m}, {"omega", c.fading.omega}}},
          {"deterministic", c.deterministic_channel}}},
        {"los_table", los_table_rows(c.los_table)},
        {"ris",
         {{"n_elements", c.n_elements},
          {"mode", std::string(to_string(c.panel.mode))},
          {"phase_bits", c.panel.phase_bits},
          {"max_amplitude", c.panel.max_amplitude},
          {"noise_temperature_k", c.panel.ris_noise_temperature_k},
          {"element_gain_dbi", c.ris_element_gain_dbi}}},
        {"links",
         {{"direct_link", c.direct_link},
          {"clutter_loss_db", c.clutter_loss_db},
          {"ris_altitude_km", c.ris_altitude_km},
          {"ris_elevation_deg", c.ris_elevation_deg},
          {"isl_distance_km", c.isl_distance_km},
          {"ris_user_clutter_loss_db", c.ris_user_clutter_loss_db},
          {"ris_user_distance_km", c.ris_user_distance_km}}},
        {"compensation",
         {{"mode", std::string(to_string(c.compensation.kind))},
          {"direct_residual_factor", c.compensation.direct_residual_factor}}},
        {"outage", {{"rate_thresholds_bpcu", c.rate_thresholds_bpcu}}},
        {"optimizer",
         {{"max_iterations", c.optimizer.max_iterations},
          {"convergence_tol", c.optimizer.convergence_tol},
          {"init", std::string(to_string(c.optimizer.init))}}},
        {"schemes", schemes},
        {"monte_carlo", {{"trials", c.trials}, {"master_seed", c.master_seed}}},
    };
    return doc;
}

}  // namespace

ScenarioValidationError::ScenarioValidationError(std::vector<std::string> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

LoadedScenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                              const ScenarioOverrides& overrides)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioValidationError({std::string("document: not valid JSON: ") + e.what()});
    }

    std::vector<std::string> diags;
    Reader r(diags);
    ScenarioConfig c;
    if (!r.check_object(doc, "",
                        {"name", "study", "carrier_hz", "altitude_km", "elevations_deg", "environment", "tx", "rx",
                         "ofdm", "fading", "los_table", "ris", "links", "compensation", "outage", "optimizer",
                         "schemes", "monte_carlo", "description"})) {
        throw ScenarioValidationError(diags);
    }

    r.string(doc, "", "name", c.name, true);
    std::string text_value;
    if (r.string(doc, "", "study", text_value, true)) {
        parse_enum(r, "study", text_value, [&](const std::string& s) { c.study = parse_study(s); });
    }
    r.number(doc, "", "carrier_hz", c.carrier_hz, true);
    r.number(doc, "", "altitude_km", c.altitude_km, true);
    r.numbers(doc, "", "elevations_deg", c.elevations_deg, true);
    if (r.string(doc, "", "environment", text_value, false)) {
        parse_enum(r, "environment", text_value, [&](const std::string& s) { c.environment = parse_environment(s); });
    }

    if (const auto* tx = r.child(doc, "", "tx", true); tx && r.check_object(*tx, "tx", {"antennas", "power_dbw", "gain_dbi"})) {
        r.integer(*tx, "tx", "antennas", c.tx_antennas, true);
        r.number(*tx, "tx", "power_dbw", c.tx_power_dbw, true);
        r.number(*tx, "tx", "gain_dbi", c.tx_gain_dbi, false);
    }
    if (const auto* rx = r.child(doc, "", "rx", true); rx && r.check_object(*rx, "rx", {"gain_dbi", "noise_temperature_k"})) {
        r.number(*rx, "rx", "gain_dbi", c.rx_gain_dbi, false);
        r.number(*rx, "rx", "noise_temperature_k", c.noise_temperature_k, true);
    }
    if (const auto* ofdm = r.child(doc, "", "ofdm", true);
        ofdm && r.check_object(*ofdm, "ofdm", {"n_subcarriers", "bandwidth_hz", "subcarrier_spacing_hz", "subcarrier_samples"})) {
        r.integer(*ofdm, "ofdm", "n_subcarriers", c.n_subcarriers, true);
        r.number(*ofdm, "ofdm", "bandwidth_hz", c.bandwidth_hz, true);
        r.integer(*ofdm, "ofdm", "subcarrier_samples", c.subcarrier_samples, false);
        double spacing = 0.0;
        if (r.child(*ofdm, "ofdm", "subcarrier_spacing_hz", false)) {
            r.number(*ofdm, "ofdm", "subcarrier_spacing_hz", spacing, false);
            if (c.n_subcarriers > 0) {
                const double implied = c.bandwidth_hz / static_cast<double>(c.n_subcarriers);
                if (std::abs(spacing - implied) > 1e-9 * implied) {
                    r.fail("ofdm.subcarrier_spacing_hz",
                           "declared " + format_number(spacing) + " Hz but bandwidth_hz / n_subcarriers = " +
                               format_number(implied) + " Hz");
                }
            }
        }
    }

    if (const auto* fading = r.child(doc, "", "fading", false);
        fading && r.check_object(*fading, "fading", {"preset", "presets_file", "params", "deterministic"})) {
        r.boolean(*fading, "fading", "deterministic", c.deterministic_channel, false);
        r.string(*fading, "fading", "preset", c.fading_preset, !c.deterministic_channel);
        if (const auto* params = r.child(*fading, "fading", "params", false)) {
            if (r.check_object(*params, "fading.params", {"b", "m", "omega"})) {
                r.number(*params, "fading.params", "b", c.fading.b, true);
                r.number(*params, "fading.params", "m", c.fading.m, true);
                r.number(*params, "fading.params", "omega", c.fading.omega, true);
            }
        } else if (std::string file; r.string(*fading, "fading", "presets_file", file, !c.deterministic_channel)) {
            try {
                const auto presets = FadingPresets::load(base_dir / file);
                if (presets.contains(c.fading_preset)) c.fading = presets.get(c.fading_preset);
                else r.fail("fading.preset", "'" + c.fading_preset + "' is not defined in " + file);
            } catch (const std::exception& e) {
                r.fail("fading.presets_file", e.what());
            }
        }
    } else if (!fading) {
        r.fail("fading", "required key is missing");
    }

    if (const auto* los = r.child(doc, "", "los_table", true)) {
        try {
            if (los->is_string()) {
                c.los_table = LosTable::load(base_dir / los->get<std::string>());
            } else if (los->is_array()) {
                std::istringstream rows(los_rows_to_text(*los, r, "los_table"));
                c.los_table = LosTable::parse(rows);
            } else {
                r.fail("los_table", "expected a file path or an array of rows");
            }
        } catch (const std::exception& e) {
            r.fail("los_table", e.what());
        }
    }

    if (const auto* ris = r.child(doc, "", "ris", true);
        ris && r.check_object(*ris, "ris", {"n_elements", "mode", "phase_bits", "max_amplitude", "noise_temperature_k", "element_gain_dbi"})) {
        r.sizes(*ris, "ris", "n_elements", c.n_elements, true);
        if (r.string(*ris, "ris", "mode", text_value, false)) {
            parse_enum(r, "ris.mode", text_value, [&](const std::string& s) { c.panel.mode = parse_ris_mode(s); });
        }
        r.integer(*ris, "ris", "phase_bits", c.panel.phase_bits, false);
        r.number(*ris, "ris", "max_amplitude", c.panel.max_amplitude, false);
        r.number(*ris, "ris", "noise_temperature_k", c.panel.ris_noise_temperature_k, false);
        r.number(*ris, "ris", "element_gain_dbi", c.ris_element_gain_dbi, false);
    }

    if (const auto* links = r.child(doc, "", "links", false);
        links && r.check_object(*links, "links", {"direct_link", "clutter_loss_db", "ris_altitude_km", "ris_elevation_deg",
                                                  "isl_distance_km", "ris_user_clutter_loss_db", "ris_user_distance_km"})) {
        r.boolean(*links, "links", "direct_link", c.direct_link, false);
        r.number(*links, "links", "clutter_loss_db", c.clutter_loss_db, false);
        r.number(*links, "links", "ris_altitude_km", c.ris_altitude_km, false);
        r.number(*links, "links", "ris_elevation_deg", c.ris_elevation_deg, false);
        r.number(*links, "links", "isl_distance_km", c.isl_distance_km, false);
        r.number(*links, "links", "ris_user_clutter_loss_db", c.ris_user_clutter_loss_db, false);
        r.number(*links, "links", "ris_user_distance_km", c.ris_user_distance_km, false);
    }

    if (const auto* comp = r.child(doc, "", "compensation", false);
        comp && r.check_object(*comp, "compensation", {"mode", "direct_residual_factor"})) {
        if (r.string(*comp, "compensation", "mode", text_value, true)) {
            parse_enum(r, "compensation.mode", text_value,
                       [&](const std::string& s) { c.compensation.kind = parse_compensation(s); });
        }
        r.number(*comp, "compensation", "direct_residual_factor", c.compensation.direct_residual_factor, false);
    }

    if (const auto* outage = r.child(doc, "", "outage", false);
        outage && r.check_object(*outage, "outage", {"rate_thresholds_bpcu"})) {
        r.numbers(*outage, "outage", "rate_thresholds_bpcu", c.rate_thresholds_bpcu, true);
    }

    if (const auto* opt = r.child(doc, "", "optimizer", false);
        opt && r.check_object(*opt, "optimizer", {"max_iterations", "convergence_tol", "init"})) {
        r.integer(*opt, "optimizer", "max_iterations", c.optimizer.max_iterations, false);
        r.number(*opt, "optimizer", "convergence_tol", c.optimizer.convergence_tol, false);
        if (r.string(*opt, "optimizer", "init", text_value, false)) {
            parse_enum(r, "optimizer.init", text_value, [&](const std::string& s) { c.optimizer.init = parse_ao_init(s); });
        }
    }

    if (const auto* schemes = r.child(doc, "", "schemes", false)) {
        if (!schemes->is_array() || schemes->empty()) {
            r.fail("schemes", "expected a non-empty array of scheme names");
        } else {
            c.schemes.clear();
            for (const auto& s : *schemes) {
                if (!s.is_string()) {
                    r.fail("schemes", "expected scheme names");
                    continue;
                }
                parse_enum(r, "schemes", s.get<std::string>(),
                           [&](const std::string& name) { c.schemes.push_back(parse_scheme(name)); });
            }
            auto sorted = c.schemes;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) r.fail("schemes", "duplicate scheme");
            // results are reported in canonical scheme order
            c.schemes = sorted;
        }
    } else if (c.study == Study::snr_case_study) {
        c.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
    }

    if (const auto* mc = r.child(doc, "", "monte_carlo", true);
        mc && r.check_object(*mc, "monte_carlo", {"trials", "master_seed"})) {
        r.integer(*mc, "monte_carlo", "trials", c.trials, true);
        r.integer(*mc, "monte_carlo", "master_seed", c.master_seed, true);
    }

    if (overrides.master_seed) c.master_seed = *overrides.master_seed;
    if (overrides.subcarrier_samples) c.subcarrier_samples = *overrides.subcarrier_samples;
    if (overrides.trials) c.trials = *overrides.trials;

    if (diags.empty()) {
        for (auto& d : c.diagnostics()) diags.push_back(std::move(d));
        if (c.study == Study::snr_case_study) {
            for (double e : c.elevations_deg) {
                try {
                    (void)los_probability(e, c.environment, c.los_table);
                } catch (const std::exception& ex) {
                    diags.push_back(std::string("los_table: ") + ex.what());
                    break;
                }
            }
        }
    }
    if (!diags.empty()) throw ScenarioValidationError(std::move(diags));

    LoadedScenario out;
    out.canonical_json = to_canonical_json(c).dump(2);
    c.scenario_hash = fnv1a64(out.canonical_json);
    out.config = std::move(c);
    return out;
}

LoadedScenario load_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides)
{
    const std::string text = read_file(path);
    return parse_scenario(text, path.parent_path(), overrides);
}

ValidationReport validate_scenario(const std::filesystem::path& path)
{
    ValidationReport report;
    try {
        (void)load_scenario(path);
    } catch (const ScenarioIoError& e) {
        report.io_error = true;
        report.diagnostics.push_back(e.what());
    } catch (const ScenarioValidationError& e) {
        report.diagnostics = e.diagnostics();
    }
    return report;
}

}  // namespace leoris
