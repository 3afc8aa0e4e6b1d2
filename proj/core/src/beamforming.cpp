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

#include "leoris/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace leoris {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Evaluation {
    Complex g;
    double snr_linear;
};

Complex fast_effective_channel(const CascadedChannel& ch, const RisState& ris, const CVector& w)
{
    Complex g = ch.h_direct.dot(w);
    if (ch.n_elements() == 0) return g;
    const CVector terms = cascaded_terms(ch, w);
    for (Eigen::Index n = 0; n < terms.size(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        if (ris.amplitudes[i] == 0.0) continue;
        g += terms[n] * std::polar(ris.amplitudes[i], ris.phases_rad[i]);
    }
    return g;
}

Evaluation evaluate(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget, const CVector& w,
                    const RisState& ris)
{
    const Complex g = fast_effective_channel(ch, ris, w);
    return {g, received_snr_linear(g, budget, panel, ris, ch)};
}

BeamformerSolution finish(Scheme scheme, CVector w, RisState ris, Evaluation e)
{
    BeamformerSolution s;
    s.scheme = scheme;
    s.w = std::move(w);
    s.ris = std::move(ris);
    s.g = e.g;
    s.snr_linear = e.snr_linear;
    s.snr_db = snr_to_db(e.snr_linear);
    s.snr_trace_db.push_back(s.snr_db);
    return s;
}

void check_inputs(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget)
{
    ch.validate();
    panel.validate();
    budget.validate();
    if (panel.n_elements != ch.n_elements()) {
        throw std::invalid_argument("RIS panel has " + std::to_string(panel.n_elements) +
                                    " elements but the channel has " + std::to_string(ch.n_elements()));
    }
    if (ch.tx_antennas() == 0) throw std::invalid_argument("channel needs at least one transmit antenna");
}

bool has_energy(const CMatrix& h) { return h.size() > 0 && h.squaredNorm() > 0.0; }

}  // namespace

std::string_view to_string(Scheme scheme) noexcept
{
    switch (scheme) {
    case Scheme::ao_distributed: return "ao_distributed";
    case Scheme::tx_ris_mrt: return "tx_ris_mrt";
    case Scheme::tx_su_mrt: return "tx_su_mrt";
    case Scheme::without_ris: return "without_ris";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    for (auto s : kAllSchemes) {
        if (to_string(s) == name) return s;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(AoInit init) noexcept
{
    switch (init) {
    case AoInit::from_tx_ris_mrt: return "from_tx_ris_mrt";
    case AoInit::from_tx_su_mrt: return "from_tx_su_mrt";
    case AoInit::from_best_mrt: return "from_best_mrt";
    case AoInit::random: return "random";
    }
    return "unknown";
}

AoInit parse_ao_init(std::string_view name)
{
    for (auto i : {AoInit::from_tx_ris_mrt, AoInit::from_tx_su_mrt, AoInit::from_best_mrt, AoInit::random}) {
        if (to_string(i) == name) return i;
    }
    throw std::invalid_argument("unknown AO init '" + std::string(name) + "'");
}

void AoConfig::validate() const
{
    if (max_iterations < 1) throw std::invalid_argument("AoConfig: max_iterations must be >= 1");
    if (!(convergence_tol > 0.0)) throw std::invalid_argument("AoConfig: convergence_tol must be > 0");
}

CVector composite_channel(const CascadedChannel& ch, const RisState& ris)
{
    CVector c = ch.h_direct;
    if (ch.n_elements() == 0) return c;
    CVector weighted(ch.h_ris_user.size());
    for (Eigen::Index n = 0; n < weighted.size(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        weighted[n] = std::polar(ris.amplitudes[i], -ris.phases_rad[i]) * ch.h_ris_user[n];
    }
    c.noalias() += ch.h_sat_ris.adjoint() * weighted;
    return c;
}

CVector mrt_beam(const CVector& v)
{
    const double norm = v.norm();
    if (!(norm > 0.0)) {
        CVector e = CVector::Zero(v.size());
        if (e.size() > 0) e[0] = 1.0;
        return e;
    }
    CVector w = v / norm;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w[i]) > 1e-12) {
            w *= std::conj(w[i]) / std::abs(w[i]);
            w[i] = std::abs(w[i]);
            break;
        }
    }
    return w;
}

CVector principal_right_singular_vector(const CMatrix& h)
{
    if (h.cols() == 0) return CVector{};
    if (!has_energy(h)) return mrt_beam(CVector::Zero(h.cols()));
    const CMatrix gram = h.adjoint() * h;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    // eigenvalues come out in increasing order
    return mrt_beam(eig.eigenvectors().col(gram.cols() - 1));
}

CVector transmit_step(const CascadedChannel& ch, const RisState& ris)
{
    return mrt_beam(composite_channel(ch, ris));
}

std::vector<double> best_discrete_phases(Complex direct, const CVector& terms, double amplitude, int bits)
{
    if (bits < 1) throw std::invalid_argument("best_discrete_phases: bits must be >= 1");
    const int levels = 1 << bits;
    const double step = kTwoPi / levels;
    const auto n_terms = static_cast<std::size_t>(terms.size());

    std::vector<int> index(n_terms, 0);
    std::vector<double> base(n_terms, 0.0);
    struct Event {
        double angle;
        std::size_t element;
    };
    std::vector<Event> events;
    events.reserve(n_terms * static_cast<std::size_t>(levels));
    for (std::size_t n = 0; n < n_terms; ++n) {
        const Complex t = terms[static_cast<Eigen::Index>(n)];
        if (t == Complex{} || amplitude == 0.0) continue;
        base[n] = std::arg(t);
        // element n moves to the next grid point when the reference crosses these angles
        for (int k = 0; k < levels; ++k) events.push_back({wrap_phase(base[n] + (k + 0.5) * step), n});
    }
    std::vector<double> phases(n_terms, 0.0);
    if (events.empty()) return phases;

    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        return a.angle < b.angle || (a.angle == b.angle && a.element < b.element);
    });

    // Start the sweep in the middle of the widest gap so the initial rounding is unambiguous.
    const std::size_t count = events.size();
    std::size_t start = 0;
    double widest = events.front().angle + kTwoPi - events.back().angle;
    double reference = wrap_phase(events.back().angle + 0.5 * widest);
    for (std::size_t i = 1; i < count; ++i) {
        const double gap = events[i].angle - events[i - 1].angle;
        if (gap > widest) {
            widest = gap;
            start = i;
            reference = events[i - 1].angle + 0.5 * gap;
        }
    }

    auto initial_index = [&](std::size_t n) {
        const double x = wrap_phase(reference - base[n]) / step;
        return static_cast<int>(std::lround(x)) % levels;
    };
    auto rotor = [&](int k) { return std::polar(amplitude, k * step); };

    Complex sum = direct;
    for (std::size_t n = 0; n < n_terms; ++n) {
        const Complex t = terms[static_cast<Eigen::Index>(n)];
        if (t == Complex{} || amplitude == 0.0) continue;
        index[n] = initial_index(n);
        sum += t * rotor(index[n]);
    }

    double best = std::abs(sum);
    std::size_t best_applied = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = events[(start + i) % count].element;
        const Complex t = terms[static_cast<Eigen::Index>(n)];
        const int next = (index[n] + 1) % levels;
        sum += t * (rotor(next) - rotor(index[n]));
        index[n] = next;
        const double value = std::abs(sum);
        if (value > best) {
            best = value;
            best_applied = i + 1;
        }
    }

    // Replay the winning prefix of the sweep from the initial assignment.
    for (std::size_t n = 0; n < n_terms; ++n) {
        const Complex t = terms[static_cast<Eigen::Index>(n)];
        index[n] = (t == Complex{}) ? 0 : initial_index(n);
    }
    for (std::size_t i = 0; i < best_applied; ++i) {
        const std::size_t n = events[(start + i) % count].element;
        index[n] = (index[n] + 1) % levels;
    }
    for (std::size_t n = 0; n < n_terms; ++n) phases[n] = index[n] * step;
    return phases;
}

RisState reflection_step(const CascadedChannel& ch, const CVector& w, const RisPanel& panel)
{
    const std::size_t n_elements = ch.n_elements();
    const double amplitude = panel.drive_amplitude();
    RisState ris = RisState::uniform(n_elements, amplitude);
    if (n_elements == 0) return ris;

    const Complex direct = ch.h_direct.dot(w);
    const CVector terms = cascaded_terms(ch, w);
    if (panel.phase_bits > 0) {
        ris.phases_rad = best_discrete_phases(direct, terms, amplitude, panel.phase_bits);
        return ris;
    }
    const double reference = direct == Complex{} ? 0.0 : std::arg(direct);
    for (std::size_t n = 0; n < n_elements; ++n) {
        const Complex t = terms[static_cast<Eigen::Index>(n)];
        ris.phases_rad[n] = t == Complex{} ? 0.0 : wrap_phase(reference - std::arg(t));
    }
    return ris;
}

BeamformerSolution tx_ris_mrt(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget)
{
    check_inputs(ch, panel, budget);
    bool fallback = false;
    CVector w;
    if (has_energy(ch.h_sat_ris)) {
        w = principal_right_singular_vector(ch.h_sat_ris);
    } else {
        // nothing reaches the RIS: the only sensible beam is the direct one
        w = mrt_beam(ch.h_direct);
        fallback = true;
    }
    RisState ris = reflection_step(ch, w, panel);
    const auto e = evaluate(ch, panel, budget, w, ris);
    auto s = finish(Scheme::tx_ris_mrt, std::move(w), std::move(ris), e);
    s.fallback = fallback;
    return s;
}

BeamformerSolution tx_su_mrt(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget)
{
    check_inputs(ch, panel, budget);
    if (!(ch.h_direct.squaredNorm() > 0.0)) {
        auto s = tx_ris_mrt(ch, panel, budget);
        s.scheme = Scheme::tx_su_mrt;
        s.fallback = true;
        return s;
    }
    CVector w = mrt_beam(ch.h_direct);
    RisState ris = reflection_step(ch, w, panel);
    const auto e = evaluate(ch, panel, budget, w, ris);
    return finish(Scheme::tx_su_mrt, std::move(w), std::move(ris), e);
}

BeamformerSolution without_ris(const CascadedChannel& ch, const LinkBudget& budget)
{
    ch.validate();
    budget.validate();
    if (ch.tx_antennas() == 0) throw std::invalid_argument("channel needs at least one transmit antenna");
    CVector w = mrt_beam(ch.h_direct);
    const Complex g = ch.h_direct.dot(w);
    auto s = finish(Scheme::without_ris, std::move(w), RisState::off(ch.n_elements()),
                    Evaluation{g, received_snr_linear(g, budget)});
    s.fallback = !(ch.h_direct.squaredNorm() > 0.0);
    return s;
}

namespace {

BeamformerSolution alternate(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget,
                             const AoConfig& cfg, CVector w, RisState ris)
{
    auto current = evaluate(ch, panel, budget, w, ris);
    BeamformerSolution best = finish(Scheme::ao_distributed, std::move(w), std::move(ris), current);
    best.converged = false;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        CVector next_w = transmit_step(ch, best.ris);
        RisState next_ris = reflection_step(ch, next_w, panel);
        const auto next = evaluate(ch, panel, budget, next_w, next_ris);
        best.iterations = it;
        if (!(next.snr_linear > best.snr_linear)) {
            // both steps are conditional maximizers, so no gain means a fixed point
            best.converged = true;
            break;
        }
        const double previous = best.snr_linear;
        best.w = std::move(next_w);
        best.ris = std::move(next_ris);
        best.g = next.g;
        best.snr_linear = next.snr_linear;
        best.snr_db = snr_to_db(next.snr_linear);
        best.snr_trace_db.push_back(best.snr_db);
        if ((best.snr_linear - previous) / best.snr_linear < cfg.convergence_tol) {
            best.converged = true;
            break;
        }
    }
    return best;
}

}  // namespace

BeamformerSolution ao_optimize_from(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget,
                                    const AoConfig& cfg, const RisState& initial)
{
    check_inputs(ch, panel, budget);
    cfg.validate();
    if (initial.size() != ch.n_elements() || initial.amplitudes.size() != ch.n_elements()) {
        throw std::invalid_argument("ao_optimize_from: initial RIS state has the wrong size");
    }
    RisState start = initial;
    std::fill(start.amplitudes.begin(), start.amplitudes.end(), panel.drive_amplitude());
    CVector w = transmit_step(ch, start);
    return alternate(ch, panel, budget, cfg, std::move(w), std::move(start));
}

BeamformerSolution ao_optimize(const CascadedChannel& ch, const RisPanel& panel, const LinkBudget& budget,
                               const AoConfig& cfg)
{
    check_inputs(ch, panel, budget);
    cfg.validate();
    switch (cfg.init) {
    case AoInit::from_tx_ris_mrt: {
        auto s = tx_ris_mrt(ch, panel, budget);
        return alternate(ch, panel, budget, cfg, std::move(s.w), std::move(s.ris));
    }
    case AoInit::from_tx_su_mrt: {
        auto s = tx_su_mrt(ch, panel, budget);
        return alternate(ch, panel, budget, cfg, std::move(s.w), std::move(s.ris));
    }
    case AoInit::from_best_mrt: {
        auto a = tx_ris_mrt(ch, panel, budget);
        auto b = tx_su_mrt(ch, panel, budget);
        auto& start = b.snr_linear > a.snr_linear ? b : a;
        return alternate(ch, panel, budget, cfg, std::move(start.w), std::move(start.ris));
    }
    case AoInit::random: {
        auto rng = substream(cfg.random_seed, 0x52495300, 0);
        std::uniform_real_distribution<double> phase(0.0, kTwoPi);
        RisState initial = RisState::uniform(ch.n_elements(), panel.drive_amplitude());
        for (auto& p : initial.phases_rad) p = phase(rng);
        if (panel.phase_bits > 0) initial.phases_rad = quantize_phases(initial.phases_rad, panel.phase_bits);
        return ao_optimize_from(ch, panel, budget, cfg, initial);
    }
    }
    throw std::logic_error("unhandled AoInit");
}

BeamformerSolution run_scheme(Scheme scheme, const CascadedChannel& ch, const RisPanel& panel,
                              const LinkBudget& budget, const AoConfig& cfg)
{
    switch (scheme) {
    case Scheme::ao_distributed: return ao_optimize(ch, panel, budget, cfg);
    case Scheme::tx_ris_mrt: return tx_ris_mrt(ch, panel, budget);
    case Scheme::tx_su_mrt: return tx_su_mrt(ch, panel, budget);
    case Scheme::without_ris: return without_ris(ch, budget);
    }
    throw std::logic_error("unhandled Scheme");
}

RisState brute_force_phases(const CascadedChannel& ch, const CVector& w, int bits, const RisPanel& panel)
{
    if (bits < 1) throw std::invalid_argument("brute_force_phases: bits must be >= 1");
    const std::size_t n_elements = ch.n_elements();
    if (static_cast<long long>(n_elements) * bits > kBruteForceMaxBits) {
        throw std::length_error("brute_force_phases: N * bits = " + std::to_string(n_elements * bits) +
                                " exceeds the exhaustive-search budget of " + std::to_string(kBruteForceMaxBits));
    }
    const int levels = 1 << bits;
    const double step = kTwoPi / levels;
    const double amplitude = panel.drive_amplitude();
    const Complex direct = ch.h_direct.dot(w);
    const CVector terms = cascaded_terms(ch, w);

    std::vector<int> digits(n_elements, 0);
    std::vector<int> best_digits(n_elements, 0);
    double best = -1.0;
    const std::uint64_t total = std::uint64_t{1} << (n_elements * static_cast<std::size_t>(bits));
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        Complex g = direct;
        for (std::size_t n = 0; n < n_elements; ++n) {
            digits[n] = static_cast<int>(rest % levels);
            rest /= levels;
            g += terms[static_cast<Eigen::Index>(n)] * std::polar(amplitude, digits[n] * step);
        }
        const double value = std::abs(g);
        if (value > best) {
            best = value;
            best_digits = digits;
        }
    }
    RisState out = RisState::uniform(n_elements, amplitude);
    for (std::size_t n = 0; n < n_elements; ++n) out.phases_rad[n] = best_digits[n] * step;
    return out;
}

}  // namespace leoris
