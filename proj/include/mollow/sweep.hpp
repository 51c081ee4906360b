#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "mollow/correlation.hpp"
#include "mollow/dispersion.hpp"
#include "mollow/errors.hpp"
#include "mollow/model_params.hpp"
#include "mollow/numerics.hpp"
#include "mollow/parallel.hpp"
#include "mollow/response.hpp"

namespace mollow {

enum class SweepAxis { omega_rabi, length_param, g1 };

constexpr std::string_view to_string(SweepAxis a) noexcept
{
    switch (a) {
    case SweepAxis::omega_rabi: return "omega_rabi";
    case SweepAxis::length_param: return "length_param";
    case SweepAxis::g1: return "g1";
    }
    return "";
}

inline SweepAxis parse_axis(std::string_view name)
{
    for (auto a : {SweepAxis::omega_rabi, SweepAxis::length_param, SweepAxis::g1})
        if (name == to_string(a))
            return a;
    throw Error(ErrorKind::UnknownAxis, "unsupported sweep axis '" + std::string(name) + "'");
}

struct SweepOptions {
    // Density sweeps: keep g3 / g1^2 fixed (both scale with N, g3 with mu^4).
    bool lock_g3_to_density = true;
};

struct SweepResult {
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<double> phi_values;
    std::vector<double> visibility_values;
    std::vector<double> contrast_values;
    std::vector<bool> evanescent_mask;
};

/// base with one parameter replaced; validated.
inline ModelParams with_axis_value(const ModelParams& base, SweepAxis axis, double value,
                                   const SweepOptions& opts = {})
{
    ModelParams p = base;
    switch (axis) {
    case SweepAxis::omega_rabi: p.omega_rabi = value; break;
    case SweepAxis::length_param: p.length_param = value; break;
    case SweepAxis::g1:
        p.g1 = value;
        if (opts.lock_g3_to_density && base.g1 > 0.0) {
            const double ratio = value / base.g1;
            p.g3 = base.g3 * ratio * ratio;
        }
        break;
    }
    validate(p);
    return p;
}

/// Phase and center visibility at every value of one parameter. Points with
/// an imaginary sideband index stay in the result, masked, with NaN values.
inline SweepResult sweep_visibility(const ModelParams& base, SweepAxis axis,
                                    const std::vector<double>& values,
                                    const SweepOptions& opts = {})
{
    const std::size_t n = values.size();
    for (double v : values)
        if (!std::isfinite(v))
            throw Error(ErrorKind::InvalidGrid, "sweep values must be finite");

    SweepResult r;
    r.axis_name = std::string(to_string(axis));
    r.axis_values = values;
    r.phi_values.assign(n, std::numeric_limits<double>::quiet_NaN());
    r.visibility_values.assign(n, std::numeric_limits<double>::quiet_NaN());
    r.contrast_values.assign(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> mask(n, 0);

    parallel_for(n, [&](std::size_t k) {
        const ModelParams p = with_axis_value(base, axis, values[k], opts);
        const PhaseResult ph = evaluate_phase(p);
        if (ph.evanescent) {
            mask[k] = 1;
            return;
        }
        const auto cm = center_metrics(BeatParams::from_model(p, ph.phi));
        r.phi_values[k] = ph.phi;
        r.visibility_values[k] = cm.visibility;
        r.contrast_values[k] = cm.contrast;
    });
    r.evanescent_mask.assign(mask.begin(), mask.end());
    return r;
}

/// Phase accumulated per unit length parameter, (2 - n+ - n-) - r (n+ - n-).
inline double phase_per_length(double n_plus, double n_minus, double r)
{
    return (2.0 - n_plus - n_minus) - r * (n_plus - n_minus);
}

/// beta such that phase_from_indices(n+, n-, r, beta) == target_phi.
inline double length_for_phase(double n_plus, double n_minus, double r, double target_phi)
{
    if (target_phi == 0.0)
        return 0.0;
    const double den = phase_per_length(n_plus, n_minus, r);
    if (std::abs(den) < 1e-15)
        throw Error(ErrorKind::IndexMatched, "sideband indices are matched; phase is length-independent");
    const double beta = target_phi / den;
    if (beta < 0.0)
        throw Error(ErrorKind::NoSolution, "target phase needs a negative medium length");
    return beta;
}

inline double solve_length_for_phase(const ModelParams& base, double target_phi)
{
    validate(base);
    const PhaseResult ph = compute_phase(base);
    if (target_phi == 0.0)
        return 0.0;
    return length_for_phase(ph.n_plus, ph.n_minus, base.omega_e() / base.omega_p_over_gamma2,
                            target_phi);
}

struct PumpSolution {
    double omega_rabi;
    double phi;
    int iterations;
};

/// Bisection on phi(omega_rabi) - target over [lo, hi]. The bracket must
/// straddle the target and phi must be strictly monotone on 65 samples.
inline PumpSolution solve_pump_for_phase(const ModelParams& base, double target_phi, double lo,
                                         double hi)
{
    if (!(hi > lo) || lo < 0.0)
        throw Error(ErrorKind::InvalidGrid, "pump bracket must satisfy 0 <= lo < hi");
    auto phase_at = [&](double w) {
        return compute_phase(with_axis_value(base, SweepAxis::omega_rabi, w)).phi;
    };

    constexpr std::size_t probes = 65;
    const auto ws = numerics::linspace(lo, hi, probes);
    std::vector<double> phis(probes);
    for (std::size_t k = 0; k < probes; ++k)
        phis[k] = phase_at(ws[k]);

    const double flo = phis.front() - target_phi;
    const double fhi = phis.back() - target_phi;
    if (flo == 0.0)
        return {lo, phis.front(), 0};
    if (fhi == 0.0)
        return {hi, phis.back(), 0};
    if ((flo > 0.0) == (fhi > 0.0))
        throw Error(ErrorKind::NoBracket, "phase at the bracket ends does not straddle the target");

    const bool rising = phis.back() > phis.front();
    for (std::size_t k = 1; k < probes; ++k)
        if (rising ? !(phis[k] > phis[k - 1]) : !(phis[k] < phis[k - 1]))
            throw Error(ErrorKind::NonMonotonic, "phase is not monotone on the pump bracket");

    double a = lo, b = hi;
    double fa = flo;
    PumpSolution best{lo, phis.front(), 0};
    double best_err = std::abs(flo);
    for (int it = 1; it <= 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b)
            break;
        const double pm = phase_at(m);
        const double fm = pm - target_phi;
        if (std::abs(fm) < best_err) {
            best_err = std::abs(fm);
            best = {m, pm, it};
        }
        if (std::abs(fm) < 1e-10)
            return {m, pm, it};
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return best;
}

enum class FigureKind { fig1c, fig1d, fig2 };

constexpr std::string_view to_string(FigureKind k) noexcept
{
    switch (k) {
    case FigureKind::fig1c: return "fig1c";
    case FigureKind::fig1d: return "fig1d";
    case FigureKind::fig2: return "fig2";
    }
    return "";
}

struct FigureOptions {
    std::size_t spectrum_points = 4001;
    double weak_pump = 5.0;
    double strong_pump = 10.0;
    double tau_max = 0.0;  // 0: 6 / min(gamma_g, gamma2)
    std::size_t trace_points = 2000;
};

struct FigureDatasets {
    FigureKind kind;
    std::vector<SpectralSample> spectrum;  // fig1c
    std::vector<DispersionPoint> dispersion;  // fig1d
    PhaseResult phase;                        // fig1d
    std::vector<ModelParams> trace_params;    // fig2: weak, strong
    std::vector<CoincidenceTrace> traces;     // fig2: weak, strong
};

inline std::vector<double> default_detuning_grid(const ModelParams& p, std::size_t points)
{
    const double half = 2.0 * p.omega_e() + 5.0;
    return numerics::linspace(-half, half, points);
}

inline std::vector<DispersionPoint> sample_dispersion(const std::vector<double>& deltas,
                                                      const ModelParams& p, double h)
{
    std::vector<DispersionPoint> out(deltas.size());
    parallel_for(deltas.size(), [&](std::size_t k) { out[k] = dispersion_point(deltas[k], p, h); });
    return out;
}

/// Datasets behind the triplet spectrum (fig1c), the resonant dispersion
/// curves (fig1d) and the weak/strong pump beat traces (fig2).
inline FigureDatasets figure_datasets(FigureKind kind, const ModelParams& p,
                                      const FigureOptions& opts = {})
{
    validate(p);
    if (kind != FigureKind::fig1c && !p.resonant())
        throw Error(ErrorKind::NonResonant, std::string(to_string(kind)) + " requires delta_pump = 0");

    FigureDatasets out{kind, {}, {}, {}, {}, {}};
    switch (kind) {
    case FigureKind::fig1c:
        out.spectrum = sample_spectrum(default_detuning_grid(p, opts.spectrum_points), p);
        break;
    case FigureKind::fig1d:
        out.dispersion =
            sample_dispersion(default_detuning_grid(p, opts.spectrum_points), p, default_fd_step(p));
        out.phase = evaluate_phase(p);
        break;
    case FigureKind::fig2: {
        const double tau_max =
            opts.tau_max > 0.0 ? opts.tau_max : 6.0 / std::min(p.gamma_g, p.gamma2);
        for (double w : {opts.weak_pump, opts.strong_pump}) {
            const ModelParams q = with_axis_value(p, SweepAxis::omega_rabi, w);
            const PhaseResult ph = compute_phase(q);
            out.trace_params.push_back(q);
            out.traces.push_back(
                sample_trace(BeatParams::from_model(q, ph.phi), tau_max, opts.trace_points));
        }
        break;
    }
    }
    return out;
}

} // namespace mollow
