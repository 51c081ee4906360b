#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mollow/errors.hpp"
#include "mollow/model_params.hpp"
#include "mollow/numerics.hpp"

namespace mollow {

using cplx = std::complex<double>;

/// Linear and third-order susceptibility of the probe field at one detuning.
struct SpectralSample {
    double delta;
    cplx chi_linear;
    cplx chi3_exact;
    cplx chi3_approx;
};

/// Central (Gamma0) and sideband (Gamma) biphoton linewidths.
struct Linewidths {
    double center;
    double sideband;
};

struct TripletPeaks {
    std::array<double, 3> centers{};
    std::array<double, 3> heights{};
    Linewidths linewidths{};
    double bracket_width = 0.0;  // widest final golden-section bracket
    bool off_resonant = false;   // linewidths taken from the resonant reduction
};

namespace detail {

inline constexpr cplx I{0.0, 1.0};

// Closed forms are written for one time-harmonic convention; values are
// reported in the opposite one (chi -> -conj(chi)), where Re chi rises
// through the upper sideband and has anomalous slope at delta = 0.
// Im chi is unaffected by the mapping.
inline cplx reorient(cplx printed) { return -std::conj(printed); }

inline void check_denominator(cplx d)
{
    if (std::abs(d) < 1e-300)
        throw std::domain_error("D(delta) vanished on the real axis");
}

} // namespace detail

/// D(delta) = (d + i gg)(d + Dp + i g2)(d - Dp + i g2) - |Wp|^2 (d + i g2).
inline cplx eval_D(double delta, const ModelParams& p)
{
    using detail::I;
    const double w2 = p.omega_rabi * p.omega_rabi;
    return (delta + I * p.gamma_g) * (delta + p.delta_pump + I * p.gamma2)
               * (delta - p.delta_pump + I * p.gamma2)
           - w2 * (delta + I * p.gamma2);
}

inline cplx eval_chi_linear(double delta, const ModelParams& p)
{
    using detail::I;
    const cplx D = eval_D(delta, p);
    detail::check_denominator(D);
    const double w2 = p.omega_rabi * p.omega_rabi;
    const cplx bracket = 1.0
                         - w2 * (delta + 2.0 * I * p.gamma2) * (delta - p.delta_pump + I * p.gamma2)
                               / (2.0 * D * (p.delta_pump - I * p.gamma2));
    const cplx printed = p.g1 / (p.delta_pump + delta + I * p.gamma2) * bracket;
    return detail::reorient(printed);
}

inline cplx eval_chi3_exact(double delta, const ModelParams& p)
{
    using detail::I;
    const cplx D = eval_D(delta, p);
    detail::check_denominator(D);
    const cplx printed =
        2.0 * p.g3 * (delta + I * p.gamma2) / (D * (p.delta_pump + I * p.gamma2));
    return detail::reorient(printed);
}

/// Gamma0 = gamma2, Gamma = (gamma_g + gamma2)/2. Exact only at resonance;
/// used as-is off resonance (TripletPeaks::off_resonant flags this).
inline Linewidths resonant_linewidths(const ModelParams& p) noexcept
{
    return {p.gamma2, 0.5 * (p.gamma_g + p.gamma2)};
}

/// Two-pole decomposition: central-sideband products at +Omega_e and -Omega_e.
inline cplx eval_chi3_approx(double delta, const ModelParams& p)
{
    using detail::I;
    const auto [g0, g] = resonant_linewidths(p);
    const double we = p.omega_e();
    const cplx center = delta + I * g0;
    const cplx printed = p.g3 / (p.delta_pump + I * p.gamma2)
                         * (1.0 / (center * (delta + we + I * g))
                            + 1.0 / (center * (delta - we + I * g)));
    return detail::reorient(printed);
}

inline SpectralSample sample_spectrum_point(double delta, const ModelParams& p)
{
    return {delta, eval_chi_linear(delta, p), eval_chi3_exact(delta, p),
            eval_chi3_approx(delta, p)};
}

inline std::vector<SpectralSample> sample_spectrum(const std::vector<double>& deltas,
                                                   const ModelParams& p)
{
    std::vector<SpectralSample> out;
    out.reserve(deltas.size());
    for (double d : deltas)
        out.push_back(sample_spectrum_point(d, p));
    return out;
}

/// Scan range and resolution for the peak search. A zero span means the
/// default [-2 Omega_e - 5, 2 Omega_e + 5].
struct PeakGrid {
    std::size_t points = 4001;
    double lo = 0.0;
    double hi = 0.0;

    static PeakGrid around(const ModelParams& p, std::size_t points = 4001)
    {
        const double half = 2.0 * p.omega_e() + 5.0;
        return {points, -half, half};
    }
};

/// Locates the three maxima of |chi3_exact| (grid scan, then golden-section
/// refinement to 1e-9). Throws UnresolvedTriplet when the pump does not
/// resolve the sidebands or fewer than three maxima exist on the grid.
inline TripletPeaks find_triplet_peaks(const ModelParams& p, PeakGrid grid = {})
{
    const double we = p.omega_e();
    if (!(we > std::max(p.gamma_g, p.gamma2)))
        throw Error(ErrorKind::UnresolvedTriplet,
                    "effective Rabi frequency does not exceed the linewidths");
    if (!(grid.hi > grid.lo))
        grid = PeakGrid::around(p, grid.points);

    const auto xs = numerics::linspace(grid.lo, grid.hi, grid.points);
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k)
        ys[k] = std::abs(eval_chi3_exact(xs[k], p));

    auto idx = numerics::local_maxima(ys);
    if (idx.size() < 3)
        throw Error(ErrorKind::UnresolvedTriplet,
                    "found " + std::to_string(idx.size()) + " local maxima of |chi3|, need 3");
    if (idx.size() > 3) {
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return ys[a] > ys[b]; });
        idx.resize(3);
        std::sort(idx.begin(), idx.end());
    }

    TripletPeaks out;
    auto mag = [&](double d) { return std::abs(eval_chi3_exact(d, p)); };
    for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t k = idx[j];
        const auto ext = numerics::golden_section_max(mag, xs[k - 1], xs[k + 1], 1e-9);
        out.centers[j] = ext.x;
        out.heights[j] = ext.value;
        out.bracket_width = std::max(out.bracket_width, ext.bracket_width);
    }
    out.linewidths = resonant_linewidths(p);
    out.off_resonant = !p.resonant();
    return out;
}

} // namespace mollow
