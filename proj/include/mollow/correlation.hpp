#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string_view>
#include <vector>

#include "mollow/errors.hpp"
#include "mollow/model_params.hpp"
#include "mollow/numerics.hpp"

namespace mollow {

/// Inputs of the two-photon beat: effective Rabi frequency, the two
/// biphoton linewidths, and the propagation phase.
struct BeatParams {
    double omega_e = 0.0;
    double gamma_g = 1.0;
    double gamma2 = 1.0;
    double phi = 0.0;

    static BeatParams from_model(const ModelParams& p, double phi)
    {
        return {p.omega_e(), p.gamma_g, p.gamma2, phi};
    }
};

/// Visibility above which the center fringe violates a Bell-type bound.
inline constexpr double bell_threshold = std::numbers::sqrt2 / 2.0;

enum class CenterCharacter { anti_bunching, bunching, neutral };

constexpr std::string_view to_string(CenterCharacter c) noexcept
{
    switch (c) {
    case CenterCharacter::anti_bunching: return "anti-bunching-like";
    case CenterCharacter::bunching: return "bunching-like";
    case CenterCharacter::neutral: return "neutral";
    }
    return "neutral";
}

struct CenterMetrics {
    double contrast;    // cos(phi)
    double visibility;  // |cos(phi)|
    bool bell_violating;
    CenterCharacter character;
};

struct CoincidenceTrace {
    std::vector<double> taus;
    std::vector<double> rc;
    std::vector<double> envelope_hi;
    std::vector<double> envelope_lo;
    double beat_period_est = std::numeric_limits<double>::quiet_NaN();
    double center_contrast = 0.0;
    double center_visibility = 0.0;
    bool bell_violating = false;
};

namespace detail {
inline void check_tau(double tau)
{
    if (!(tau >= 0.0))
        throw Error(ErrorKind::InvalidGrid, "tau must be >= 0");
}
} // namespace detail

/// Two-photon amplitude (e^{-gg t} e^{i phi} - e^{-g2 t} e^{i We t}) / sqrt(2).
inline std::complex<double> amplitude(double tau, const BeatParams& bp)
{
    detail::check_tau(tau);
    const auto central = std::exp(-bp.gamma_g * tau) * std::polar(1.0, bp.phi);
    const auto sideband = std::exp(-bp.gamma2 * tau) * std::polar(1.0, bp.omega_e * tau);
    return (central - sideband) / std::numbers::sqrt2;
}

/// Sum-of-exponentials form:
/// 1/4 [e^{-2 gg t} + e^{-2 g2 t} - 2 cos(We t - phi) e^{-(gg+g2) t}].
inline double coincidence_rate_expanded(double tau, const BeatParams& bp)
{
    detail::check_tau(tau);
    return 0.25
           * (std::exp(-2.0 * bp.gamma_g * tau) + std::exp(-2.0 * bp.gamma2 * tau)
              - 2.0 * std::cos(bp.omega_e * tau - bp.phi)
                    * std::exp(-(bp.gamma_g + bp.gamma2) * tau));
}

/// Hyperbolic form: 1/2 {cosh[(gg-g2) t] - cos(We t - phi)} e^{-(gg+g2) t}.
/// This is the canonical R_c used everywhere else.
inline double coincidence_rate(double tau, const BeatParams& bp)
{
    detail::check_tau(tau);
    return 0.5 * (std::cosh((bp.gamma_g - bp.gamma2) * tau) - std::cos(bp.omega_e * tau - bp.phi))
           * std::exp(-(bp.gamma_g + bp.gamma2) * tau);
}

/// Equal-linewidth form 1/2 [1 - cos(We t - phi)] e^{-2 gamma t}.
inline double coincidence_rate_equal_width(double tau, double omega_e, double gamma, double phi)
{
    detail::check_tau(tau);
    return 0.5 * (1.0 - std::cos(omega_e * tau - phi)) * std::exp(-2.0 * gamma * tau);
}

/// Upper and lower damping envelopes 1/2 {cosh[(gg-g2) t] +- 1} e^{-(gg+g2) t}.
inline double envelope_hi(double tau, const BeatParams& bp)
{
    return 0.5 * (std::cosh((bp.gamma_g - bp.gamma2) * tau) + 1.0)
           * std::exp(-(bp.gamma_g + bp.gamma2) * tau);
}

inline double envelope_lo(double tau, const BeatParams& bp)
{
    return 0.5 * (std::cosh((bp.gamma_g - bp.gamma2) * tau) - 1.0)
           * std::exp(-(bp.gamma_g + bp.gamma2) * tau);
}

/// Local fringe visibility (hi - lo)/(hi + lo) = sech[(gg - g2) tau].
inline double fringe_visibility(double tau, const BeatParams& bp)
{
    detail::check_tau(tau);
    return 1.0 / std::cosh((bp.gamma_g - bp.gamma2) * tau);
}

inline CenterMetrics center_metrics(const BeatParams& bp)
{
    const double contrast = std::cos(bp.phi);
    const double visibility = std::abs(contrast);
    CenterCharacter character = CenterCharacter::neutral;
    if (contrast > 0.0)
        character = CenterCharacter::anti_bunching;
    else if (contrast < 0.0)
        character = CenterCharacter::bunching;
    return {contrast, visibility, visibility > bell_threshold, character};
}

/// Mean spacing of successive interior minima, each refined by a parabola
/// through its three neighbouring samples. NaN with fewer than two minima.
inline double estimate_beat_period(const std::vector<double>& taus, const std::vector<double>& rc)
{
    const auto idx = numerics::local_minima(rc);
    if (idx.size() < 2)
        return std::numeric_limits<double>::quiet_NaN();
    auto refined = [&](std::size_t k) {
        const double step = taus[k + 1] - taus[k];
        return taus[k] + step * numerics::parabolic_offset(rc[k - 1], rc[k], rc[k + 1]);
    };
    const double first = refined(idx.front());
    const double last = refined(idx.back());
    return (last - first) / static_cast<double>(idx.size() - 1);
}

inline CoincidenceTrace sample_trace(const BeatParams& bp, double tau_max, std::size_t n_points)
{
    if (!(tau_max > 0.0) || n_points < 2)
        throw Error(ErrorKind::InvalidGrid, "sample_trace needs tau_max > 0 and n_points >= 2");
    CoincidenceTrace tr;
    tr.taus = numerics::linspace(0.0, tau_max, n_points);
    tr.rc.resize(n_points);
    tr.envelope_hi.resize(n_points);
    tr.envelope_lo.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double t = tr.taus[k];
        tr.rc[k] = coincidence_rate(t, bp);
        tr.envelope_hi[k] = envelope_hi(t, bp);
        tr.envelope_lo[k] = envelope_lo(t, bp);
    }
    tr.beat_period_est = estimate_beat_period(tr.taus, tr.rc);
    const auto cm = center_metrics(bp);
    tr.center_contrast = cm.contrast;
    tr.center_visibility = cm.visibility;
    tr.bell_violating = cm.bell_violating;
    return tr;
}

} // namespace mollow
