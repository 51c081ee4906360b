#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>

#include "mollow/errors.hpp"
#include "mollow/model_params.hpp"
#include "mollow/numerics.hpp"
#include "mollow/response.hpp"

namespace mollow {

enum class DispersionRegime { normal, anomalous };

constexpr std::string_view to_string(DispersionRegime r) noexcept
{
    return r == DispersionRegime::anomalous ? "anomalous" : "normal";
}

struct Classification {
    DispersionRegime regime;
    double slope;    // dRe(chi)/d(delta)
    bool near_zero;  // |slope| below the extremum tolerance
};

struct DispersionPoint {
    double delta;
    std::optional<double> n;  // empty when evanescent
    double absorption;        // Im chi, sign as computed
    std::optional<double> group_index;
    DispersionRegime regime;
    bool superluminal;
};

/// Sideband/center refractive indices and the biphoton propagation phase.
struct PhaseResult {
    double n_plus = std::numeric_limits<double>::quiet_NaN();
    double n_minus = std::numeric_limits<double>::quiet_NaN();
    double n_center = std::numeric_limits<double>::quiet_NaN();
    double phi = std::numeric_limits<double>::quiet_NaN();
    bool evanescent = false;
};

/// Raised by compute_phase; carries whatever indices were still real.
class EvanescentError : public Error {
public:
    EvanescentError(const std::string& what, PhaseResult partial)
        : Error(ErrorKind::EvanescentRegion, what), m_partial(partial)
    {
    }
    const PhaseResult& partial() const noexcept { return m_partial; }

private:
    PhaseResult m_partial;
};

/// sqrt(1 + Re chi), or nullopt when the radicand is negative.
inline std::optional<double> refractive_index(double delta, const ModelParams& p)
{
    const double radicand = 1.0 + eval_chi_linear(delta, p).real();
    if (radicand < 0.0)
        return std::nullopt;
    return std::sqrt(radicand);
}

inline double default_fd_step(const ModelParams& p)
{
    return 1e-4 * std::max(1.0, p.omega_e());
}

/// Central difference of Re chi.
inline double dispersion_slope(double delta, const ModelParams& p, double h)
{
    return (eval_chi_linear(delta + h, p).real() - eval_chi_linear(delta - h, p).real())
           / (2.0 * h);
}

/// n + (omega_p + delta) dn/d(delta), second-order central difference.
inline double group_index(double delta, const ModelParams& p, double h)
{
    if (!(h > 0.0))
        throw Error(ErrorKind::InvalidGrid, "finite-difference step must be > 0");
    const auto n0 = refractive_index(delta, p);
    const auto np = refractive_index(delta + h, p);
    const auto nm = refractive_index(delta - h, p);
    if (!n0 || !np || !nm)
        throw Error(ErrorKind::EvanescentRegion, "group index stencil touches an evanescent point");
    return *n0 + (p.omega_p_over_gamma2 + delta) * (*np - *nm) / (2.0 * h);
}

inline double group_index(double delta, const ModelParams& p)
{
    return group_index(delta, p, default_fd_step(p));
}

/// Anomalous iff dRe(chi)/d(delta) < 0. A slope below 1e-10 g1 in magnitude
/// is flagged near_zero and, if exactly zero, reported as normal.
inline Classification classify_dispersion(double delta, const ModelParams& p, double h)
{
    const double slope = dispersion_slope(delta, p, h);
    const bool near_zero = std::abs(slope) < 1e-10 * p.g1 || slope == 0.0;
    return {slope < 0.0 ? DispersionRegime::anomalous : DispersionRegime::normal, slope,
            near_zero};
}

inline Classification classify_dispersion(double delta, const ModelParams& p)
{
    return classify_dispersion(delta, p, default_fd_step(p));
}

inline DispersionPoint dispersion_point(double delta, const ModelParams& p, double h)
{
    DispersionPoint pt{};
    pt.delta = delta;
    pt.n = refractive_index(delta, p);
    pt.absorption = eval_chi_linear(delta, p).imag();
    pt.regime = classify_dispersion(delta, p, h).regime;
    try {
        pt.group_index = group_index(delta, p, h);
    } catch (const Error&) {
        pt.group_index.reset();
    }
    pt.superluminal = pt.group_index && *pt.group_index < 1.0;
    return pt;
}

/// Propagation phase from the three indices, grouped so that only small
/// index differences are multiplied by the (large) length parameter:
///   phi = beta [ (2 - n+ - n-) - r (n+ - n-) ],  r = Omega_e / omega_p.
/// Identical to beta [2 n0 - n+ (1 + r) - n- (1 - r)] with n0 = 1.
inline double phase_from_indices(double n_plus, double n_minus, double r, double beta)
{
    return beta * ((2.0 - n_plus - n_minus) - r * (n_plus - n_minus));
}

/// Non-throwing form of compute_phase: evanescent results carry NaN in
/// phi and in whichever index is imaginary.
inline PhaseResult evaluate_phase(const ModelParams& p)
{
    const double we = p.omega_e();
    PhaseResult out;
    const auto np = refractive_index(+we, p);
    const auto nm = refractive_index(-we, p);
    const auto n0 = refractive_index(0.0, p);
    if (np)
        out.n_plus = *np;
    if (nm)
        out.n_minus = *nm;
    if (n0)
        out.n_center = *n0;
    out.evanescent = !np || !nm;
    if (!out.evanescent)
        out.phi = phase_from_indices(out.n_plus, out.n_minus, we / p.omega_p_over_gamma2,
                                     p.length_param);
    return out;
}

inline PhaseResult compute_phase(const ModelParams& p)
{
    PhaseResult r = evaluate_phase(p);
    if (r.evanescent)
        throw EvanescentError("sideband refractive index is imaginary", r);
    return r;
}

/// True when the sidebands sit in the useful window n- in (0,1), n+ in (1,2).
/// At resonance n+^2 + n-^2 = 2, so n- actually turns imaginary once n+
/// exceeds sqrt(2).
inline bool in_operating_window(const PhaseResult& r)
{
    return !r.evanescent && r.n_minus > 0.0 && r.n_minus < 1.0 && r.n_plus > 1.0
           && r.n_plus < 2.0;
}

struct IndexExtrema {
    double delta_max;  // location of the largest n (largest Re chi)
    double delta_min;
};

/// Extrema of n(delta) near the sidebands, located on Re chi (n is a
/// monotone function of it and Re chi stays defined past evanescence).
inline IndexExtrema find_index_extrema(const ModelParams& p, std::size_t points = 4001)
{
    const double we = p.omega_e();
    if (!(we > std::max(p.gamma_g, p.gamma2)))
        throw Error(ErrorKind::UnresolvedTriplet,
                    "effective Rabi frequency does not exceed the linewidths");
    const double half = 2.0 * we + 5.0;
    const auto xs = numerics::linspace(-half, half, points);
    std::vector<double> re(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k)
        re[k] = eval_chi_linear(xs[k], p).real();

    const auto kmax =
        static_cast<std::size_t>(std::max_element(re.begin(), re.end()) - re.begin());
    const auto kmin =
        static_cast<std::size_t>(std::min_element(re.begin(), re.end()) - re.begin());
    if (kmax == 0 || kmax + 1 == xs.size() || kmin == 0 || kmin + 1 == xs.size())
        throw Error(ErrorKind::UnresolvedTriplet, "index extremum at the scan boundary");

    auto up = [&](double d) { return eval_chi_linear(d, p).real(); };
    auto down = [&](double d) { return -eval_chi_linear(d, p).real(); };
    const auto hi = numerics::golden_section_max(up, xs[kmax - 1], xs[kmax + 1], 1e-9);
    const auto lo = numerics::golden_section_max(down, xs[kmin - 1], xs[kmin + 1], 1e-9);
    return {hi.x, lo.x};
}

} // namespace mollow
