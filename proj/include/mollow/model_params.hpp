#pragma once

#include <cmath>
#include <numbers>

#include "mollow/errors.hpp"

namespace mollow {

/// Parameters of the resonantly driven two-level medium.
///
/// Frequencies and rates are expressed in units of the dephasing rate
/// gamma2; after normalize() gamma2 is exactly 1. The couplings g1, g3 and
/// the propagation parameter length_param (omega_p L / 2c) are
/// dimensionless.
struct ModelParams {
    double gamma2 = 1.0;
    double gamma_g = 1.0;
    double delta_pump = 0.0;
    double omega_rabi = 0.0;
    double g1 = 0.0;
    double g3 = 0.0;
    double omega_p_over_gamma2 = 1.0e8;
    double length_param = 0.0;

    /// Effective Rabi frequency sqrt(delta_pump^2 + omega_rabi^2).
    double omega_e() const noexcept { return std::hypot(delta_pump, omega_rabi); }

    bool resonant() const noexcept { return delta_pump == 0.0; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Physical inputs for from_si(). All SI: m^-3, C m, rad/s, m.
struct SiInputs {
    double density = 0.0;
    double dipole = 0.0;
    double gamma2 = 0.0;
    double gamma_g = 0.0;
    double detuning = 0.0;
    double rabi = 0.0;
    double wavelength = 0.0;
    double medium_length = 0.0;

    friend bool operator==(const SiInputs&, const SiInputs&) = default;
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double c = 299792458.0;              // m/s
} // namespace constants

/// Throws unless every invariant of ModelParams holds (in whatever unit
/// gamma2 is currently expressed).
inline void validate(const ModelParams& p)
{
    auto finite = [](double x) { return std::isfinite(x); };
    if (!(finite(p.gamma2) && finite(p.gamma_g) && finite(p.delta_pump) && finite(p.omega_rabi)
          && finite(p.g1) && finite(p.g3) && finite(p.omega_p_over_gamma2)
          && finite(p.length_param)))
        throw Error(ErrorKind::NonPositiveRate, "parameters must be finite");
    if (!(p.gamma2 > 0.0))
        throw Error(ErrorKind::NonPositiveRate, "gamma2 must be > 0");
    if (!(p.gamma_g > 0.0))
        throw Error(ErrorKind::NonPositiveRate, "gamma_g must be > 0");
    if (p.omega_rabi < 0.0)
        throw Error(ErrorKind::NonPositiveRate, "omega_rabi must be >= 0");
    if (p.g1 < 0.0 || p.g3 < 0.0)
        throw Error(ErrorKind::NonPositiveRate, "couplings g1, g3 must be >= 0");
    if (!(p.omega_p_over_gamma2 > 0.0))
        throw Error(ErrorKind::NonPositiveRate, "pump frequency must be > 0");
    if (p.length_param < 0.0)
        throw Error(ErrorKind::NonPositiveRate, "length_param must be >= 0");
    if (p.omega_rabi >= p.omega_p_over_gamma2)
        throw Error(ErrorKind::InconsistentScale,
                    "omega_rabi must be below the pump optical frequency");
}

/// Rescales all frequency-like fields by gamma2 so that gamma2 == 1.
/// Dimensionless fields (g1, g3, length_param) pass through.
inline ModelParams normalize(const ModelParams& raw)
{
    validate(raw);
    const double s = raw.gamma2;
    ModelParams p = raw;
    p.gamma2 = 1.0;
    p.gamma_g = raw.gamma_g / s;
    p.delta_pump = raw.delta_pump / s;
    p.omega_rabi = raw.omega_rabi / s;
    p.omega_p_over_gamma2 = raw.omega_p_over_gamma2 / s;
    return p;
}

/// Builds normalized parameters from SI quantities:
/// g1 = N mu^2 / (hbar eps0 gamma2), g3 = N mu^4 / (hbar^3 eps0 gamma2^3),
/// omega_p = 2 pi c / lambda, length_param = omega_p L / (2c).
inline ModelParams from_si(const SiInputs& si)
{
    auto finite = [](double x) { return std::isfinite(x); };
    if (!(finite(si.density) && finite(si.dipole) && finite(si.gamma2) && finite(si.gamma_g)
          && finite(si.detuning) && finite(si.rabi) && finite(si.wavelength)
          && finite(si.medium_length)))
        throw Error(ErrorKind::UnitError, "SI inputs must be finite");
    if (si.density < 0.0 || si.dipole < 0.0)
        throw Error(ErrorKind::UnitError, "density and dipole must be >= 0");
    if (!(si.gamma2 > 0.0) || !(si.gamma_g > 0.0))
        throw Error(ErrorKind::UnitError, "gamma2 and gamma_g must be > 0");
    if (si.rabi < 0.0)
        throw Error(ErrorKind::UnitError, "rabi frequency must be >= 0");
    if (!(si.wavelength > 0.0))
        throw Error(ErrorKind::UnitError, "wavelength must be > 0");
    if (si.medium_length < 0.0)
        throw Error(ErrorKind::UnitError, "medium_length must be >= 0");

    using namespace constants;
    const double mu2 = si.dipole * si.dipole;
    const double omega_p = 2.0 * std::numbers::pi * c / si.wavelength;

    ModelParams raw;
    raw.gamma2 = si.gamma2;
    raw.gamma_g = si.gamma_g;
    raw.delta_pump = si.detuning;
    raw.omega_rabi = si.rabi;
    raw.g1 = si.density * mu2 / (hbar * epsilon0 * si.gamma2);
    raw.g3 = si.density * mu2 * mu2
             / (hbar * hbar * hbar * epsilon0 * si.gamma2 * si.gamma2 * si.gamma2);
    raw.omega_p_over_gamma2 = omega_p;
    raw.length_param = omega_p * si.medium_length / (2.0 * c);
    try {
        return normalize(raw);
    } catch (const Error& e) {
        throw Error(ErrorKind::UnitError, e.what());
    }
}

} // namespace mollow
