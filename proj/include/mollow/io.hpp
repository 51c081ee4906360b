#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "mollow/correlation.hpp"
#include "mollow/dispersion.hpp"
#include "mollow/errors.hpp"
#include "mollow/model_params.hpp"
#include "mollow/montecarlo.hpp"
#include "mollow/response.hpp"
#include "mollow/sweep.hpp"

namespace mollow::io {

using json = nlohmann::json;

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// Empty field for missing values (evanescent points, masked sweep points).
inline std::string format_optional(double x)
{
    return std::isnan(x) ? std::string{} : format_double(x);
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectralSample>& samples)
{
    os << "delta,re_chi,im_chi,abs_chi3_exact,abs_chi3_approx\n";
    for (const auto& s : samples)
        os << format_double(s.delta) << ',' << format_double(s.chi_linear.real()) << ','
           << format_double(s.chi_linear.imag()) << ',' << format_double(std::abs(s.chi3_exact))
           << ',' << format_double(std::abs(s.chi3_approx)) << '\n';
}

inline void write_dispersion_csv(std::ostream& os, const std::vector<DispersionPoint>& pts)
{
    os << "delta,n,im_chi,group_index,regime,superluminal,evanescent\n";
    for (const auto& p : pts) {
        os << format_double(p.delta) << ',' << (p.n ? format_double(*p.n) : "") << ','
           << format_double(p.absorption) << ','
           << (p.group_index ? format_double(*p.group_index) : "") << ',' << to_string(p.regime)
           << ',' << (p.group_index ? (p.superluminal ? "1" : "0") : "") << ','
           << (p.n ? "0" : "1") << '\n';
    }
}

inline void write_trace_csv(std::ostream& os, const CoincidenceTrace& tr)
{
    os << "tau,rc,env_hi,env_lo\n";
    for (std::size_t k = 0; k < tr.taus.size(); ++k)
        os << format_double(tr.taus[k]) << ',' << format_double(tr.rc[k]) << ','
           << format_double(tr.envelope_hi[k]) << ',' << format_double(tr.envelope_lo[k]) << '\n';
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& r)
{
    os << "axis_value,phi,contrast,visibility,evanescent\n";
    for (std::size_t k = 0; k < r.axis_values.size(); ++k)
        os << format_double(r.axis_values[k]) << ',' << format_optional(r.phi_values[k]) << ','
           << format_optional(r.contrast_values[k]) << ','
           << format_optional(r.visibility_values[k]) << ',' << (r.evanescent_mask[k] ? "1" : "0")
           << '\n';
}

// ---------------------------------------------------------------------------
// configuration

inline const std::vector<std::string>& param_keys()
{
    static const std::vector<std::string> keys = {"gamma_g", "delta_pump", "omega_rabi",
                                                  "g1",      "g3",         "omega_p_over_gamma2",
                                                  "length_param"};
    return keys;
}

inline const std::vector<std::string>& si_keys()
{
    static const std::vector<std::string> keys = {"density", "dipole", "gamma2", "gamma_g",
                                                  "detuning", "rabi", "wavelength",
                                                  "medium_length"};
    return keys;
}

namespace detail {

inline double number_at(const json& obj, const std::string& key)
{
    if (!obj.contains(key))
        throw Error(ErrorKind::ConfigError, "missing key '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw Error(ErrorKind::ConfigError, "key '" + key + "' must be a number");
    return v.get<double>();
}

inline void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                           const std::string& where)
{
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items())
        if (!ok.count(k))
            throw Error(ErrorKind::ConfigError, "unknown key '" + k + "' in " + where);
}

} // namespace detail

inline json params_to_json(const ModelParams& p)
{
    return json{{"gamma_g", p.gamma_g},
                {"delta_pump", p.delta_pump},
                {"omega_rabi", p.omega_rabi},
                {"g1", p.g1},
                {"g3", p.g3},
                {"omega_p_over_gamma2", p.omega_p_over_gamma2},
                {"length_param", p.length_param}};
}

inline SiInputs si_from_json(const json& obj)
{
    if (!obj.is_object())
        throw Error(ErrorKind::ConfigError, "'si' must be an object");
    detail::reject_unknown(obj, si_keys(), "'si'");
    SiInputs si;
    si.density = detail::number_at(obj, "density");
    si.dipole = detail::number_at(obj, "dipole");
    si.gamma2 = detail::number_at(obj, "gamma2");
    si.gamma_g = detail::number_at(obj, "gamma_g");
    si.detuning = detail::number_at(obj, "detuning");
    si.rabi = detail::number_at(obj, "rabi");
    si.wavelength = detail::number_at(obj, "wavelength");
    si.medium_length = detail::number_at(obj, "medium_length");
    return si;
}

/// Parses either the dimensionless form (gamma2 implied 1) or an object
/// whose only key is "si". Returns normalized parameters.
inline ModelParams params_from_json(const json& cfg)
{
    if (!cfg.is_object())
        throw Error(ErrorKind::ConfigError, "configuration must be a JSON object");
    if (cfg.contains("si")) {
        if (cfg.size() != 1)
            throw Error(ErrorKind::ConfigError,
                        "'si' cannot be combined with dimensionless keys");
        return from_si(si_from_json(cfg.at("si")));
    }
    detail::reject_unknown(cfg, param_keys(), "configuration");
    ModelParams p;
    p.gamma2 = 1.0;
    p.gamma_g = detail::number_at(cfg, "gamma_g");
    p.delta_pump = detail::number_at(cfg, "delta_pump");
    p.omega_rabi = detail::number_at(cfg, "omega_rabi");
    p.g1 = detail::number_at(cfg, "g1");
    p.g3 = detail::number_at(cfg, "g3");
    p.omega_p_over_gamma2 = detail::number_at(cfg, "omega_p_over_gamma2");
    p.length_param = detail::number_at(cfg, "length_param");
    return normalize(p);
}

inline ModelParams load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ConfigError, "cannot open config '" + path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("malformed JSON: ") + e.what());
    }
    return params_from_json(cfg);
}

inline json report_to_json(const McReport& r)
{
    return json{{"n_samples", r.n_samples},   {"seed", r.seed},
                {"tau_max", r.tau_max},       {"ks_statistic", r.ks_statistic},
                {"acceptance_rate", r.acceptance_rate},
                {"truncation_bound", r.truncation_bound}};
}

/// JSON number, or null for NaN.
inline json number_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

inline json phase_to_json(const PhaseResult& r)
{
    return json{{"n_plus", number_or_null(r.n_plus)},
                {"n_minus", number_or_null(r.n_minus)},
                {"n_center", number_or_null(r.n_center)},
                {"phi", number_or_null(r.phi)},
                {"evanescent", r.evanescent}};
}

inline json trace_metadata(const BeatParams& bp, const CoincidenceTrace& tr)
{
    return json{{"omega_e", bp.omega_e},
                {"gamma_g", bp.gamma_g},
                {"gamma2", bp.gamma2},
                {"phi", bp.phi},
                {"beat_period_est", number_or_null(tr.beat_period_est)},
                {"center_contrast", tr.center_contrast},
                {"center_visibility", tr.center_visibility},
                {"bell_violating", tr.bell_violating}};
}

} // namespace mollow::io
