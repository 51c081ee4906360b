#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mollow {

enum class ErrorKind {
    // parameter / usage errors
    NonPositiveRate,
    InconsistentScale,
    UnitError,
    ConfigError,
    UnknownAxis,
    InvalidGrid,
    // numeric-domain errors
    UnresolvedTriplet,
    EvanescentRegion,
    DegenerateDensity,
    IndexMatched,
    NoBracket,
    NonMonotonic,
    NonResonant,
    NoSolution,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonPositiveRate: return "NonPositiveRate";
    case ErrorKind::InconsistentScale: return "InconsistentScale";
    case ErrorKind::UnitError: return "UnitError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::UnknownAxis: return "UnknownAxis";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::UnresolvedTriplet: return "UnresolvedTriplet";
    case ErrorKind::EvanescentRegion: return "EvanescentRegion";
    case ErrorKind::DegenerateDensity: return "DegenerateDensity";
    case ErrorKind::IndexMatched: return "IndexMatched";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NonMonotonic: return "NonMonotonic";
    case ErrorKind::NonResonant: return "NonResonant";
    case ErrorKind::NoSolution: return "NoSolution";
    }
    return "Unknown";
}

/// True for errors caused by bad input rather than by the physics of a
/// valid input (maps to CLI exit code 2 instead of 3).
constexpr bool is_usage_error(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonPositiveRate:
    case ErrorKind::InconsistentScale:
    case ErrorKind::UnitError:
    case ErrorKind::ConfigError:
    case ErrorKind::UnknownAxis:
    case ErrorKind::InvalidGrid:
        return true;
    default:
        return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), m_kind(kind)
    {
    }

    ErrorKind kind() const noexcept { return m_kind; }

private:
    ErrorKind m_kind;
};

} // namespace mollow
