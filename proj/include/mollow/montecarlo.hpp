#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mollow/correlation.hpp"
#include "mollow/errors.hpp"
#include "mollow/numerics.hpp"
#include "mollow/parallel.hpp"

namespace mollow {

struct McReport {
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    double tau_max = 0.0;
    double ks_statistic = 0.0;
    double acceptance_rate = 0.0;
    double truncation_bound = 0.0;  // upper bound on the density mass past tau_max
};

/// Window where the envelope has decayed by 10^6.
inline double default_tau_max(const BeatParams& bp)
{
    return std::log(1.0e6) / (bp.gamma_g + bp.gamma2);
}

/// R_c(tau) normalized to a probability density on [0, tau_max], with its
/// CDF evaluated by adaptive Gauss-Kronrod quadrature.
class RcDensity {
public:
    RcDensity(const BeatParams& bp, double tau_max) : m_bp(bp), m_tau_max(tau_max)
    {
        if (!(tau_max > 0.0) || !std::isfinite(tau_max))
            throw Error(ErrorKind::InvalidGrid, "tau_max must be positive and finite");
        // Segment the window so that each piece spans at most half a beat.
        const double half_period =
            bp.omega_e > 0.0 ? std::numbers::pi / bp.omega_e : tau_max;
        const auto pieces = static_cast<std::size_t>(
            std::clamp(std::ceil(tau_max / half_period), 1.0, 1.0e6));
        m_norm = 0.0;
        for (std::size_t k = 0; k < pieces; ++k) {
            const double a = tau_max * static_cast<double>(k) / static_cast<double>(pieces);
            const double b = tau_max * static_cast<double>(k + 1) / static_cast<double>(pieces);
            m_norm += integrate(a, b);
        }
        if (!(m_norm > 0.0))
            throw Error(ErrorKind::DegenerateDensity, "coincidence rate vanishes identically");
    }

    const BeatParams& beat() const noexcept { return m_bp; }
    double tau_max() const noexcept { return m_tau_max; }
    double normalization() const noexcept { return m_norm; }

    double pdf(double tau) const { return coincidence_rate(tau, m_bp) / m_norm; }

    /// Unnormalized integral of R_c over [a, b]: 15-point Gauss-Kronrod with
    /// bisection until the Kronrod-Gauss difference is within an absolute
    /// budget of 1e-10 spread over the window in proportion to width.
    double integrate(double a, double b) const
    {
        if (b <= a)
            return 0.0;
        return integrate_piece(a, b, 0);
    }

    double cdf(double tau) const
    {
        if (tau <= 0.0)
            return 0.0;
        if (tau >= m_tau_max)
            return 1.0;
        return integrate(0.0, tau) / m_norm;
    }

    /// Mass of the untruncated rate beyond tau_max, relative to the window
    /// mass; bounded with the upper envelope.
    double truncation_bound() const
    {
        const double T = m_tau_max;
        const double gg = m_bp.gamma_g, g2 = m_bp.gamma2, s = gg + g2;
        const double tail = 0.25 * (std::exp(-2.0 * gg * T) / (2.0 * gg)
                                    + std::exp(-2.0 * g2 * T) / (2.0 * g2))
                            + 0.5 * std::exp(-s * T) / s;
        return tail / m_norm;
    }

private:
    // Kronrod-15 estimate with its embedded Gauss-7 difference as the error.
    std::pair<double, double> kronrod_piece(double a, double b) const
    {
        using boost::math::quadrature::gauss;
        using boost::math::quadrature::gauss_kronrod;
        static const auto& x = gauss_kronrod<double, 15>::abscissa();
        static const auto& wk = gauss_kronrod<double, 15>::weights();
        static const auto& wg = gauss<double, 7>::weights();
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const double f0 = coincidence_rate(mid, m_bp);
        double kronrod = wk[0] * f0;
        double gauss7 = wg[0] * f0;
        for (std::size_t j = 1; j < x.size(); ++j) {
            const double fsum = coincidence_rate(mid - half * x[j], m_bp)
                                + coincidence_rate(mid + half * x[j], m_bp);
            kronrod += wk[j] * fsum;
            if (j % 2 == 0)
                gauss7 += wg[j / 2] * fsum;
        }
        return {kronrod * half, std::abs(kronrod - gauss7) * half};
    }

    double integrate_piece(double a, double b, int depth) const
    {
        const auto [v, err] = kronrod_piece(a, b);
        const double budget = abs_tol * (b - a) / m_tau_max;
        if (err <= budget || depth >= 40)
            return v;
        const double m = 0.5 * (a + b);
        return integrate_piece(a, m, depth + 1) + integrate_piece(m, b, depth + 1);
    }

    static constexpr double abs_tol = 1e-10;

    BeatParams m_bp;
    double m_tau_max;
    double m_norm = 0.0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// 53 random mantissa bits -> [0, 1).
inline double unit_interval(std::mt19937_64& eng)
{
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline constexpr std::size_t mc_chunk = 1u << 16;

} // namespace detail

struct SampleSet {
    std::vector<double> taus;
    std::uint64_t proposals = 0;
};

/// Rejection sampler majorizer: grid maximum of R_c inflated by 1%.
inline double rc_majorizer(const BeatParams& bp, double tau_max)
{
    const double per_period = bp.omega_e * tau_max / (2.0 * std::numbers::pi);
    const auto points = static_cast<std::size_t>(
        std::clamp(std::ceil(200.0 * per_period) + 1.0, 10001.0, 1.0e7));
    double peak = 0.0;
    for (double t : numerics::linspace(0.0, tau_max, points))
        peak = std::max(peak, coincidence_rate(t, bp));
    return 1.01 * peak;
}

/// n independent draws from p(tau) ~ R_c(tau) on [0, tau_max]. Draws are
/// produced in fixed-size chunks, each with its own stream seeded from
/// (seed, chunk index), so the sequence is the same for any worker count.
inline SampleSet sample_tau(const BeatParams& bp, std::size_t n, std::uint64_t seed,
                            double tau_max)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidGrid, "need at least one sample");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max))
        throw Error(ErrorKind::InvalidGrid, "tau_max must be positive and finite");
    const double bound = rc_majorizer(bp, tau_max);
    if (!(bound > 0.0))
        throw Error(ErrorKind::DegenerateDensity, "coincidence rate vanishes identically");

    const std::size_t chunks = (n + detail::mc_chunk - 1) / detail::mc_chunk;
    SampleSet out;
    out.taus.resize(n);
    std::vector<std::uint64_t> proposals(chunks, 0);

    parallel_for(chunks, [&](std::size_t c) {
        std::mt19937_64 eng(detail::splitmix64(seed ^ detail::splitmix64(c)));
        const std::size_t lo = c * detail::mc_chunk;
        const std::size_t hi = std::min(n, lo + detail::mc_chunk);
        std::uint64_t tried = 0;
        for (std::size_t i = lo; i < hi;) {
            const double tau = tau_max * detail::unit_interval(eng);
            const double u = bound * detail::unit_interval(eng);
            ++tried;
            if (u < coincidence_rate(tau, bp))
                out.taus[i++] = tau;
        }
        proposals[c] = tried;
    });
    for (auto p : proposals)
        out.proposals += p;
    return out;
}

inline SampleSet sample_tau(const BeatParams& bp, std::size_t n, std::uint64_t seed)
{
    return sample_tau(bp, n, seed, default_tau_max(bp));
}

/// Kolmogorov-Smirnov distance between the samples and the density's CDF.
/// The CDF is accumulated interval by interval over the sorted samples.
inline double ks_distance(std::vector<double> taus, const RcDensity& density)
{
    std::sort(taus.begin(), taus.end());
    const double n = static_cast<double>(taus.size());
    double mass = 0.0;
    double prev = 0.0;
    double d = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        mass += density.integrate(prev, taus[i]);
        prev = taus[i];
        const double F = mass / density.normalization();
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    return std::clamp(d, 0.0, 1.0);
}

inline McReport validate(const BeatParams& bp, std::size_t n, std::uint64_t seed, double tau_max)
{
    const RcDensity density(bp, tau_max);
    const SampleSet s = sample_tau(bp, n, seed, tau_max);
    McReport r;
    r.n_samples = n;
    r.seed = seed;
    r.tau_max = tau_max;
    r.ks_statistic = ks_distance(s.taus, density);
    r.acceptance_rate = static_cast<double>(n) / static_cast<double>(s.proposals);
    r.truncation_bound = density.truncation_bound();
    return r;
}

inline McReport validate(const BeatParams& bp, std::size_t n, std::uint64_t seed)
{
    return validate(bp, n, seed, default_tau_max(bp));
}

} // namespace mollow
