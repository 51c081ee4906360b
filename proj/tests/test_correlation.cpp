#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mollow/correlation.hpp"

using namespace mollow;

namespace {

BeatParams beat(double we, double gg, double g2, double phi)
{
    return BeatParams{we, gg, g2, phi};
}

constexpr double pi = std::numbers::pi;

} // namespace

TEST(Amplitude, CenterInterference)
{
    EXPECT_EQ(std::abs(amplitude(0.0, beat(5.0, 1.0, 1.0, 0.0))), 0.0);
    const auto a = amplitude(0.0, beat(5.0, 1.0, 1.0, pi));
    EXPECT_NEAR(a.real(), -std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(a.imag(), 0.0, 1e-15);
}

TEST(Amplitude, DecaysAtLongDelay)
{
    EXPECT_LT(std::abs(amplitude(60.0, beat(5.0, 1.0, 0.7, 0.3))), 1e-17);
}

TEST(CoincidenceRate, EqualWidthCenterValues)
{
    EXPECT_EQ(coincidence_rate(0.0, beat(5.0, 1.0, 1.0, 0.0)), 0.0);
    EXPECT_NEAR(coincidence_rate(0.0, beat(5.0, 1.0, 1.0, pi)), 1.0, 1e-15);
}

TEST(CoincidenceRate, FirstMaximumOfBeat)
{
    const double t = pi / 5.0;
    EXPECT_NEAR(coincidence_rate(t, beat(5.0, 1.0, 1.0, 0.0)), 0.284609543336029280, 1e-15);
    EXPECT_NEAR(coincidence_rate_equal_width(t, 5.0, 1.0, 0.0), 0.284609543336029280, 1e-15);
}

TEST(CoincidenceRate, NegativeDelayRejected)
{
    try {
        coincidence_rate(-1e-3, beat(5.0, 1.0, 1.0, 0.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidGrid);
    }
    EXPECT_THROW(amplitude(-1.0, beat(5.0, 1.0, 1.0, 0.0)), Error);
    EXPECT_THROW(coincidence_rate_expanded(-1.0, beat(5.0, 1.0, 1.0, 0.0)), Error);
}

TEST(CoincidenceRate, ClosedFormsAgreeOnRandomInputs)
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> tau(0.0, 15.0), rate(0.05, 4.0), we(0.0, 40.0),
        phi(-2.0 * pi, 2.0 * pi);
    for (int k = 0; k < 5000; ++k) {
        const auto bp = beat(we(rng), rate(rng), rate(rng), phi(rng));
        const double t = tau(rng);
        const double rc = coincidence_rate(t, bp);
        EXPECT_NEAR(rc, coincidence_rate_expanded(t, bp), 1e-12);
        EXPECT_NEAR(rc, 0.5 * std::norm(amplitude(t, bp)), 1e-12);
        EXPECT_GE(rc, 0.0);
        EXPECT_LE(envelope_lo(t, bp), rc);
        EXPECT_LE(rc, envelope_hi(t, bp));
    }
}

TEST(CoincidenceRate, EqualWidthLimitIdentical)
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> tau(0.0, 15.0), rate(0.05, 4.0), we(0.0, 40.0),
        phi(-pi, pi);
    for (int k = 0; k < 2000; ++k) {
        const double g = rate(rng);
        const auto bp = beat(we(rng), g, g, phi(rng));
        const double t = tau(rng);
        EXPECT_NEAR(coincidence_rate(t, bp),
                    coincidence_rate_equal_width(t, bp.omega_e, g, bp.phi), 1e-15);
    }
}

TEST(FringeVisibility, HandValues)
{
    EXPECT_NEAR(fringe_visibility(2.0, beat(5.0, 0.5, 1.0, 0.0)), 0.648054273663885400, 1e-15);
    EXPECT_EQ(fringe_visibility(0.0, beat(5.0, 0.2, 3.0, 0.0)), 1.0);
    for (double t : {0.0, 1.0, 7.5})
        EXPECT_EQ(fringe_visibility(t, beat(5.0, 1.3, 1.3, 0.0)), 1.0);
}

TEST(FringeVisibility, RatioOfEnvelopes)
{
    const auto bp = beat(5.0, 0.4, 1.1, 0.0);
    for (double t : {0.3, 1.0, 2.5}) {
        const double hi = envelope_hi(t, bp), lo = envelope_lo(t, bp);
        EXPECT_NEAR(fringe_visibility(t, bp), (hi - lo) / (hi + lo), 1e-12);
    }
}

TEST(CenterMetrics, ThresholdCases)
{
    const auto a = center_metrics(beat(5.0, 1.0, 1.0, 0.0));
    EXPECT_EQ(a.contrast, 1.0);
    EXPECT_EQ(a.visibility, 1.0);
    EXPECT_TRUE(a.bell_violating);
    EXPECT_EQ(a.character, CenterCharacter::anti_bunching);

    const auto b = center_metrics(beat(5.0, 1.0, 1.0, pi / 2.0));
    EXPECT_NEAR(b.contrast, 0.0, 1e-16);
    EXPECT_NEAR(b.visibility, 0.0, 1e-16);
    EXPECT_FALSE(b.bell_violating);

    const auto c = center_metrics(beat(5.0, 1.0, 1.0, pi / 4.0));
    EXPECT_NEAR(c.visibility, 0.7071067811865476, 1e-15);
    EXPECT_FALSE(c.bell_violating);

    const auto d = center_metrics(beat(5.0, 1.0, 1.0, pi));
    EXPECT_EQ(d.character, CenterCharacter::bunching);
    EXPECT_TRUE(d.bell_violating);
}

TEST(CenterMetrics, PeriodicInPhase)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> phi(-pi, pi);
    for (int k = 0; k < 1000; ++k) {
        const double x = phi(rng);
        const auto a = center_metrics(beat(5.0, 1.0, 1.0, x));
        const auto b = center_metrics(beat(5.0, 1.0, 1.0, x + 2.0 * pi));
        EXPECT_NEAR(a.contrast, b.contrast, 1e-14);
        // Cases right at the threshold may legitimately flip by an ulp.
        if (std::abs(a.visibility - bell_threshold) > 1e-12) {
            EXPECT_EQ(a.bell_violating, b.bell_violating);
        }
    }
}

TEST(CenterMetrics, ContrastMatchesCenterRate)
{
    for (double x : {0.0, 0.4, 1.9, 3.0}) {
        const auto bp = beat(5.0, 0.6, 1.4, x);
        EXPECT_NEAR(coincidence_rate(0.0, bp), 0.5 * (1.0 - center_metrics(bp).contrast), 1e-15);
    }
}

TEST(SampleTrace, BeatPeriodWithinOnePercent)
{
    const auto tr = sample_trace(beat(5.0, 1.0, 1.0, 0.0), 6.0, 2000);
    EXPECT_NEAR(tr.beat_period_est, 2.0 * pi / 5.0, 0.01 * 2.0 * pi / 5.0);
    EXPECT_EQ(tr.taus.size(), 2000u);
    EXPECT_EQ(tr.taus.front(), 0.0);
    EXPECT_EQ(tr.taus.back(), 6.0);
    EXPECT_TRUE(tr.bell_violating);
}

TEST(SampleTrace, StrongerPumpHalvesPeriod)
{
    const auto weak = sample_trace(beat(5.0, 1.0, 1.0, 0.0), 6.0, 2000);
    const auto strong = sample_trace(beat(10.0, 1.0, 1.0, 0.0), 6.0, 2000);
    EXPECT_NEAR(weak.beat_period_est / strong.beat_period_est, 2.0, 0.04);
}

TEST(SampleTrace, RateBetweenEnvelopesPointwise)
{
    const auto tr = sample_trace(beat(7.0, 0.3, 1.2, 1.1), 20.0, 5001);
    for (std::size_t k = 0; k < tr.taus.size(); ++k) {
        EXPECT_LE(tr.rc[k], tr.envelope_hi[k]);
        EXPECT_GE(tr.rc[k], tr.envelope_lo[k]);
        EXPECT_GE(tr.envelope_lo[k], 0.0);
    }
}

TEST(SampleTrace, NoMinimaGivesNaNPeriod)
{
    const auto tr = sample_trace(beat(0.0, 1.0, 1.0, 0.0), 6.0, 200);
    EXPECT_TRUE(std::isnan(tr.beat_period_est));
}

TEST(SampleTrace, RejectsBadGrid)
{
    EXPECT_THROW(sample_trace(beat(5.0, 1.0, 1.0, 0.0), 0.0, 100), Error);
    EXPECT_THROW(sample_trace(beat(5.0, 1.0, 1.0, 0.0), 5.0, 1), Error);
}
