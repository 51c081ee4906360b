#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mollow/dispersion.hpp"

using namespace mollow;

namespace {

ModelParams resonant(double gg, double w, double g1)
{
    ModelParams p;
    p.gamma_g = gg;
    p.omega_rabi = w;
    p.g1 = g1;
    p.g3 = 1.0;
    p.omega_p_over_gamma2 = 1e8;
    p.length_param = 100.0;
    return p;
}

// Root of the central-difference slope between a and b (sign change
// assumed), by plain bisection.
double slope_root(const ModelParams& p, double a, double b, double h)
{
    double fa = dispersion_slope(a, p, h);
    for (int k = 0; k < 200; ++k) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b)
            break;
        const double fm = dispersion_slope(m, p, h);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

TEST(RefractiveIndex, UnityAtResonantLineCenter)
{
    for (double w : {0.0, 2.0, 20.0}) {
        const auto n = refractive_index(0.0, resonant(0.7, w, 3.0));
        ASSERT_TRUE(n);
        EXPECT_NEAR(*n, 1.0, 1e-12);
    }
}

TEST(RefractiveIndex, VacuumWithoutCoupling)
{
    const auto p = resonant(1.0, 5.0, 0.0);
    for (double d : {-30.0, -5.0, 0.0, 1.0, 5.0, 12.0})
        EXPECT_EQ(refractive_index(d, p).value(), 1.0);
}

TEST(RefractiveIndex, EvanescentPastNegativeUnitSusceptibility)
{
    auto p = resonant(1.0, 20.0, 1.0);
    const double unit = eval_chi_linear(-20.0, p).real();
    ASSERT_LT(unit, 0.0);
    p.g1 = 1.5 / std::abs(unit);
    EXPECT_NEAR(eval_chi_linear(-20.0, p).real(), -1.5, 1e-12);
    EXPECT_FALSE(refractive_index(-20.0, p).has_value());
    EXPECT_TRUE(refractive_index(20.0, p).has_value());
}

TEST(RefractiveIndex, SquaredIndexAntisymmetricAtResonance)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gg(0.05, 3.0), w(0.0, 30.0), g1(0.0, 0.15),
        d(0.0, 70.0);
    for (int k = 0; k < 1000; ++k) {
        const auto p = resonant(gg(rng), w(rng), g1(rng));
        const double x = d(rng);
        const auto a = refractive_index(x, p);
        const auto b = refractive_index(-x, p);
        if (!a || !b)
            continue;
        EXPECT_NEAR(*a * *a - 1.0, -(*b * *b - 1.0), 1e-12);
    }
}

TEST(GroupIndex, VacuumIsOne)
{
    const auto p = resonant(1.0, 3.0, 0.0);
    for (double d : {-4.0, 0.0, 2.5})
        EXPECT_EQ(group_index(d, p), 1.0);
}

TEST(GroupIndex, SuperluminalAtCenterOfDiluteMedium)
{
    const auto p = resonant(1.0, 2.0, 1e-6);
    EXPECT_LT(dispersion_slope(0.0, p, 1e-4), 0.0);
    EXPECT_LT(group_index(0.0, p), 1.0);
    EXPECT_TRUE(dispersion_point(0.0, p, default_fd_step(p)).superluminal);
}

TEST(GroupIndex, SecondOrderConvergence)
{
    auto p = resonant(1.0, 2.0, 0.01);
    p.omega_p_over_gamma2 = 1e3;
    const double x = 0.9;
    const double g1 = group_index(x, p, 0.2);
    const double g2 = group_index(x, p, 0.1);
    const double g3 = group_index(x, p, 0.05);
    const double ratio = (g1 - g2) / (g2 - g3);
    EXPECT_NEAR(ratio, 4.0, 0.25);
}

TEST(GroupIndex, EvanescentStencilRejected)
{
    const auto p = resonant(1.0, 20.0, 1.0);
    try {
        group_index(-20.0, p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EvanescentRegion);
    }
    EXPECT_THROW(group_index(0.0, p, 0.0), Error);
}

TEST(ClassifyDispersion, CenterIsAnomalous)
{
    for (double w : {2.0, 5.0, 20.0}) {
        const auto c = classify_dispersion(0.0, resonant(1.0, w, 0.5));
        EXPECT_EQ(c.regime, DispersionRegime::anomalous);
        EXPECT_FALSE(c.near_zero);
    }
}

TEST(ClassifyDispersion, IndexExtremumFlaggedNearZero)
{
    const auto p = resonant(1.0, 20.0, 1.0);
    const double h = default_fd_step(p);
    const double top = slope_root(p, 19.0, 20.5, h);
    const auto c = classify_dispersion(top, p, h);
    EXPECT_TRUE(c.near_zero);
    EXPECT_LT(std::abs(c.slope), 1e-10 * p.g1);
    // Away from the extremum the sign decides.
    EXPECT_EQ(classify_dispersion(top - 0.5, p, h).regime, DispersionRegime::normal);
    EXPECT_EQ(classify_dispersion(top + 0.5, p, h).regime, DispersionRegime::anomalous);
}

TEST(ClassifyDispersion, VacuumIsNormalWithZeroFlag)
{
    const auto c = classify_dispersion(1.0, resonant(1.0, 4.0, 0.0));
    EXPECT_EQ(c.regime, DispersionRegime::normal);
    EXPECT_TRUE(c.near_zero);
    EXPECT_EQ(c.slope, 0.0);
}

TEST(ComputePhase, IndexMatchedVacuumHasZeroPhase)
{
    const auto r = compute_phase(resonant(1.0, 5.0, 0.0));
    EXPECT_EQ(r.phi, 0.0);
    EXPECT_EQ(r.n_plus, 1.0);
    EXPECT_EQ(r.n_minus, 1.0);
}

TEST(ComputePhase, RegroupedFormHandValue)
{
    EXPECT_NEAR(phase_from_indices(1.2, 0.8, 1e-3, 500.0), -0.2, 1e-14);
    // Same value through the ungrouped wave-number form.
    const double r = 1e-3, beta = 500.0;
    const double naive = beta * (2.0 * 1.0 - 1.2 * (1.0 + r) - 0.8 * (1.0 - r));
    EXPECT_NEAR(phase_from_indices(1.2, 0.8, r, beta), naive, 1e-12);
}

TEST(ComputePhase, LinearInLength)
{
    auto p = resonant(1.0, 5.0, 0.05);
    const double a = compute_phase(p).phi;
    p.length_param *= 2.0;
    EXPECT_EQ(compute_phase(p).phi, 2.0 * a);
    p.length_param = 0.0;
    EXPECT_EQ(compute_phase(p).phi, 0.0);
}

TEST(ComputePhase, MatchesUngroupedWaveNumbers)
{
    auto p = resonant(1.0, 5.0, 0.05);
    p.omega_p_over_gamma2 = 1e3;
    p.length_param = 7.0;
    const auto r = compute_phase(p);
    const double wp = p.omega_p_over_gamma2, we = p.omega_e();
    // phi = [2 k0 - (k+ + k-)] L / 2 with k = n w / c and beta = wp L / 2c.
    const double naive =
        p.length_param / wp * (2.0 * r.n_center * wp - r.n_plus * (wp + we) - r.n_minus * (wp - we));
    EXPECT_NEAR(r.phi, naive, 1e-9);
}

TEST(ComputePhase, ResonantInvariants)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> gg(0.05, 3.0), w(0.5, 30.0), g1(0.0, 2.0);
    int valid = 0;
    for (int k = 0; k < 500; ++k) {
        const auto p = resonant(gg(rng), w(rng), g1(rng));
        const auto r = evaluate_phase(p);
        EXPECT_NEAR(r.n_center, 1.0, 1e-12);
        const double radicand = 1.0 + eval_chi_linear(-p.omega_e(), p).real();
        EXPECT_EQ(r.evanescent, radicand < 0.0);
        // Below resolution the sidebands sit inside the absorption line and
        // the index ordering flips, so only resolved pumps are checked.
        const bool resolved = p.omega_e() > 2.0 * (p.gamma_g + p.gamma2);
        if (!r.evanescent && p.g1 > 0.0 && resolved) {
            ++valid;
            EXPECT_TRUE(in_operating_window(r)) << p.gamma_g << " " << p.omega_rabi << " " << p.g1;
            EXPECT_LT(r.n_plus, std::sqrt(2.0) + 1e-12);
        }
    }
    EXPECT_GT(valid, 50);
}

TEST(ComputePhase, EvanescentLowerSidebandReportsUpperIndex)
{
    const auto p = resonant(1.0, 20.0, 1.0);
    try {
        compute_phase(p);
        FAIL();
    } catch (const EvanescentError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EvanescentRegion);
        EXPECT_TRUE(e.partial().evanescent);
        EXPECT_GT(e.partial().n_plus, 2.0);
        EXPECT_TRUE(std::isnan(e.partial().n_minus));
    }
}

TEST(IndexExtrema, NearSidebandsAndSymmetric)
{
    const auto p = resonant(1.0, 20.0, 1.0);
    const auto ext = find_index_extrema(p);
    EXPECT_NEAR(ext.delta_max, 20.0, 2.0);
    EXPECT_NEAR(ext.delta_min, -20.0, 2.0);
    EXPECT_NEAR(ext.delta_max, -ext.delta_min, 1e-6);
}

TEST(IndexExtrema, LocallyTransparent)
{
    for (double w : {5.0, 20.0}) {
        const auto p = resonant(1.0, w, 1.0);
        const auto ext = find_index_extrema(p);
        const double center = std::abs(eval_chi_linear(0.0, p).imag());
        EXPECT_LT(std::abs(eval_chi_linear(ext.delta_max, p).imag()), center);
        EXPECT_LT(std::abs(eval_chi_linear(ext.delta_min, p).imag()), center);
    }
}

TEST(IndexExtrema, UnresolvedPumpRejected)
{
    EXPECT_THROW(find_index_extrema(resonant(1.0, 0.5, 1.0)), Error);
}
