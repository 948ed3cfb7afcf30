#include "rydgate/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rydgate;

TEST(SweepGrid, EndpointsAndSpacing) {
    const auto x = sweep_grid(-1.0, 1.0, 101);
    ASSERT_EQ(x.size(), 101u);
    EXPECT_EQ(x.front(), -1.0);
    EXPECT_EQ(x.back(), 1.0);
    EXPECT_EQ(x[50], 0.0);
}

TEST(SweepGrid, DoubledGridSharesPoints) {
    const auto a = sweep_grid(0.2, 10.0, 25);
    const auto b = sweep_grid(0.2, 10.0, 49);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[2 * i]);
}

TEST(SweepSpec, Validation) {
    SweepSpec s{SweepAxis::Detuning, 1.0, -1.0, 5, gsc_base()};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {SweepAxis::Detuning, -1.0, 1.0, 1, gsc_base()};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {SweepAxis::RatioRect, 0.0, 1.0, 3, rect_base(1.0)};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    EXPECT_THROW(sweep_ratio(RatioScheme::Gsc, 1.0, 25.0, 3), std::invalid_argument);
    EXPECT_THROW(sweep_relative_error(ErrorTarget::GateTime, -0.6, 0.1, 3), std::invalid_argument);
}

TEST(ApplyAxis, ModifiesOnlyItsParameter) {
    const GateConfig base = gsc_base(1.3, 2.0);
    EXPECT_EQ(apply_axis(base, SweepAxis::Detuning, 0.5).params.delta2, 1.0);
    const GateConfig k = apply_axis(base, SweepAxis::KappaDecay, 0.01);
    EXPECT_EQ(k.params.kappa, 0.02);
    EXPECT_TRUE(k.dissipative);
    const GateConfig gm = apply_axis(base, SweepAxis::GammaDecay, 0.01);
    EXPECT_EQ(gm.params.gamma1, 0.02);
    EXPECT_EQ(gm.params.gamma2, 0.02);
    EXPECT_DOUBLE_EQ(*apply_axis(base, SweepAxis::RelErrT, 0.1).duration_override, 1.1 * gate_time(base.pulse));
    const GateConfig dg = apply_axis(base, SweepAxis::RelErrG, -0.1);
    EXPECT_DOUBLE_EQ(dg.params.g, 1.8);
    EXPECT_EQ(peak_rabi_frequency(dg.pulse), peak_rabi_frequency(base.pulse));
}

TEST(SweepRatio, RectangularMagicRatiosAreMaxima) {
    for (double r : {std::sqrt(3.0) / 2, std::sqrt(15.0) / 2, std::sqrt(35.0) / 2}) {
        const SweepResult s = sweep_ratio(RatioScheme::Rectangular, r * 0.97, r * 1.03, 3);
        EXPECT_GT(s.fidelity_rect[1], 0.999);
        EXPECT_GT(s.fidelity_rect[1], s.fidelity_rect[0]);
        EXPECT_GT(s.fidelity_rect[1], s.fidelity_rect[2]);
        EXPECT_TRUE(s.fidelity_gsc.empty());
    }
}

TEST(SweepRatio, Plateaus) {
    const SweepResult gsc = sweep_ratio(RatioScheme::Gsc, 1.05, 10.0, 12);
    EXPECT_GT(*std::min_element(gsc.fidelity_gsc.begin(), gsc.fidelity_gsc.end()), 0.99);
    const SweepResult rect = sweep_ratio(RatioScheme::Rectangular, 8.0, 10.0, 9);
    EXPECT_GT(*std::min_element(rect.fidelity_rect.begin(), rect.fidelity_rect.end()), 0.99);
}

TEST(SweepRatio, DeterministicAcrossWorkerCounts) {
    const SweepResult a = sweep_ratio_both(0.5, 4.0, 7, RunOptions{1});
    const SweepResult b = sweep_ratio_both(0.5, 4.0, 7, RunOptions{4});
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.fidelity_gsc, b.fidelity_gsc);
    EXPECT_EQ(a.fidelity_rect, b.fidelity_rect);
    EXPECT_EQ(a.meta.entries, b.meta.entries);
}

TEST(SweepRatio, DoubledPointsAgreeOnSharedValues) {
    const SweepResult a = sweep_ratio(RatioScheme::Rectangular, 0.5, 3.0, 5);
    const SweepResult b = sweep_ratio(RatioScheme::Rectangular, 0.5, 3.0, 9);
    for (std::size_t i = 0; i < a.x.size(); ++i) EXPECT_NEAR(a.fidelity_rect[i], b.fidelity_rect[2 * i], 1e-12);
}

TEST(SweepRelativeError, ZeroErrorIsNominalAndGscDropsLess) {
    const SweepResult t = sweep_relative_error(ErrorTarget::GateTime, -0.1, 0.1, 3);
    const SweepResult g = sweep_relative_error(ErrorTarget::Coupling, -0.1, 0.1, 3);
    const auto bases = relative_error_bases();
    const double f_gsc = bell_fidelity(run_gate(*bases.gsc));
    const double f_rect = bell_fidelity(run_gate(*bases.rect));
    for (const SweepResult* s : {&t, &g}) {
        EXPECT_NEAR(s->fidelity_gsc[1], f_gsc, 1e-12);
        EXPECT_NEAR(s->fidelity_rect[1], f_rect, 1e-12);
        for (std::size_t i : {0u, 2u}) EXPECT_LT(f_gsc - s->fidelity_gsc[i], f_rect - s->fidelity_rect[i]);
    }
}

TEST(SweepDetuning, CentreIsIdealAndBothSignsComputed) {
    const SweepResult s = sweep_detuning(-0.5, 0.5, 3);
    EXPECT_TRUE(s.fidelity_rect.empty());
    EXPECT_NEAR(s.fidelity_gsc[1], bell_fidelity(run_gate(gsc_base())), 1e-12);
    EXPECT_GT(s.fidelity_gsc[1], 0.99);
    EXPECT_LT(s.fidelity_gsc[0], s.fidelity_gsc[1]);
    EXPECT_LT(s.fidelity_gsc[2], s.fidelity_gsc[1]);
}

TEST(SweepDecay, OrderingAndIdealEndpoint) {
    const SweepResult gm = sweep_decay(DecayChannel::Gamma, 0.0, 0.02, 3);
    const SweepResult kp = sweep_decay(DecayChannel::Kappa, 0.0, 0.02, 3);
    const auto bases = decay_bases();
    EXPECT_NEAR(gm.fidelity_gsc[0], bell_fidelity(run_gate(*bases.gsc)), 1e-9);
    EXPECT_NEAR(gm.fidelity_rect[0], bell_fidelity(run_gate(*bases.rect)), 1e-9);
    for (std::size_t i = 1; i < 3; ++i) {
        EXPECT_LT(kp.fidelity_gsc[i], gm.fidelity_gsc[i]);
        EXPECT_LT(kp.fidelity_rect[i], gm.fidelity_rect[i]);
        EXPECT_GE(gm.fidelity_gsc[i], gm.fidelity_rect[i]);
        EXPECT_GE(kp.fidelity_gsc[i], kp.fidelity_rect[i]);
        EXPECT_LT(gm.fidelity_gsc[i], gm.fidelity_gsc[i - 1]);
    }
}

TEST(FidelityTrajectory, StartEndAndQuietOnset) {
    const SweepResult r = fidelity_trajectory();
    ASSERT_EQ(r.x.size(), r.fidelity_gsc.size());
    ASSERT_EQ(r.x.size(), r.fidelity_rect.size());
    EXPECT_EQ(r.x.front(), 0.0);
    EXPECT_NEAR(r.x.back(), kMatchedWindow, 1e-12);
    EXPECT_NEAR(r.fidelity_gsc.front(), 0.25, 1e-15);
    EXPECT_NEAR(r.fidelity_rect.front(), 0.25, 1e-15);
    EXPECT_GT(r.fidelity_gsc.back(), 0.99);
    EXPECT_GT(r.fidelity_rect.back(), 0.99);
    const double t_gate = gate_time(trajectory_bases().gsc->pulse);
    for (std::size_t i = 0; i < r.x.size() && r.x[i] < 0.15 * t_gate; ++i) EXPECT_NEAR(r.fidelity_gsc[i], 0.25, 0.02);
}

TEST(Cesium, ExceedsThresholdAndImprovesWithQ) {
    const double f = cesium_example();
    EXPECT_GT(f, 0.98);
    GateConfig c = cesium_config();
    c.params.kappa *= 0.1;
    EXPECT_GT(bell_fidelity(run_gate(c)), f);
    c.params.gamma1 = c.params.gamma2 = c.params.kappa = 0.0;
    EXPECT_NEAR(bell_fidelity(run_gate(c)), bell_fidelity(run_gate(gsc_base())), 1e-9);
}

TEST(Metadata, RecordsBaseParameters) {
    const SweepResult s = sweep_detuning(-0.1, 0.1, 2);
    auto has = [&](const std::string& key) {
        return std::any_of(s.meta.entries.begin(), s.meta.entries.end(), [&](const auto& e) { return e.first == key; });
    };
    for (const char* key : {"axis", "gsc.pulse", "gsc.g", "gsc.dt", "gsc.T"}) EXPECT_TRUE(has(key)) << key;
    EXPECT_GE(s.meta.wall_seconds, 0.0);
}
