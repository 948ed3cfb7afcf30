#include "rydgate/numerics.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace rydgate;
using rydgate::fixtures::random_hermitian;
using rydgate::fixtures::random_matrix;
using rydgate::fixtures::random_state;

namespace {

// Independent triple-loop product (no zero skipping, explicit accumulation).
CMatrix triple_loop_product(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Complex s{};
            for (std::size_t k = 0; k < a.dim(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

}  // namespace

TEST(Matmul, IdentityIsNeutral) {
    std::mt19937_64 rng(1);
    const CMatrix m = random_matrix(8, rng);
    EXPECT_EQ(matmul(CMatrix::identity(8), m), m);
}

TEST(Matmul, SwapIsInvolution) {
    const CMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    EXPECT_EQ(matmul(x, x), CMatrix::identity(2));
}

TEST(Matmul, MatchesTripleLoop) {
    std::mt19937_64 rng(2);
    const CMatrix a = random_matrix(3, rng);
    const CMatrix b = random_matrix(3, rng);
    EXPECT_LT(max_abs_diff(matmul(a, b), triple_loop_product(a, b)), 1e-14);
}

TEST(Matmul, DimensionMismatchThrows) { EXPECT_THROW(matmul(CMatrix(2), CMatrix(3)), std::invalid_argument); }

TEST(Dagger, IdentityAndInvolution) {
    EXPECT_EQ(dagger(CMatrix::identity(4)), CMatrix::identity(4));
    std::mt19937_64 rng(3);
    const CMatrix m = random_matrix(5, rng);
    EXPECT_EQ(dagger(dagger(m)), m);
}

TEST(Dagger, AnnihilationBecomesCreation) {
    CMatrix a(2);
    a(0, 1) = 1.0;
    const CMatrix ad = dagger(a);
    const CVector up = apply(ad, CVector::basis(2, 0));
    EXPECT_EQ(up, CVector::basis(2, 1));
    EXPECT_EQ(apply(ad, CVector::basis(2, 1)), CVector(2));
}

TEST(Kron, IdentityBlocks) { EXPECT_EQ(kron(CMatrix::identity(2), CMatrix::identity(4)), CMatrix::identity(8)); }

TEST(Kron, PhotonProjectorBlock) {
    const CMatrix p = kron(CMatrix::diagonal({0.0, 1.0}), CMatrix::identity(4));
    for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(p(k, k), Complex(k >= 4 ? 1.0 : 0.0));
    EXPECT_EQ(trace(p), Complex(4.0));
}

TEST(Kron, CavityLoweringWithAtomTransition) {
    CMatrix a(2);
    a(0, 1) = 1.0;
    CMatrix r2_r1(4);
    r2_r1(3, 2) = 1.0;  // |r2⟩⟨r1|
    const CVector out = apply(kron(a, r2_r1), CVector::basis(8, 4 + 2));  // |1_m r1⟩
    EXPECT_EQ(out, CVector::basis(8, 0 + 3));                            // |0_m r2⟩
}

TEST(HermitianEig, DiagonalInput) {
    const auto es = hermitian_eig(CMatrix::diagonal({1.0, 2.0, 3.0}));
    EXPECT_DOUBLE_EQ(es.values[0], 1.0);
    EXPECT_DOUBLE_EQ(es.values[1], 2.0);
    EXPECT_DOUBLE_EQ(es.values[2], 3.0);
    EXPECT_LT(max_abs_diff(es.vectors, CMatrix::identity(3)), 1e-15);
}

TEST(HermitianEig, ThreeLevelLadderSpectrum) {
    // λ(λ² − (g² + Ω²/4)) = 0 with g = √3/2, Ω = 1 gives λ ∈ {−1, 0, 1}.
    const double g = std::sqrt(3.0) / 2.0;
    const CMatrix h{{0.0, 0.5, 0.0}, {0.5, 0.0, g}, {0.0, g, 0.0}};
    const auto es = hermitian_eig(h);
    EXPECT_NEAR(es.values[0], -1.0, 1e-14);
    EXPECT_NEAR(es.values[1], 0.0, 1e-14);
    EXPECT_NEAR(es.values[2], 1.0, 1e-14);
}

TEST(HermitianEig, ReconstructsRandomHermitian) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix m = random_hermitian(8, rng);
        const auto es = hermitian_eig(m);
        CMatrix lambda(8);
        for (std::size_t k = 0; k < 8; ++k) lambda(k, k) = es.values[k];
        const CMatrix rebuilt = es.vectors * lambda * dagger(es.vectors);
        EXPECT_LT(max_abs_diff(rebuilt, m), 1e-10);
        EXPECT_LT(max_abs_diff(dagger(es.vectors) * es.vectors, CMatrix::identity(8)), 1e-10);
        for (std::size_t k = 1; k < 8; ++k) EXPECT_LE(es.values[k - 1], es.values[k]);
    }
}

TEST(HermitianEig, RejectsNonHermitian) {
    const CMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    EXPECT_THROW(hermitian_eig(m), std::invalid_argument);
}

TEST(PropagatorExact, ZeroTimeIsIdentity) {
    std::mt19937_64 rng(5);
    EXPECT_LT(max_abs_diff(propagator_exact(random_hermitian(8, rng), 0.0), CMatrix::identity(8)), 1e-12);
}

TEST(PropagatorExact, TwoLevelFullCycleFlipsSign) {
    const double omega = 1.7;
    const CMatrix h{{0.0, omega / 2}, {omega / 2, 0.0}};
    const CVector out = apply(propagator_exact(h, 2 * std::numbers::pi / omega), CVector::basis(2, 0));
    EXPECT_LT(max_abs_diff(out, -1.0 * CVector::basis(2, 0)), 1e-12);
}

TEST(PropagatorExact, LadderReturnsAtMagicRatio) {
    const double omega = 1.0;
    const double g = std::sqrt(3.0) / 2.0 * omega;
    const CMatrix h{{0.0, omega / 2, 0.0}, {omega / 2, 0.0, g}, {0.0, g, 0.0}};
    const CVector out = apply(propagator_exact(h, 2 * std::numbers::pi / omega), CVector::basis(3, 0));
    EXPECT_NEAR(out[0].real(), 1.0, 1e-12);
    EXPECT_NEAR(out[0].imag(), 0.0, 1e-12);
}

TEST(PropagatorExact, IsUnitary) {
    std::mt19937_64 rng(6);
    const CMatrix u = propagator_exact(random_hermitian(8, rng), 3.1);
    EXPECT_LT(max_abs_diff(dagger(u) * u, CMatrix::identity(8)), 1e-10);
}

TEST(IntegrateSchrodinger, ZeroHamiltonianIsStatic) {
    std::mt19937_64 rng(7);
    const CVector psi0 = random_state(8, rng);
    const auto traj = integrate_schrodinger([](double) { return CMatrix(8); }, psi0, 5.0, 0.01);
    ASSERT_GE(traj.states.size(), 2u);
    for (const auto& psi : traj.states) EXPECT_EQ(psi, psi0);
    EXPECT_EQ(traj.times.front(), 0.0);
    EXPECT_EQ(traj.times.back(), 5.0);
}

TEST(IntegrateSchrodinger, RabiCycleMatchesClosedForm) {
    const double omega = 0.9;
    const CMatrix h{{0.0, omega / 2}, {omega / 2, 0.0}};
    const double period = 2 * std::numbers::pi / omega;
    const auto traj = integrate_schrodinger([&](double) { return h; }, CVector::basis(2, 0), period, period / 20000);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        worst = std::max(worst, std::abs(traj.states[i][0] - Complex(std::cos(omega * t / 2), 0.0)));
        worst = std::max(worst, std::abs(traj.states[i][1] - Complex(0.0, -std::sin(omega * t / 2))));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(IntegrateSchrodinger, SamplingKeepsEndpointsAndBoundsStorage) {
    const auto traj = integrate_schrodinger([](double) { return CMatrix(2); }, CVector::basis(2, 0), 1.0, 1.0 / 9999);
    EXPECT_LE(traj.states.size(), kMaxStoredSamples + 2);
    EXPECT_EQ(traj.times.front(), 0.0);
    EXPECT_EQ(traj.times.back(), 1.0);
    EXPECT_EQ(traj.times.size(), traj.states.size());
}

TEST(IntegrateSchrodinger, RejectsUnnormalizedState) {
    EXPECT_THROW(integrate_schrodinger([](double) { return CMatrix(2); }, CVector{1.0, 1.0}, 1.0, 0.1), std::invalid_argument);
}

TEST(IntegrateSchrodinger, RejectsNonPositiveStep) {
    EXPECT_THROW(integrate_schrodinger([](double) { return CMatrix(2); }, CVector::basis(2, 0), 1.0, 0.0), std::invalid_argument);
}

TEST(IntegrateSchrodinger, CoarseStepReportsDrift) {
    const CMatrix h{{0.0, 50.0}, {50.0, 0.0}};
    EXPECT_THROW(integrate_schrodinger([&](double) { return h; }, CVector::basis(2, 0), 10.0, 0.05), IntegrationError);
}

TEST(IntegrateLindblad, UnitaryLimitMatchesSchrodinger) {
    std::mt19937_64 rng(8);
    const CMatrix h = random_hermitian(8, rng);
    const CVector psi0 = random_state(8, rng);
    const auto pure = integrate_schrodinger([&](double) { return h; }, psi0, 2.0, 1e-3);
    const auto mixed = integrate_lindblad([&](double) { return h; }, std::vector<CMatrix>{}, CMatrix::outer(psi0, psi0), 2.0, 1e-3);
    ASSERT_EQ(pure.states.size(), mixed.states.size());
    for (std::size_t i = 0; i < pure.states.size(); ++i)
        EXPECT_LT(max_abs_diff(mixed.states[i], CMatrix::outer(pure.states[i], pure.states[i])), 1e-7);
}

TEST(IntegrateLindblad, SingleDecayIsExponential) {
    const double gamma = 0.7;
    CMatrix jump(2);
    jump(0, 1) = std::sqrt(gamma);  // √γ |g⟩⟨e|
    const auto traj = integrate_lindblad([](double) { return CMatrix(2); }, std::vector<CMatrix>{jump},
                                         CMatrix::outer(CVector::basis(2, 1), CVector::basis(2, 1)), 4.0, 1e-3);
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        EXPECT_NEAR(traj.states[i](1, 1).real(), std::exp(-gamma * traj.times[i]), 1e-8);
}

TEST(IntegrateLindblad, CavityDecayEmptiesPhoton) {
    const double kappa = 0.3;
    CMatrix a(2);
    a(0, 1) = 1.0;
    const CMatrix jump = std::sqrt(kappa) * kron(a, CMatrix::identity(4));
    const CVector start = CVector::basis(8, 4 + 1);  // |1_m 1_a⟩
    const CMatrix n_photon = kron(CMatrix::diagonal({0.0, 1.0}), CMatrix::identity(4));
    const auto traj = integrate_lindblad([](double) { return CMatrix(8); }, std::vector<CMatrix>{jump}, CMatrix::outer(start, start), 5.0,
                                         1e-3);
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        EXPECT_NEAR(trace(n_photon * traj.states[i]).real(), std::exp(-kappa * traj.times[i]), 1e-8);
}

TEST(IntegrateLindblad, RejectsInvalidDensityMatrix) {
    const auto zero_h = [](double) { return CMatrix(2); };
    EXPECT_THROW(integrate_lindblad(zero_h, std::vector<CMatrix>{}, CMatrix::identity(2), 1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(integrate_lindblad(zero_h, std::vector<CMatrix>{}, CMatrix::diagonal({1.5, -0.5}), 1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(integrate_lindblad(zero_h, std::vector<CMatrix>{}, CMatrix{{0.5, 0.5}, {0.0, 0.5}}, 1.0, 0.1), std::invalid_argument);
}

TEST(IntegrateLindblad, CoarseStepReportsTraceDrift) {
    CMatrix jump(2);
    jump(0, 1) = std::sqrt(200.0);
    jump(1, 0) = std::sqrt(200.0);
    EXPECT_THROW(integrate_lindblad([](double) { return CMatrix(2); }, std::vector<CMatrix>{jump},
                                    CMatrix::outer(CVector::basis(2, 1), CVector::basis(2, 1)), 10.0, 0.05),
                 IntegrationError);
}
