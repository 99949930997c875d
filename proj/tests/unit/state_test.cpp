#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "reference.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord {
namespace {

// (r, s, c1, c2, c3) with c1 = sqrt(0.8), c2 = -c1/2: the dephasing example.
const XStateParams kExample{0.3, 0.15, std::sqrt(0.8), -std::sqrt(0.8) / 2.0, 0.5};

TEST(BinaryF, EndpointsAndMidpoint) {
  EXPECT_EQ(binary_f(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_f(1.0), -1.0);
  EXPECT_DOUBLE_EQ(binary_f(-1.0), -1.0);
  // mpmath, 30 digits: -0.188721875540867136...
  EXPECT_NEAR(binary_f(0.5), -0.188721875540867136, 1e-15);
}

TEST(BinaryF, ClampsInsideToleranceAndRejectsBeyond) {
  EXPECT_DOUBLE_EQ(binary_f(1.0 + 5e-13), -1.0);
  EXPECT_THROW(binary_f(1.0 + 1e-9), std::domain_error);
  EXPECT_THROW(binary_f(-1.5), std::domain_error);
  EXPECT_THROW(binary_f(std::nan("")), std::domain_error);
}

TEST(BinaryF, EvenAndBounded) {
  testing::StateSampler sampler(7);
  for (int i = 0; i < 2000; ++i) {
    const double t = sampler.coord();
    EXPECT_EQ(binary_f(t), binary_f(-t));
    EXPECT_LE(binary_f(t), 0.0);
    EXPECT_GE(binary_f(t), -1.0);
  }
}

TEST(VonNeumannEntropy, ReferenceSpectra) {
  const double pure[] = {1.0, 0.0, 0.0, 0.0};
  const double mixed[] = {0.25, 0.25, 0.25, 0.25};
  const double werner[] = {0.625, 0.125, 0.125, 0.125};
  EXPECT_EQ(von_neumann_entropy(pure), 0.0);
  EXPECT_DOUBLE_EQ(von_neumann_entropy(mixed), 2.0);
  EXPECT_NEAR(von_neumann_entropy(werner), 1.548794940695398533, 1e-14);
}

TEST(VonNeumannEntropy, ClampsTinyNegativesAndRejectsOthers) {
  const double noisy[] = {1.0 + 5e-13, -5e-13, 0.0, 0.0};
  EXPECT_NEAR(von_neumann_entropy(noisy), 0.0, 1e-12);
  const double negative[] = {1.1, -0.1, 0.0, 0.0};
  EXPECT_THROW(von_neumann_entropy(negative), NonPhysicalState);
  const double unnormalised[] = {0.5, 0.25, 0.0, 0.0};
  EXPECT_THROW(von_neumann_entropy(unnormalised), NonPhysicalState);
}

TEST(DensityMatrix, MaximallyMixedAndBell) {
  const DensityMatrix4 mixed = build_density_matrix({});
  EXPECT_TRUE(mixed.isApprox(DensityMatrix4::Identity() / 4.0));

  const DensityMatrix4 bell = build_density_matrix({0, 0, 1, -1, 1});
  Eigen::Vector4cd phi_plus(1.0 / std::numbers::sqrt2, 0, 0, 1.0 / std::numbers::sqrt2);
  EXPECT_TRUE(bell.isApprox(phi_plus * phi_plus.adjoint(), 1e-14));
}

TEST(DensityMatrix, ExampleEntriesAndXShape) {
  const DensityMatrix4 rho = build_density_matrix(kExample);
  // 1/4 (1 + 0.3 + 0.15 + 0.5)
  EXPECT_NEAR(rho(0, 0).real(), 0.4875, 1e-15);
  EXPECT_NEAR(rho(0, 3).real(), 0.25 * (kExample.c1 - kExample.c2), 1e-15);
  EXPECT_NEAR(rho(1, 2).real(), 0.25 * (kExample.c1 + kExample.c2), 1e-15);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_TRUE(rho == rho.adjoint());
  const int zero_entries[][2] = {{0, 1}, {0, 2}, {1, 0}, {2, 0}, {1, 3}, {3, 1}, {2, 3}, {3, 2}};
  for (const auto& e : zero_entries) {
    EXPECT_EQ(rho(e[0], e[1]), std::complex<double>(0.0, 0.0));
  }
}

TEST(XSpectrum, ReferenceStates) {
  const Spectrum mixed = x_spectrum({});
  for (double v : mixed.values()) EXPECT_DOUBLE_EQ(v, 0.25);

  const Spectrum bell = x_spectrum({0, 0, 1, -1, 1});
  EXPECT_DOUBLE_EQ(bell.v_plus, 1.0);
  EXPECT_DOUBLE_EQ(bell.v_minus, 0.0);
  EXPECT_DOUBLE_EQ(bell.u_plus, 0.0);
  EXPECT_DOUBLE_EQ(bell.u_minus, 0.0);

  // mpmath evaluation of the closed forms.
  const Spectrum ex = x_spectrum(kExample);
  EXPECT_NEAR(ex.u_plus, 0.242924764150707548, 1e-14);
  EXPECT_NEAR(ex.u_minus, 0.007075235849292452, 1e-14);
  EXPECT_NEAR(ex.v_plus, 0.728774292452122643, 1e-14);
  EXPECT_NEAR(ex.v_minus, 0.021225707547877357, 1e-14);
}

TEST(XSpectrum, MatchesDenseEigensolve) {
  testing::StateSampler sampler(11);
  for (int i = 0; i < 5000; ++i) {
    const XStateParams p = sampler.next();
    const auto closed = testing::sorted(x_spectrum(p).values());
    const auto dense = testing::dense_spectrum(build_density_matrix(p));
    for (int k = 0; k < 4; ++k) ASSERT_NEAR(closed[k], dense[k], 1e-10) << to_string(p);
    ASSERT_NEAR(x_spectrum(p).sum(), 1.0, 1e-12);
  }
}

TEST(XSpectrum, EntropyInvariantUnderPairedSignFlips) {
  testing::StateSampler sampler(13);
  for (int i = 0; i < 2000; ++i) {
    const XStateParams p = sampler.next();
    const double base = von_neumann_entropy(x_spectrum(p).values());
    XStateParams flipped_c = p;
    flipped_c.c1 = -p.c1;
    flipped_c.c2 = -p.c2;
    XStateParams flipped_rs = p;
    flipped_rs.r = -p.r;
    flipped_rs.s = -p.s;
    EXPECT_NEAR(von_neumann_entropy(x_spectrum(flipped_c).values()), base, 1e-13);
    EXPECT_NEAR(von_neumann_entropy(x_spectrum(flipped_rs).values()), base, 1e-13);
  }
}

TEST(ValidatePhysical, Examples) {
  EXPECT_TRUE(validate_physical({}));
  EXPECT_FALSE(validate_physical({0, 0, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(x_spectrum({0, 0, 1, 1, 1}).u_minus, -0.5);
  EXPECT_TRUE(validate_physical({0, 0, 1, -1, 1}));
  EXPECT_FALSE(validate_physical({2, 0, 0, 0, 0}));
  EXPECT_THROW(require_physical({0, 0, 1, 1, 1}), NonPhysicalState);
  EXPECT_THROW(require_physical({0, 1.5, 0, 0, 0}), std::domain_error);
}

TEST(MarginalEntropies, Examples) {
  EXPECT_EQ(marginal_entropies({}), std::make_pair(1.0, 1.0));
  const auto [sa, sb] = marginal_entropies({1, 0, 0, 0, 0});
  EXPECT_NEAR(sa, 0.0, 1e-15);
  EXPECT_EQ(sb, 1.0);
  const auto [ea, eb] = marginal_entropies(kExample);
  EXPECT_NEAR(ea, 0.934068055375491006, 1e-14);
  EXPECT_NEAR(eb, 0.983708262623185698, 1e-14);
}

}  // namespace
}  // namespace xdiscord
