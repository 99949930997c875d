#pragma once

// Test-only reference implementations. Nothing here calls into the closed
// forms under test: spectra come from a dense Hermitian eigensolve, the
// concurrence from the spin-flipped matrix, and the channel from explicit
// Kraus conjugation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "xdiscord/channels.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord::testing {

/// Uniform rejection sampling over [-1, 1]^5 (or [-1, 1]^3 with r = s = 0).
class StateSampler {
public:
  explicit StateSampler(std::uint64_t seed, bool bell_diagonal = false)
      : rng_(seed), bell_diagonal_(bell_diagonal) {}

  XStateParams next() {
    for (;;) {
      XStateParams p{.r = bell_diagonal_ ? 0.0 : coord(),
                     .s = bell_diagonal_ ? 0.0 : coord(),
                     .c1 = coord(),
                     .c2 = coord(),
                     .c3 = coord()};
      if (validate_physical(p)) return p;
    }
  }

  double coord() { return uniform_(rng_); }

private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{-1.0, 1.0};
  bool bell_diagonal_;
};

/// Ascending eigenvalues from Eigen's self-adjoint solver.
inline std::array<double, 4> dense_spectrum(const Eigen::Matrix4cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

inline std::array<double, 4> sorted(std::array<double, 4> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline Eigen::Matrix4cd sigma_y_y() {
  using C = std::complex<double>;
  Eigen::Matrix2cd sy;
  sy << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + c, 2 * b + d) = sy(a, b) * sy(c, d);
  return out;
}

/// Eigenvalues of rho (σy⊗σy) rho* (σy⊗σy), real parts clamped at zero,
/// ascending.
inline std::array<double, 4> spin_flip_eigenvalues(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix4cd yy = sigma_y_y();
  const Eigen::Matrix4cd product = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(product, false);
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = std::max(0.0, solver.eigenvalues()(i).real());
  return sorted(out);
}

inline double concurrence_from_matrix(const Eigen::Matrix4cd& rho) {
  auto lambdas = spin_flip_eigenvalues(rho);
  std::array<double, 4> roots;
  for (int i = 0; i < 4; ++i) roots[i] = std::sqrt(lambdas[i]);
  return std::max(0.0, roots[3] - roots[2] - roots[1] - roots[0]);
}

/// Σ_k K_k rho K_k† for the phase flip on the selected qubits.
inline Eigen::Matrix4cd kraus_phase_flip(const Eigen::Matrix4cd& rho, double p,
                                         ChannelTarget targets) {
  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = k0(1, 1) = std::sqrt(1.0 - p / 2.0);
  k1(0, 0) = std::sqrt(p / 2.0);
  k1(1, 1) = -std::sqrt(p / 2.0);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  const auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
  };
  const auto apply = [](const Eigen::Matrix4cd& m, const std::array<Eigen::Matrix4cd, 2>& ks) {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (const auto& k : ks) out += k * m * k.adjoint();
    return out;
  };

  Eigen::Matrix4cd out = rho;
  if (targets != ChannelTarget::B) out = apply(out, {kron(k0, id), kron(k1, id)});
  if (targets != ChannelTarget::A) out = apply(out, {kron(id, k0), kron(id, k1)});
  return out;
}

}  // namespace xdiscord::testing
