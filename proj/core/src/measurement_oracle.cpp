#include "xdiscord/measurement_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "xdiscord/correlations.hpp"

namespace xdiscord {

namespace {

constexpr double kAxisNormTol = 1e-12;
constexpr int kPatchRadius = 2;

using Matrix2c = Eigen::Matrix2cd;
using Complex = std::complex<double>;

// (I + sign n·σ) / 2
Matrix2c projector(const MeasurementAxis& n, double sign) {
  const double x = sign * n.nx, y = sign * n.ny, z = sign * n.nz;
  Matrix2c pi;
  pi << Complex(0.5 * (1.0 + z), 0.0), Complex(0.5 * x, -0.5 * y),
      Complex(0.5 * x, 0.5 * y), Complex(0.5 * (1.0 - z), 0.0);
  return pi;
}

// I_A ⊗ Π_B in the |ab> basis, index 2a + b.
DensityMatrix4 lift_to_b(const Matrix2c& pi) {
  DensityMatrix4 out = DensityMatrix4::Zero();
  out.topLeftCorner<2, 2>() = pi;
  out.bottomRightCorner<2, 2>() = pi;
  return out;
}

Matrix2c partial_trace_b(const DensityMatrix4& m) {
  Matrix2c out;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      out(a, ap) = m(2 * a, 2 * ap) + m(2 * a + 1, 2 * ap + 1);
    }
  }
  return out;
}

double bloch_length(const Matrix2c& rho) {
  const double bx = 2.0 * rho(0, 1).real();
  const double by = -2.0 * rho(0, 1).imag();
  const double bz = rho(0, 0).real() - rho(1, 1).real();
  return std::sqrt(bx * bx + by * by + bz * bz);
}

struct Probe {
  double theta;
  double phi;
  double entropy;
};

Probe probe(const DensityMatrix4& rho, double theta, double phi) {
  return {theta, phi,
          measured_conditional_entropy(rho, MeasurementAxis::from_angles(theta, phi))};
}

}  // namespace

MeasurementAxis MeasurementAxis::from_angles(double theta, double phi) noexcept {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double MeasurementAxis::norm() const noexcept {
  return std::sqrt(nx * nx + ny * ny + nz * nz);
}

std::array<ConditionalOutcome, 2> condition_on_measurement(const DensityMatrix4& rho,
                                                           const MeasurementAxis& axis) {
  if (std::abs(axis.norm() - 1.0) > kAxisNormTol) {
    throw std::invalid_argument("measurement axis is not unit length (norm " +
                                std::to_string(axis.norm()) + ")");
  }
  std::array<ConditionalOutcome, 2> outcomes;
  const double signs[2] = {1.0, -1.0};
  for (int k = 0; k < 2; ++k) {
    const DensityMatrix4 lifted = lift_to_b(projector(axis, signs[k]));
    const DensityMatrix4 post = lifted * rho * lifted;
    const Matrix2c unnormalized = partial_trace_b(post);
    const double pk = unnormalized.trace().real();
    auto& out = outcomes[k];
    out.probability = pk;
    if (pk < kZeroProbability) {
      out.zero_probability = true;
      continue;
    }
    out.state_a = unnormalized / pk;
  }
  return outcomes;
}

double measured_conditional_entropy(const DensityMatrix4& rho, const MeasurementAxis& axis) {
  const auto outcomes = condition_on_measurement(rho, axis);
  double entropy = 0.0;
  for (const auto& o : outcomes) {
    if (o.zero_probability) continue;
    entropy += o.probability * qubit_entropy(std::min(1.0, bloch_length(o.state_a)));
  }
  return entropy;
}

OracleResult optimize_measurement(const XStateParams& p, int grid_n, int refine_depth) {
  if (grid_n < 8) {
    throw std::invalid_argument("grid_n must be at least 8, got " + std::to_string(grid_n));
  }
  if (refine_depth < 0) {
    throw std::invalid_argument("refine_depth must be nonnegative");
  }
  require_physical(p);
  const DensityMatrix4 rho = build_density_matrix(p);

  double d_theta = std::numbers::pi / (grid_n - 1);
  double d_phi = std::numbers::pi / grid_n;

  Probe best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const Probe candidate = probe(rho, i * d_theta, j * d_phi);
      if (candidate.entropy < best.entropy) best = candidate;
    }
  }

  for (int round = 0; round < refine_depth; ++round) {
    d_theta *= 0.5;
    d_phi *= 0.5;
    const Probe center = best;
    for (int a = -kPatchRadius; a <= kPatchRadius; ++a) {
      for (int b = -kPatchRadius; b <= kPatchRadius; ++b) {
        if (a == 0 && b == 0) continue;
        const Probe candidate =
            probe(rho, center.theta + a * d_theta, center.phi + b * d_phi);
        if (candidate.entropy < best.entropy) best = candidate;
      }
    }
  }

  bool certified = true;
  for (int a = -1; a <= 1 && certified; ++a) {
    for (int b = -1; b <= 1; ++b) {
      if (a == 0 && b == 0) continue;
      if (probe(rho, best.theta + a * d_theta, best.phi + b * d_phi).entropy < best.entropy) {
        certified = false;
        break;
      }
    }
  }

  OracleResult result;
  result.best_axis = MeasurementAxis::from_angles(best.theta, best.phi);
  result.theta = best.theta;
  result.phi = best.phi;
  result.min_conditional_entropy = best.entropy;
  result.classical_correlation = marginal_entropies(p).first - best.entropy;
  result.mutual_information = mutual_information(p);
  result.discord = result.mutual_information - result.classical_correlation;
  result.grid_resolution = grid_n;
  result.refinement_depth = refine_depth;
  result.local_minimum_certified = certified;
  return result;
}

OracleResult discord_oracle(const XStateParams& p, int grid_n, int refine_depth) {
  return optimize_measurement(p, grid_n, refine_depth);
}

}  // namespace xdiscord
