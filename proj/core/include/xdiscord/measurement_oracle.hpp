#pragma once

// Definition-level classical correlation and discord: the conditional
// entropy S(rho|{B_k}) = Σ p_k S(rho_k) is evaluated from explicit 4x4 matrix
// algebra for a projective measurement on qubit B and minimized over the
// Bloch sphere by a deterministic grid search with local refinement. Shares
// no code with the closed forms in correlations.hpp beyond the entropy
// primitives and the mutual information.

#include <array>

#include <Eigen/Dense>

#include "xdiscord/state.hpp"

namespace xdiscord {

/// Unit Bloch vector n of the projector pair (I ± n·σ)/2 on qubit B. The axes
/// n and -n describe the same measurement with the outcomes swapped.
struct MeasurementAxis {
  double nx = 0.0;
  double ny = 0.0;
  double nz = 1.0;

  /// Polar angle theta from +z, azimuth phi from +x.
  static MeasurementAxis from_angles(double theta, double phi) noexcept;
  static MeasurementAxis x() noexcept { return {1.0, 0.0, 0.0}; }
  static MeasurementAxis y() noexcept { return {0.0, 1.0, 0.0}; }
  static MeasurementAxis z() noexcept { return {0.0, 0.0, 1.0}; }

  MeasurementAxis operator-() const noexcept { return {-nx, -ny, -nz}; }
  double norm() const noexcept;
};

struct ConditionalOutcome {
  double probability = 0.0;
  /// Post-measurement state of qubit A; zero when `zero_probability`.
  Eigen::Matrix2cd state_a = Eigen::Matrix2cd::Zero();
  bool zero_probability = false;
};

inline constexpr double kZeroProbability = 1e-14;

/// Two outcomes k = 0, 1 for projectors (I + n·σ)/2 and (I - n·σ)/2.
/// Throws std::invalid_argument when the axis is not unit length within
/// 1e-12.
std::array<ConditionalOutcome, 2> condition_on_measurement(const DensityMatrix4& rho,
                                                           const MeasurementAxis& axis);

/// Σ_k p_k S(rho_k), each S(rho_k) taken from the Bloch length of rho_k.
double measured_conditional_entropy(const DensityMatrix4& rho, const MeasurementAxis& axis);

struct OracleOptions {
  int grid_n = 64;
  int refine_depth = 8;
};

struct OracleResult {
  MeasurementAxis best_axis;
  double theta = 0.0;
  double phi = 0.0;
  double min_conditional_entropy = 0.0;
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double discord = 0.0;
  int grid_resolution = 0;
  int refinement_depth = 0;
  /// All eight neighbours of the final point, at the final step size, are
  /// no lower than the reported minimum.
  bool local_minimum_certified = false;
};

/// Grid over theta ∈ [0, π] × phi ∈ [0, π) (grid_n points each), followed by
/// `refine_depth` rounds that resample a 5x5 patch around the incumbent at
/// half the previous spacing. Deterministic: ties keep the lowest theta index,
/// then the lowest phi index. Throws std::invalid_argument for grid_n < 8 or
/// refine_depth < 0, and NonPhysicalState for nonphysical input.
OracleResult optimize_measurement(const XStateParams& p, int grid_n = 64,
                                  int refine_depth = 8);

/// Same search; the result carries discord = I - (S(rho_A) - min entropy).
OracleResult discord_oracle(const XStateParams& p, int grid_n = 64, int refine_depth = 8);

}  // namespace xdiscord
