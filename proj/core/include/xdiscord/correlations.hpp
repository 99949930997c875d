#pragma once

// Closed-form correlation measures for the X-state family: Wootters
// concurrence, entanglement of formation, quantum mutual information, and
// classical correlation / discord with the measurement on qubit B.

#include <array>
#include <string_view>

#include "xdiscord/state.hpp"

namespace xdiscord {

/// Candidate minimizers of the measured conditional entropy S(rho|{B_k}).
///   S1: measurement along z
///   S2: measurement along x, 1 + f(sqrt(r^2 + c1^2))
///   S3: measurement along y, 1 + f(sqrt(r^2 + c2^2))
enum class Branch { S1, S2, S3 };

std::string_view to_string(Branch b) noexcept;

struct ConditionalBranches {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  /// Lowest branch; ties resolve to the lower-numbered branch.
  Branch argmin() const noexcept;
  double min() const noexcept;
  double operator[](Branch b) const noexcept;
};

struct CorrelationReport {
  double concurrence = 0.0;
  double eof = 0.0;
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double discord = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  Branch minimizing_branch = Branch::S1;
  Spectrum spectrum;
};

/// Square roots of the eigenvalues of rho * (σy⊗σy) rho* (σy⊗σy):
///   sqrt(λ1,2) = 1/4 |c1 - c2 ∓ sqrt((1+c3)^2 - (r+s)^2)|
///   sqrt(λ3,4) = 1/4 |c1 + c2 ∓ sqrt((1-c3)^2 - (r-s)^2)|
std::array<double, 4> concurrence_sqrt_lambdas(const XStateParams& p);

/// 2 max sqrt(λi) - Σ sqrt(λi) before clamping at zero. Positive exactly
/// when the state is entangled; used to bracket entanglement sudden death.
double concurrence_witness(const XStateParams& p);

double concurrence(const XStateParams& p);

/// Wootters map: H((1 + sqrt(1 - C^2)) / 2).
double eof_from_concurrence(double c);

double mutual_information(const XStateParams& p);

ConditionalBranches conditional_entropy_branches(const XStateParams& p);

double classical_correlation(const XStateParams& p);

double quantum_discord(const XStateParams& p);

/// All measures in one pass; `mutual_information == classical_correlation +
/// discord` holds exactly because discord is formed as their difference.
CorrelationReport correlation_report(const XStateParams& p);

struct BellDiagonalCorrelations {
  double classical = 0.0;
  double discord = 0.0;
};

/// Closed forms for r = s = 0 using c = max |ci|.
BellDiagonalCorrelations bell_diagonal_correlations(double c1, double c2, double c3);

}  // namespace xdiscord
