#pragma once

// Two-qubit X states with z-directional Bloch vectors,
//
//   rho = 1/4 [ I⊗I + r σz⊗I + s I⊗σz + Σ_i c_i σi⊗σi ],
//
// and the entropy primitives shared by every other part of the library.
// Basis order is |00>, |01>, |10>, |11> throughout.

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace xdiscord {

/// Eigenvalues in [-kPhysicalTol, 0) are clamped to zero; anything lower is
/// treated as a nonphysical state.
inline constexpr double kPhysicalTol = 1e-12;

/// Raised when a parameter set or spectrum lies outside the state space.
class NonPhysicalState : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct XStateParams {
  double r = 0.0;  // z Bloch component of qubit A
  double s = 0.0;  // z Bloch component of qubit B
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  friend bool operator==(const XStateParams&, const XStateParams&) = default;
};

std::string to_string(const XStateParams& p);

/// True when every parameter lies in [-1, 1].
bool within_bounds(const XStateParams& p) noexcept;

/// Throws std::domain_error naming the first out-of-range parameter.
void check_bounds(const XStateParams& p);

using DensityMatrix4 = Eigen::Matrix4cd;

struct Spectrum {
  double u_plus = 0.0;
  double u_minus = 0.0;
  double v_plus = 0.0;
  double v_minus = 0.0;

  std::array<double, 4> values() const noexcept {
    return {u_plus, u_minus, v_plus, v_minus};
  }
  double min() const noexcept;
  double sum() const noexcept { return u_plus + u_minus + v_plus + v_minus; }
};

/// f(t) = -(1-t)/2 log2(1-t) - (1+t)/2 log2(1+t), with 0 log 0 = 0.
///
/// Even in t, decreasing on [0, 1], and f(t) ∈ [-1, 0]. Arguments with
/// |t| ≤ 1 + 1e-12 are clamped into [-1, 1]; larger ones throw
/// std::domain_error.
double binary_f(double t);

/// Shannon entropy (bits) of the distribution {x, 1-x}.
double binary_entropy(double x);

/// Entropy of a qubit whose Bloch vector has length `bloch_length`.
/// Equals 1 + binary_f(bloch_length).
double qubit_entropy(double bloch_length);

/// -Σ λ log2 λ over a spectrum. Entries in [-tol, 0) count as zero; a more
/// negative entry, or a sum further than 1e-9 from one, throws
/// NonPhysicalState.
double von_neumann_entropy(std::span<const double> eigenvalues,
                           double tol = kPhysicalTol);

DensityMatrix4 build_density_matrix(const XStateParams& p);

/// Closed-form eigenvalues:
///   u± = 1/4 [1 - c3 ± sqrt((r-s)^2 + (c1+c2)^2)]
///   v± = 1/4 [1 + c3 ± sqrt((r+s)^2 + (c1-c2)^2)]
Spectrum x_spectrum(const XStateParams& p);

/// True iff `p` is within bounds and min(x_spectrum(p)) ≥ -tol.
bool validate_physical(const XStateParams& p, double tol = kPhysicalTol);

/// Throws std::domain_error for out-of-bounds parameters and
/// NonPhysicalState when the spectrum is negative beyond `tol`.
void require_physical(const XStateParams& p, double tol = kPhysicalTol);

/// (S(rho_A), S(rho_B)) = (1 + f(r), 1 + f(s)).
std::pair<double, double> marginal_entropies(const XStateParams& p);

}  // namespace xdiscord
