#include "xdiscord/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace xdiscord {

namespace {

constexpr double kArgumentSlack = 1e-12;
constexpr double kTraceTol = 1e-9;

// x log2 x with the 0 log 0 = 0 convention.
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

std::string to_string(const XStateParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "(r=%.12g, s=%.12g, c1=%.12g, c2=%.12g, c3=%.12g)",
                p.r, p.s, p.c1, p.c2, p.c3);
  return buf;
}

bool within_bounds(const XStateParams& p) noexcept {
  for (double v : {p.r, p.s, p.c1, p.c2, p.c3}) {
    if (!std::isfinite(v) || std::abs(v) > 1.0) return false;
  }
  return true;
}

void check_bounds(const XStateParams& p) {
  const std::pair<const char*, double> fields[] = {
      {"r", p.r}, {"s", p.s}, {"c1", p.c1}, {"c2", p.c2}, {"c3", p.c3}};
  for (const auto& [name, v] : fields) {
    if (!std::isfinite(v) || std::abs(v) > 1.0) {
      throw std::domain_error(std::string("parameter ") + name + " = " +
                              std::to_string(v) + " outside [-1, 1]");
    }
  }
}

double Spectrum::min() const noexcept {
  return std::min({u_plus, u_minus, v_plus, v_minus});
}

double binary_f(double t) {
  if (!(std::abs(t) <= 1.0 + kArgumentSlack)) {
    throw std::domain_error("binary_f: argument " + std::to_string(t) +
                            " outside [-1, 1]");
  }
  t = std::clamp(t, -1.0, 1.0);
  return -0.5 * xlog2x(1.0 - t) - 0.5 * xlog2x(1.0 + t);
}

double binary_entropy(double x) {
  if (!(x >= -kArgumentSlack && x <= 1.0 + kArgumentSlack)) {
    throw std::domain_error("binary_entropy: probability " + std::to_string(x) +
                            " outside [0, 1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double qubit_entropy(double bloch_length) { return 1.0 + binary_f(bloch_length); }

double von_neumann_entropy(std::span<const double> eigenvalues, double tol) {
  double sum = 0.0;
  double entropy = 0.0;
  for (double lambda : eigenvalues) {
    if (!(lambda >= -tol)) {
      throw NonPhysicalState("eigenvalue " + std::to_string(lambda) +
                             " is negative beyond tolerance");
    }
    sum += lambda;
    entropy -= xlog2x(std::max(lambda, 0.0));
  }
  if (std::abs(sum - 1.0) > kTraceTol) {
    throw NonPhysicalState("spectrum sums to " + std::to_string(sum) + ", not 1");
  }
  return entropy;
}

DensityMatrix4 build_density_matrix(const XStateParams& p) {
  const double r = p.r, s = p.s, c1 = p.c1, c2 = p.c2, c3 = p.c3;
  DensityMatrix4 rho = DensityMatrix4::Zero();
  rho(0, 0) = 0.25 * (1.0 + r + s + c3);
  rho(1, 1) = 0.25 * (1.0 + r - s - c3);
  rho(2, 2) = 0.25 * (1.0 - r + s - c3);
  rho(3, 3) = 0.25 * (1.0 - r - s + c3);
  rho(0, 3) = rho(3, 0) = 0.25 * (c1 - c2);
  rho(1, 2) = rho(2, 1) = 0.25 * (c1 + c2);
  return rho;
}

Spectrum x_spectrum(const XStateParams& p) {
  const double a = std::hypot(p.r - p.s, p.c1 + p.c2);
  const double b = std::hypot(p.r + p.s, p.c1 - p.c2);
  return Spectrum{
      .u_plus = 0.25 * (1.0 - p.c3 + a),
      .u_minus = 0.25 * (1.0 - p.c3 - a),
      .v_plus = 0.25 * (1.0 + p.c3 + b),
      .v_minus = 0.25 * (1.0 + p.c3 - b),
  };
}

bool validate_physical(const XStateParams& p, double tol) {
  return within_bounds(p) && x_spectrum(p).min() >= -tol;
}

void require_physical(const XStateParams& p, double tol) {
  check_bounds(p);
  const double lowest = x_spectrum(p).min();
  if (!(lowest >= -tol)) {
    throw NonPhysicalState("state " + to_string(p) +
                           " is not positive: smallest eigenvalue " +
                           std::to_string(lowest));
  }
}

std::pair<double, double> marginal_entropies(const XStateParams& p) {
  return {1.0 + binary_f(p.r), 1.0 + binary_f(p.s)};
}

}  // namespace xdiscord
