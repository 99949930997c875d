#include "xdiscord/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xdiscord {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// (a - b)(a + b) with negative floating noise removed. Callers have already
// passed the physicality gate, so any negative value here comes from the
// tolerance band at the boundary of the state space.
double clamped_radicand(double a, double b) {
  return std::max(0.0, (a - b) * (a + b));
}

// Conditional Bloch lengths of the x/y branches never exceed one for physical
// states; rounding can push them a few ulps over.
double unit_length(double x, double y) { return std::min(1.0, std::hypot(x, y)); }

}  // namespace

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::S1: return "S1";
    case Branch::S2: return "S2";
    case Branch::S3: return "S3";
  }
  return "?";
}

Branch ConditionalBranches::argmin() const noexcept {
  if (s1 <= s2 && s1 <= s3) return Branch::S1;
  if (s2 <= s3) return Branch::S2;
  return Branch::S3;
}

double ConditionalBranches::min() const noexcept { return std::min({s1, s2, s3}); }

double ConditionalBranches::operator[](Branch b) const noexcept {
  switch (b) {
    case Branch::S1: return s1;
    case Branch::S2: return s2;
    case Branch::S3: return s3;
  }
  return s1;
}

std::array<double, 4> concurrence_sqrt_lambdas(const XStateParams& p) {
  require_physical(p);
  const double even = std::sqrt(clamped_radicand(1.0 + p.c3, p.r + p.s));
  const double odd = std::sqrt(clamped_radicand(1.0 - p.c3, p.r - p.s));
  return {
      0.25 * std::abs(p.c1 - p.c2 - even),
      0.25 * std::abs(p.c1 - p.c2 + even),
      0.25 * std::abs(p.c1 + p.c2 - odd),
      0.25 * std::abs(p.c1 + p.c2 + odd),
  };
}

double concurrence_witness(const XStateParams& p) {
  const auto roots = concurrence_sqrt_lambdas(p);
  const double largest = *std::max_element(roots.begin(), roots.end());
  const double total = std::accumulate(roots.begin(), roots.end(), 0.0);
  return 2.0 * largest - total;
}

double concurrence(const XStateParams& p) {
  return std::clamp(concurrence_witness(p), 0.0, 1.0);
}

double eof_from_concurrence(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) {
    throw std::domain_error("eof_from_concurrence: concurrence " + std::to_string(c) +
                            " outside [0, 1]");
  }
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double mutual_information(const XStateParams& p) {
  require_physical(p);
  const auto [sa, sb] = marginal_entropies(p);
  const auto spectrum = x_spectrum(p).values();
  return sa + sb - von_neumann_entropy(spectrum);
}

ConditionalBranches conditional_entropy_branches(const XStateParams& p) {
  require_physical(p);
  const double r = p.r, s = p.s, c3 = p.c3;

  // Outcome probabilities of the z measurement are (1 ± s)/2; each term is
  // -(n/4) log2(n / (2 (1 ± s))). A vanishing denominator only occurs with a
  // vanishing numerator, so both are dropped by the 0 log 0 convention.
  struct Term {
    double numerator;
    double denominator;
  };
  const Term terms[] = {
      {1.0 + r + s + c3, 2.0 * (1.0 + s)},
      {1.0 - r + s - c3, 2.0 * (1.0 + s)},
      {1.0 + r - s - c3, 2.0 * (1.0 - s)},
      {1.0 - r - s + c3, 2.0 * (1.0 - s)},
  };
  double s1 = 0.0;
  for (const auto& t : terms) {
    if (t.numerator <= 0.0 || t.denominator <= 0.0) continue;
    s1 -= 0.25 * t.numerator * std::log2(t.numerator / t.denominator);
  }

  return ConditionalBranches{
      .s1 = s1,
      .s2 = qubit_entropy(unit_length(r, p.c1)),
      .s3 = qubit_entropy(unit_length(r, p.c2)),
  };
}

double classical_correlation(const XStateParams& p) {
  const auto branches = conditional_entropy_branches(p);
  return marginal_entropies(p).first - branches.min();
}

double quantum_discord(const XStateParams& p) {
  return mutual_information(p) - classical_correlation(p);
}

CorrelationReport correlation_report(const XStateParams& p) {
  require_physical(p);
  CorrelationReport report;
  report.spectrum = x_spectrum(p);
  report.concurrence = concurrence(p);
  report.eof = eof_from_concurrence(report.concurrence);
  report.mutual_information = mutual_information(p);

  const auto branches = conditional_entropy_branches(p);
  report.s1 = branches.s1;
  report.s2 = branches.s2;
  report.s3 = branches.s3;
  report.minimizing_branch = branches.argmin();
  report.classical_correlation = marginal_entropies(p).first - branches.min();
  report.discord = report.mutual_information - report.classical_correlation;
  return report;
}

BellDiagonalCorrelations bell_diagonal_correlations(double c1, double c2, double c3) {
  require_physical(XStateParams{.c1 = c1, .c2 = c2, .c3 = c3});
  const double c = std::min(1.0, std::max({std::abs(c1), std::abs(c2), std::abs(c3)}));

  const double classical = 0.5 * xlog2x(1.0 - c) + 0.5 * xlog2x(1.0 + c);
  const double joint = 0.25 * (xlog2x(1.0 - c1 - c2 - c3) + xlog2x(1.0 - c1 + c2 + c3) +
                               xlog2x(1.0 + c1 - c2 + c3) + xlog2x(1.0 + c1 + c2 - c3));
  return {.classical = classical, .discord = joint - classical};
}

}  // namespace xdiscord
