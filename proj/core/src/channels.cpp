#include "xdiscord/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace xdiscord {

namespace {

// Treat |value| below this as zero when scanning for sign changes.
constexpr double kSignEps = 1e-12;

int sign_of(double v) { return v > kSignEps ? 1 : (v < -kSignEps ? -1 : 0); }

// Shrinks [lo, hi] until hi - lo ≤ tol, keeping `at_lo(mid)` true at lo and
// false at hi. Returns the midpoint of the final bracket.
double bisect(double lo, double hi, double tol, const std::function<bool(double)>& at_lo) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (at_lo(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(ChannelTarget t) noexcept {
  switch (t) {
    case ChannelTarget::A: return "A";
    case ChannelTarget::B: return "B";
    case ChannelTarget::Both: return "both";
  }
  return "?";
}

ChannelTarget parse_channel_target(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "a") return ChannelTarget::A;
  if (lower == "b") return ChannelTarget::B;
  if (lower == "both") return ChannelTarget::Both;
  throw std::invalid_argument("unknown channel target '" + std::string(text) +
                              "' (expected A, B or both)");
}

double p_of_time(double gamma, double t) {
  if (!(gamma >= 0.0) || !(t >= 0.0)) {
    throw std::domain_error("p_of_time: gamma and t must be nonnegative");
  }
  return -std::expm1(-gamma * t);
}

XStateParams apply_phase_flip(const XStateParams& state, double p, ChannelTarget targets) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("phase flip strength " + std::to_string(p) + " outside [0, 1]");
  }
  const double keep = 1.0 - p;
  const double scale = targets == ChannelTarget::Both ? keep * keep : keep;
  XStateParams out = state;
  out.c1 *= scale;
  out.c2 *= scale;
  return out;
}

XStateParams apply_channel(const XStateParams& state, const ChannelSpec& channel) {
  switch (channel.kind) {
    case ChannelKind::PhaseFlip: return apply_phase_flip(state, channel.p, channel.targets);
  }
  throw std::invalid_argument("unsupported channel kind");
}

bool constant_discord_condition(const XStateParams& p, double tol) {
  return std::abs(p.c2 + p.c3 * p.c1) <= tol && std::abs(p.s - p.c3 * p.r) <= tol;
}

double plateau_discord(const XStateParams& p) {
  return binary_f(p.c3 * p.r) - binary_f(p.c3);
}

ConstantDiscordForms constant_discord_forms(const XStateParams& state, double p) {
  const double keep = 1.0 - p;
  const double damp = keep * keep * keep * keep;
  const double f_r = binary_f(state.r);
  const double f_c3 = binary_f(state.c3);
  const double f_c3r = binary_f(state.c3 * state.r);
  const double radius1 = std::min(1.0, std::sqrt(state.r * state.r + damp * state.c1 * state.c1));
  const double radius2 = std::min(1.0, std::sqrt(state.r * state.r + damp * state.c2 * state.c2));
  return ConstantDiscordForms{
      .mutual_information = f_r + f_c3r - f_c3 - binary_f(radius1),
      .s1 = 1.0 + f_r + f_c3 - f_c3r,
      .s2 = 1.0 + binary_f(radius1),
      .s3 = 1.0 + binary_f(radius2),
  };
}

Trajectory sweep_dynamics(const XStateParams& initial, int n_samples, ChannelTarget targets) {
  if (n_samples < 2) {
    throw std::invalid_argument("sweep needs at least 2 samples, got " +
                                std::to_string(n_samples));
  }
  require_physical(initial);
  Trajectory trajectory;
  trajectory.targets = targets;
  trajectory.samples.reserve(static_cast<std::size_t>(n_samples));
  const double last = n_samples - 1;
  for (int i = 0; i < n_samples; ++i) {
    const double p = i / last;
    const auto report = correlation_report(apply_phase_flip(initial, p, targets));
    trajectory.samples.push_back(TrajectorySample{
        .p = p,
        .concurrence = report.concurrence,
        .classical = report.classical_correlation,
        .discord = report.discord,
        .mutual_information = report.mutual_information,
        .s1 = report.s1,
        .s2 = report.s2,
        .s3 = report.s3,
    });
  }
  return trajectory;
}

EventReport detect_events(const XStateParams& initial, ChannelTarget targets,
                          const EventOptions& options) {
  if (!(options.tol_p > 0.0)) {
    throw std::invalid_argument("event tolerance must be positive");
  }
  const Trajectory trajectory = sweep_dynamics(initial, options.n_samples, targets);
  const auto& samples = trajectory.samples;
  const auto at = [&](double p) { return apply_phase_flip(initial, p, targets); };

  EventReport events;

  // Sudden transition: the minimizing branch changes.
  {
    const auto branch_at = [](const TrajectorySample& s) {
      return ConditionalBranches{s.s1, s.s2, s.s3}.argmin();
    };
    Branch current = branch_at(samples.front());
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const Branch next = branch_at(samples[i]);
      if (next == current) continue;
      const double p = bisect(samples[i - 1].p, samples[i].p, options.tol_p, [&](double q) {
        const auto b = conditional_entropy_branches(at(q));
        return b[current] <= b[next];
      });
      events.p_transition = p;
      events.branch_before = current;
      events.branch_after = next;
      break;
    }
  }

  // Entanglement sudden death: the concurrence witness turns negative. A
  // witness that merely touches zero at p = 1 (e.g. Bell states) is not an
  // event.
  if (concurrence_witness(at(0.0)) > 0.0) {
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (sign_of(concurrence_witness(at(samples[i].p))) >= 0) continue;
      events.p_esd = bisect(samples[i - 1].p, samples[i].p, options.tol_p,
                            [&](double q) { return concurrence_witness(at(q)) > 0.0; });
      break;
    }
  }

  // Concurrence meets discord. Samples where the two agree to kSignEps are
  // skipped so that a shared zero (e.g. both vanish at p = 1) is not an event.
  {
    const auto gap = [](const TrajectorySample& s) { return s.concurrence - s.discord; };
    int last_sign = 0;
    double last_p = 0.0;
    for (const auto& sample : samples) {
      const int sign = sign_of(gap(sample));
      if (sign == 0) continue;
      if (last_sign != 0 && sign != last_sign) {
        const int start = last_sign;
        events.p_crossing = bisect(last_p, sample.p, options.tol_p, [&](double q) {
          const auto report = correlation_report(at(q));
          return sign_of(report.concurrence - report.discord) == start;
        });
        break;
      }
      last_sign = sign;
      last_p = sample.p;
    }
  }

  if (constant_discord_condition(initial, options.condition_tol)) {
    events.plateau_discord = plateau_discord(initial);
  }
  return events;
}

}  // namespace xdiscord
