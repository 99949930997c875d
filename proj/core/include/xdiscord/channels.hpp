#pragma once

// Local phase-flip (dephasing) dynamics of X states. The channel with Kraus
// operators diag(sqrt(1-p/2), sqrt(1-p/2)) and diag(sqrt(p/2), -sqrt(p/2))
// on a qubit multiplies that qubit's transverse Pauli components by (1 - p);
// on the parameter set this scales (c1, c2) and leaves (r, s, c3) alone.

#include <optional>
#include <vector>

#include "xdiscord/correlations.hpp"
#include "xdiscord/state.hpp"

namespace xdiscord {

enum class ChannelKind { PhaseFlip };

enum class ChannelTarget { A, B, Both };

std::string_view to_string(ChannelTarget t) noexcept;

/// Parses "A", "B" or "both" (case-insensitive). Throws std::invalid_argument.
ChannelTarget parse_channel_target(std::string_view text);

struct ChannelSpec {
  ChannelKind kind = ChannelKind::PhaseFlip;
  double p = 0.0;
  ChannelTarget targets = ChannelTarget::Both;
};

/// p = 1 - exp(-gamma t). Throws std::domain_error for negative inputs.
double p_of_time(double gamma, double t);

/// (c1, c2) scale by (1-p)^2 for both qubits and by (1-p) for one.
/// Throws std::domain_error when p is outside [0, 1].
XStateParams apply_phase_flip(const XStateParams& state, double p,
                              ChannelTarget targets = ChannelTarget::Both);

XStateParams apply_channel(const XStateParams& state, const ChannelSpec& channel);

/// |c2 + c3 c1| ≤ tol and |s - c3 r| ≤ tol. Under this condition the
/// S1 branch does not depend on p and, while S2 is the minimal branch,
/// discord stays at f(c3 r) - f(c3).
bool constant_discord_condition(const XStateParams& p, double tol = 1e-9);

/// f(c3 r) - f(c3).
double plateau_discord(const XStateParams& p);

/// Specialised closed forms that hold when constant_discord_condition(state)
/// is true and `state` is dephased on both qubits with strength p.
struct ConstantDiscordForms {
  double mutual_information = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};
ConstantDiscordForms constant_discord_forms(const XStateParams& state, double p);

struct TrajectorySample {
  double p = 0.0;
  double concurrence = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  double mutual_information = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

struct Trajectory {
  ChannelTarget targets = ChannelTarget::Both;
  std::vector<TrajectorySample> samples;
};

inline constexpr int kDefaultSweepSamples = 1001;
inline constexpr double kDefaultEventTol = 1e-6;

/// Uniform grid p_i = i / (n_samples - 1). Throws std::invalid_argument for
/// n_samples < 2 and NonPhysicalState for a nonphysical initial state.
Trajectory sweep_dynamics(const XStateParams& initial, int n_samples = kDefaultSweepSamples,
                          ChannelTarget targets = ChannelTarget::Both);

struct EventReport {
  /// First switch of the minimizing conditional-entropy branch.
  std::optional<double> p_transition;
  std::optional<Branch> branch_before;
  std::optional<Branch> branch_after;
  /// First sign change of concurrence - discord.
  std::optional<double> p_crossing;
  /// Concurrence reaches zero.
  std::optional<double> p_esd;
  /// f(c3 r) - f(c3), present when the constant-discord condition holds.
  std::optional<double> plateau_discord;
};

struct EventOptions {
  double tol_p = kDefaultEventTol;
  int n_samples = kDefaultSweepSamples;
  double condition_tol = 1e-6;
};

/// Brackets every event on the sampled grid, then bisects each bracket down
/// to a width of at most tol_p and reports its midpoint. Events with no sign
/// change on [0, 1] are left empty.
EventReport detect_events(const XStateParams& initial, ChannelTarget targets = ChannelTarget::Both,
                          const EventOptions& options = {});

}  // namespace xdiscord
