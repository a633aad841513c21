#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tetra/correlations.hpp"
#include "tetra/pauli.hpp"
#include "tetra/rng.hpp"
#include "tetra/sim.hpp"

namespace tetra::qkd {

struct MissingAnnouncements : std::logic_error {
  MissingAnnouncements() : std::logic_error("transcript carries no announcements") {}
};

struct SessionParams {
  std::uint64_t pairs = 1;
  bool grant = true;
  std::optional<double> noise;  // Werner visibility of the source
  std::uint64_t seed = 0;
  Config config = Config::TT;
};

/// Complete record of one protocol session. Announcements are present iff
/// the session was granted.
struct SessionTranscript {
  SessionParams params;
  std::string stream_version;
  std::vector<std::uint8_t> alice_outcomes;
  std::vector<std::uint8_t> bob_outcomes;
  std::vector<PauliIndex> charles_choices;  // secret until announced
  std::optional<std::vector<PauliIndex>> announcements;
};

// --- message records -------------------------------------------------------
// The parties communicate only through these records, so a wire transport
// can replace the in-process queue without touching protocol logic.

struct OutcomeRecord {
  std::uint64_t round = 0;
  std::uint8_t outcome = 0;
};

struct Announcement {
  std::uint64_t round = 0;
  PauliIndex choice;
};

template <typename M>
class Channel {
 public:
  void send(M m) { q_.push_back(m); }
  std::optional<M> receive() {
    if (q_.empty()) return std::nullopt;
    M m = q_.front();
    q_.pop_front();
    return m;
  }

 private:
  std::deque<M> q_;
};

namespace detail {

/// Charles: scrambles the singlet source with a uniformly random one-sided
/// Pauli each round and, when granting, announces the choices afterwards.
struct SourceController {
  std::vector<PauliIndex> choices;

  PauliIndex scramble(Rng& rng) {
    static constexpr std::array<double, 4> kUniform = {0.25, 0.25, 0.25, 0.25};
    const PauliIndex c = PauliIndex::from_index(rng.categorical(kUniform));
    choices.push_back(c);
    return c;
  }

  void announce_all(Channel<Announcement>& line) const {
    for (std::uint64_t r = 0; r < choices.size(); ++r) line.send({r, choices[r]});
  }
};

/// Alice or Bob: records outcomes in arrival order.
struct MeasurementStation {
  std::vector<std::uint8_t> outcomes;

  void on_outcome(const OutcomeRecord& rec) { outcomes.push_back(rec.outcome); }
};

}  // namespace detail

/// Runs one session: per round Charles draws a Pauli uniformly, the
/// resulting Bell (or Werner-degraded) state is measured by both stations,
/// and the coincidence is drawn from its exact joint table. All randomness
/// comes from one seeded stream, so the transcript is a pure function of the
/// parameters.
inline SessionTranscript run_session(const SessionParams& params) {
  if (params.pairs < 1) throw OutOfRange("session needs at least one pair");
  if (params.noise && (*params.noise < 0.0 || *params.noise > 1.0))
    throw OutOfRange("Werner visibility must lie in [0,1]");

  const Parity pb = params.config == Config::TT ? Parity::Even : Parity::Odd;
  std::array<JointProbabilityTable, 4> tables;
  for (int c = 0; c < 4; ++c) {
    Mat4 rho = bell_state(PauliIndex::from_index(c));
    if (params.noise) rho = depolarized(rho, *params.noise);
    tables[c] = joint_table(rho, Parity::Even, pb);
  }

  Rng rng(params.seed);
  detail::SourceController charles;
  detail::MeasurementStation alice, bob;
  Channel<OutcomeRecord> to_alice, to_bob;
  Channel<Announcement> broadcast;

  for (std::uint64_t round = 0; round < params.pairs; ++round) {
    const PauliIndex choice = charles.scramble(rng);
    const int cell = draw_cell(rng, tables[choice.index()]);
    to_alice.send({round, static_cast<std::uint8_t>(cell / 4)});
    to_bob.send({round, static_cast<std::uint8_t>(cell % 4)});
    alice.on_outcome(*to_alice.receive());
    bob.on_outcome(*to_bob.receive());
  }

  SessionTranscript t;
  t.params = params;
  t.stream_version = std::string(Rng::stream_version());
  t.alice_outcomes = std::move(alice.outcomes);
  t.bob_outcomes = std::move(bob.outcomes);
  t.charles_choices = charles.choices;
  if (params.grant) {
    charles.announce_all(broadcast);
    std::vector<PauliIndex> ann;
    ann.reserve(params.pairs);
    while (auto msg = broadcast.receive()) ann.push_back(msg->choice);
    t.announcements = std::move(ann);
  }
  return t;
}

/// Bob's outcomes remapped by the inverse of each announced Pauli's top
/// permutation; pooled statistics then match the unscrambled singlet table.
inline std::vector<std::uint8_t> unscramble(const SessionTranscript& t) {
  if (!t.announcements) throw MissingAnnouncements();
  std::vector<std::uint8_t> relabeled;
  relabeled.reserve(t.bob_outcomes.size());
  for (std::size_t r = 0; r < t.bob_outcomes.size(); ++r) {
    const auto perm = pauli_label_action((*t.announcements)[r]);
    std::array<int, 4> inv{};
    for (int k = 0; k < 4; ++k) inv[perm[k]] = k;
    relabeled.push_back(static_cast<std::uint8_t>(inv[t.bob_outcomes[r]]));
  }
  return relabeled;
}

/// Plug-in mutual information I(A;B) in bits over a 4x4 joint distribution;
/// 0 log 0 := 0.
inline double mutual_information(const std::array<double, 16>& joint) {
  double total = 0.0;
  for (double v : joint) total += v;
  std::array<double, 4> pa{}, pb{};
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      pa[k] += joint[4 * k + l] / total;
      pb[l] += joint[4 * k + l] / total;
    }
  double mi = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const double p = joint[4 * k + l] / total;
      if (p > 0.0) mi += p * std::log2(p / (pa[k] * pb[l]));
    }
  return mi;
}

inline double mutual_information(const std::array<std::uint64_t, 16>& counts) {
  std::array<double, 16> joint{};
  for (int i = 0; i < 16; ++i) joint[i] = static_cast<double>(counts[i]);
  return mutual_information(joint);
}

/// First-order upward bias of the plug-in estimator for a 4x4 table:
/// (|A|-1)(|B|-1) / (2 N ln 2).
inline double mi_plugin_bias(std::uint64_t n) {
  return 9.0 / (2.0 * static_cast<double>(n) * std::log(2.0));
}

struct CapabilityReport {
  double pre_announcement_mi = 0.0;                 // (alice, bob) pooled, no relabeling
  std::optional<double> post_announcement_mi;       // (alice, relabeled bob), granted only
  double charles_alice_mi = 0.0;                    // (charles choice, alice outcome)
  double plugin_bias = 0.0;
};

inline CapabilityReport capability_report(const SessionTranscript& t) {
  CapabilityReport rep;
  rep.plugin_bias = mi_plugin_bias(t.params.pairs);

  std::array<std::uint64_t, 16> raw{}, vs_charles{};
  for (std::size_t r = 0; r < t.alice_outcomes.size(); ++r) {
    ++raw[4 * t.alice_outcomes[r] + t.bob_outcomes[r]];
    ++vs_charles[4 * t.charles_choices[r].index() + t.alice_outcomes[r]];
  }
  rep.pre_announcement_mi = mutual_information(raw);
  rep.charles_alice_mi = mutual_information(vs_charles);

  if (t.announcements) {
    const auto relabeled = unscramble(t);
    std::array<std::uint64_t, 16> post{};
    for (std::size_t r = 0; r < t.alice_outcomes.size(); ++r)
      ++post[4 * t.alice_outcomes[r] + relabeled[r]];
    rep.post_announcement_mi = mutual_information(post);
  }
  return rep;
}

struct TomographicCheck {
  QuartitWigner w_hat;
  double fidelity_vs_expected = 0.0;
  double min_eigenvalue = 0.0;
  std::uint64_t rounds_used = 0;
  bool alarm = false;
};

/// Sacrifices the first ceil(fraction * pairs) granted-and-relabeled rounds
/// for tomography against the unscrambled singlet reference; raises the
/// alarm when the estimated fidelity falls below `threshold`.
inline TomographicCheck tomographic_check(const SessionTranscript& t, double sacrifice_fraction,
                                          double threshold = 0.95) {
  if (!t.announcements) throw MissingAnnouncements();
  if (sacrifice_fraction <= 0.0 || sacrifice_fraction > 1.0)
    throw OutOfRange("sacrifice fraction must lie in (0,1]");

  const auto relabeled = unscramble(t);
  const std::uint64_t n =
      static_cast<std::uint64_t>(std::ceil(sacrifice_fraction * static_cast<double>(t.params.pairs)));
  CountTable counts;
  counts.shots = n;
  for (std::uint64_t r = 0; r < n; ++r) ++counts.at(t.alice_outcomes[r], relabeled[r]);

  const Parity pb = t.params.config == Config::TT ? Parity::Even : Parity::Odd;
  const Estimate est = estimate(counts, Parity::Even, pb);
  const QuartitWigner reference = quartit_coefficients(singlet_projector(), Parity::Even, pb);

  TomographicCheck check;
  check.w_hat = est.w_hat;
  check.min_eigenvalue = est.min_eigenvalue;
  check.rounds_used = n;
  check.fidelity_vs_expected = fidelity(est.w_hat, reference);
  check.alarm = check.fidelity_vs_expected < threshold;
  return check;
}

}  // namespace tetra::qkd
