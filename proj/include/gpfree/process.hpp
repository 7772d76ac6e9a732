#pragma once

#include <cstdint>
#include <vector>

#include "gpfree/gp_model.hpp"
#include "gpfree/window.hpp"

namespace gpfree {

enum class CoinSide { lower, upper };

struct ExclusionRecord {
  GeomProgression progression;
  u64 chosen = 0;  // the removed middle term
  CoinSide coin = CoinSide::lower;

  friend bool operator==(const ExclusionRecord&, const ExclusionRecord&) = default;
};

struct ProcessConfig {
  u64 max_n = 0;
  LengthFunction k = LengthFunction::constant(6);
  u64 seed = 0;
};

struct ProcessResult {
  SequenceWindow window;
  std::vector<ExclusionRecord> exclusions;  // canonical enumeration order
};

// splitmix64 finalizer; the fixed mixer behind every coin in the process.
u64 mix64(u64 z);

// Seed for trial t of a Monte Carlo run keyed by (seed, t).
u64 trial_seed(u64 seed, u64 t);

// Fair coin for one progression: absorb seed, a, b, c, len through mix64 and
// take the low bit. Depends only on (seed, progression), never on the order
// progressions are visited in.
CoinSide coin(u64 seed, const GeomProgression& p);

// Remove one coin-chosen middle term of every minimal progression from
// [1, max_n]. Repeated choices of the same integer collapse to one exclusion;
// the records keep full provenance. Requires a process-ready k.
ProcessResult run_process(const ProcessConfig& cfg);

struct McEstimate {
  double estimate = 0;
  double std_error = 0;
  u64 hits = 0;
  u64 trials = 0;
};

// Monte Carlo estimate of P[n survives the process on [1, max_n]]. Only the
// coins of minimal progressions with n as a middle term can remove n, so each
// trial plays exactly those coins; this agrees with running the full process
// per trial, trial t using trial_seed(seed, t).
McEstimate membership_probability(u64 n, u64 max_n, const LengthFunction& k, u64 trials,
                                  u64 seed);
// Same, against a precomputed star family (must be enumerate_gk_star(max_n, k)).
McEstimate membership_probability(u64 n, const std::vector<GeomProgression>& star,
                                  u64 trials, u64 seed);

}  // namespace gpfree
