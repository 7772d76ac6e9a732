#include "gpfree/process.hpp"

#include <cmath>

#include "gpfree/parallel.hpp"

namespace gpfree {

u64 mix64(u64 z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

u64 trial_seed(u64 seed, u64 t) { return mix64(seed ^ mix64(t)); }

CoinSide coin(u64 seed, const GeomProgression& p) {
  u64 h = mix64(seed ^ p.a);
  h = mix64(h ^ p.b);
  h = mix64(h ^ p.c);
  h = mix64(h ^ static_cast<u64>(p.len));
  return (h & 1) ? CoinSide::upper : CoinSide::lower;
}

ProcessResult run_process(const ProcessConfig& cfg) {
  if (!cfg.k.process_ready())
    fail(errc::not_process_ready, "process needs even integer lengths >= 6");
  ProcessResult result;
  result.window = SequenceWindow::full(cfg.max_n);
  for (const GeomProgression& p : enumerate_gk_star(cfg.max_n, cfg.k)) {
    MiddlePair mid = middle_terms(p);
    CoinSide side = coin(cfg.seed, p);
    u64 chosen = side == CoinSide::lower ? mid.lower : mid.upper;
    result.window.erase(chosen);
    result.exclusions.push_back({p, chosen, side});
  }
  return result;
}

namespace {

struct RelevantCoin {
  GeomProgression progression;
  CoinSide removing_side;  // the side whose choice removes n
};

std::vector<RelevantCoin> coins_for(u64 n, const std::vector<GeomProgression>& star) {
  std::vector<RelevantCoin> out;
  for (const GeomProgression& p : star) {
    MiddlePair mid = middle_terms(p);
    if (mid.lower == n) out.push_back({p, CoinSide::lower});
    if (mid.upper == n) out.push_back({p, CoinSide::upper});
  }
  return out;
}

}  // namespace

McEstimate membership_probability(u64 n, const std::vector<GeomProgression>& star,
                                  u64 trials, u64 seed) {
  if (trials == 0) fail(errc::invalid_argument, "trials must be positive");
  std::vector<RelevantCoin> relevant = coins_for(n, star);
  u64 hits = parallel_trial_count(trials, [&](u64 t) {
    u64 ts = trial_seed(seed, t);
    for (const RelevantCoin& rc : relevant) {
      if (coin(ts, rc.progression) == rc.removing_side) return false;
    }
    return true;
  });
  McEstimate mc;
  mc.hits = hits;
  mc.trials = trials;
  mc.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  mc.std_error = std::sqrt(mc.estimate * (1.0 - mc.estimate) / static_cast<double>(trials));
  return mc;
}

McEstimate membership_probability(u64 n, u64 max_n, const LengthFunction& k, u64 trials,
                                  u64 seed) {
  if (!k.process_ready())
    fail(errc::not_process_ready, "process needs even integer lengths >= 6");
  if (n < 1 || n > max_n) fail(errc::invalid_argument, "n outside window");
  return membership_probability(n, enumerate_gk_star(max_n, k), trials, seed);
}

}  // namespace gpfree
