#pragma once

#include <cstddef>
#include <cstdint>

#include "dtnreward/model.hpp"

namespace dtnreward {

struct OracleEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< sqrt(mean (1 - mean) / samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t wins = 0;
};

/// Samples are drawn in batches of this size; batch b uses
/// Rng(split_seed(seed, b)), so estimates do not depend on how batches are
/// scheduled.
inline constexpr std::uint64_t kOracleBatch = 1 << 16;

/// Brute-force race over a complete log: every relay delivers at its
/// meeting time plus an Exponential(mu) delay.
OracleEstimate oracle_actual(const EncounterLog& log, const RelaySet& relays, std::size_t n,
                             std::uint64_t samples, std::uint64_t seed);

/// Samples whatever the setting leaves unknown from its conditional law and
/// runs the race:
///   Full  unmet relays meet at s_n + Exponential(lambda)
///   P+    prior holders' times from Exponential(lambda) truncated to (0, s_n)
///   P-    prior holder identities drawn by exact subset enumeration with
///         weight prod (1 - e^{-lambda s_n}) prod e^{-lambda s_n}, then as P+
///   N     every other relay meets at Exponential(lambda), unconditioned
OracleEstimate oracle_setting(const Knowledge& known, const RelaySet& relays, std::uint64_t samples,
                              std::uint64_t seed);

}  // namespace dtnreward
