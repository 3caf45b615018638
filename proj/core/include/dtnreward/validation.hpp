#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtnreward/model.hpp"
#include "dtnreward/rng.hpp"
#include "dtnreward/success_probability.hpp"

namespace dtnreward {

/// A random exponential relay set with a complete encounter log.
struct RandomInstance {
  RelaySet relays;
  EncounterLog log;
};

struct SweepRanges {
  double rate_lo = 0.05;
  double rate_hi = 5.0;
  double time_lo = 0.1;
  double time_hi = 10.0;
};

/// Rates uniform in [rate_lo, rate_hi], meeting times the sorted draws of n
/// uniforms in [time_lo, time_hi], encounter order a uniform permutation.
RandomInstance random_instance(std::size_t n, Rng& rng, const SweepRanges& ranges = {});

struct ValidationRow {
  InfoSetting setting = InfoSetting::Full;
  std::size_t relays = 0;
  std::size_t n = 1;
  double s = 0.0;
  double closed_form = 0.0;
  double oracle_mean = 0.0;
  double oracle_se = 0.0;
  double tolerance = 0.0;  ///< 3 * sqrt(max(m(1-m), c(1-c)) / samples)
  bool within = false;
  std::optional<double> as_written;  ///< P- only
};

/// Closed form against its conditional oracle for the n-th relay of `log`.
ValidationRow compare_with_oracle(InfoSetting setting, const RelaySet& relays, const EncounterLog& log,
                                  std::size_t n, std::uint64_t samples, std::uint64_t seed,
                                  AnonVariant variant = AnonVariant::Normalized);

nlohmann::json to_json(const ValidationRow& row);

}  // namespace dtnreward
