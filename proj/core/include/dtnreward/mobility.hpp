#pragma once

#include <cstddef>
#include <vector>

#include "dtnreward/distribution.hpp"
#include "dtnreward/model.hpp"
#include "dtnreward/rng.hpp"

namespace dtnreward {

/// Warm-up before the first inspection, in mean inter-contact times.
inline constexpr double kResidualWarmupMeans = 1e4;

double sample_intercontact(const InterContactDistribution& dist, Rng& rng);

/// Contact instants in (0, horizon] of an ordinary renewal stream.
std::vector<double> contact_stream(const InterContactDistribution& dist, double horizon, Rng& rng);

/// Forward recurrence times read off one long renewal stream.
///
/// The stream is warmed up for kResidualWarmupMeans means before the first
/// inspection; each later inspection lies a further 16 to 32 means along, a
/// spacing drawn uniformly so inspections never lock onto the renewal epochs.
class ResidualSampler {
 public:
  /// Throws Errc::NonFiniteMoment.
  explicit ResidualSampler(InterContactDistribution dist);

  double next(Rng& rng);
  const InterContactDistribution& distribution() const noexcept { return dist_; }

 private:
  InterContactDistribution dist_;
  double mean_;
  double inspect_;
  double next_event_ = -1.0;
};

/// One residual draw from a freshly warmed-up stream. Slow; prefer a
/// ResidualSampler for repeated draws from the same law.
double sample_residual(const InterContactDistribution& dist, Rng& rng);

struct Encounter {
  EncounterLog log;                ///< every relay, sorted by source-meeting time
  std::vector<double> dest_delay;  ///< by relay index, counted from its source contact
};

/// Source-meeting times are residuals of each relay's source law, destination
/// delays residuals of its destination law, all independent.
class EncounterSynthesizer {
 public:
  explicit EncounterSynthesizer(const RelaySet& relays);
  Encounter next(Rng& rng);

 private:
  const RelaySet* relays_;
  std::vector<ResidualSampler> source_;
  std::vector<ResidualSampler> dest_;
};

Encounter synthesize_encounter_log(const RelaySet& relays, Rng& rng);

}  // namespace dtnreward
