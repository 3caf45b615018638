#include "dtnreward/mobility.hpp"

#include <algorithm>
#include <numeric>

#include "dtnreward/error.hpp"

namespace dtnreward {

double sample_intercontact(const InterContactDistribution& dist, Rng& rng) { return dist.sample(rng); }

std::vector<double> contact_stream(const InterContactDistribution& dist, double horizon, Rng& rng) {
  std::vector<double> out;
  for (double t = dist.sample(rng); t <= horizon; t += dist.sample(rng)) out.push_back(t);
  return out;
}

ResidualSampler::ResidualSampler(InterContactDistribution dist)
    : dist_(std::move(dist)), mean_(dist_.mean()), inspect_(kResidualWarmupMeans * mean_) {
  mean_residual(dist_);  // rejects laws without a finite second moment
}

double ResidualSampler::next(Rng& rng) {
  if (next_event_ < 0.0) {
    next_event_ = dist_.sample(rng);
  } else {
    inspect_ += (16.0 + 16.0 * rng.uniform()) * mean_;
  }
  while (next_event_ <= inspect_) next_event_ += dist_.sample(rng);
  return next_event_ - inspect_;
}

double sample_residual(const InterContactDistribution& dist, Rng& rng) {
  ResidualSampler s(dist);
  return s.next(rng);
}

EncounterSynthesizer::EncounterSynthesizer(const RelaySet& relays) : relays_(&relays) {
  source_.reserve(relays.size());
  dest_.reserve(relays.size());
  for (const auto& r : relays) {
    source_.emplace_back(r.source_dist);
    dest_.emplace_back(r.dest_dist);
  }
}

Encounter EncounterSynthesizer::next(Rng& rng) {
  const std::size_t n = relays_->size();
  std::vector<double> meet(n);
  Encounter e;
  e.dest_delay.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    meet[i] = source_[i].next(rng);
    e.dest_delay[i] = dest_[i].next(rng);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return meet[a] < meet[b]; });
  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k) times[k] = meet[order[k]];
  e.log = EncounterLog(*relays_, std::move(times), std::move(order));
  return e;
}

Encounter synthesize_encounter_log(const RelaySet& relays, Rng& rng) {
  EncounterSynthesizer synth(relays);
  return synth.next(rng);
}

}  // namespace dtnreward
