#include "dtnreward/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dtnreward/oracle.hpp"

namespace dtnreward {

RandomInstance random_instance(std::size_t n, Rng& rng, const SweepRanges& ranges) {
  std::vector<RelayProfile> profiles;
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = rng.uniform(ranges.rate_lo, ranges.rate_hi);
    const double mu = rng.uniform(ranges.rate_lo, ranges.rate_hi);
    profiles.push_back(RelayProfile::exponential("r" + std::to_string(i + 1), lambda, mu));
  }
  std::vector<double> times(n);
  for (double& t : times) t = rng.uniform(ranges.time_lo, ranges.time_hi);
  std::sort(times.begin(), times.end());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  RandomInstance out;
  out.relays = validate_profiles(std::move(profiles));
  out.log = EncounterLog(out.relays, std::move(times), std::move(order));
  return out;
}

ValidationRow compare_with_oracle(InfoSetting setting, const RelaySet& relays, const EncounterLog& log,
                                  std::size_t n, std::uint64_t samples, std::uint64_t seed, AnonVariant variant) {
  const Knowledge k = Knowledge::from_log(setting, log, n);
  ValidationRow row;
  row.setting = setting;
  row.relays = relays.size();
  row.n = n;
  row.s = k.meeting_time;
  row.closed_form = success_probability(k, relays, variant).value;
  const OracleEstimate est = oracle_setting(k, relays, samples, seed);
  row.oracle_mean = est.mean;
  row.oracle_se = est.std_error;
  const double c = row.closed_form;
  const double m = est.mean;
  const double var = std::max(m * (1.0 - m), c * (1.0 - c));
  row.tolerance = 3.0 * std::sqrt(var / static_cast<double>(samples));
  row.within = std::abs(c - m) <= row.tolerance;
  if (setting == InfoSetting::PartialWithoutIdentities) {
    row.as_written = p_partial_anon(k.meeting_time, n, k.relay, relays, AnonVariant::AsWritten);
  }
  return row;
}

nlohmann::json to_json(const ValidationRow& row) {
  nlohmann::json j{{"setting", to_string(row.setting)},
                   {"N", row.relays},
                   {"n", row.n},
                   {"s", row.s},
                   {"closed_form", row.closed_form},
                   {"oracle_mean", row.oracle_mean},
                   {"oracle_se", row.oracle_se},
                   {"tolerance", row.tolerance},
                   {"within", row.within}};
  if (row.as_written) j["as_written"] = *row.as_written;
  return j;
}

}  // namespace dtnreward
