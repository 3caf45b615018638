#include "dtnreward/reward.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dtnreward/error.hpp"

namespace dtnreward {
namespace {

RewardQuote make_quote(const Knowledge& known, const CostParams& costs, const RelaySet& relays,
                       const SuccessEstimate& est) {
  const RelayProfile& r = relays[known.relay];
  return RewardQuote{r.id, known.setting, known.meeting_time, est,
                     min_reward(costs, quoted_base_cost(costs, r), est.value)};
}

}  // namespace

NetCost net_cost(const CostParams& costs, double mean_residual_dest, double p, double reward) {
  return {costs.c_r + costs.c_s * mean_residual_dest + (costs.c_d - reward) * p};
}

double min_reward(const CostParams& costs, RelayBaseCost base, double p) {
  if (p == 0.0) throw Error(Errc::ZeroSuccessProbability, "relay cannot succeed; skip it");
  if (!(p > 0.0 && p <= 1.0)) throw Error(Errc::DomainError, fmt::format("success probability {} not in (0, 1]", p));
  return costs.c_d + base.value / p;
}

double theoretical_expected_payment(const CostParams& costs, const RelaySet& relays) {
  double total = costs.c_d;
  for (const auto& r : relays) total += base_cost(costs, r).value;
  return total;
}

double theoretical_quoted_payment(const CostParams& costs, const RelaySet& relays) {
  double total = costs.c_d;
  for (const auto& r : relays) total += quoted_base_cost(costs, r).value;
  return total;
}

RewardQuote quote(const Knowledge& known, const CostParams& costs, const RelaySet& relays, AnonVariant variant) {
  return make_quote(known, costs, relays, success_probability(known, relays, variant));
}

RewardQuote quote(const Knowledge& known, const CostParams& costs, const SuccessModel& model) {
  return make_quote(known, costs, model.relays(), model.estimate(known));
}

}  // namespace dtnreward
