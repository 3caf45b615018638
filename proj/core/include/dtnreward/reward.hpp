#pragma once

#include <string>

#include "dtnreward/model.hpp"
#include "dtnreward/success_probability.hpp"

namespace dtnreward {

struct NetCost {
  double value = 0.0;
};

struct RewardQuote {
  std::string relay_id;
  InfoSetting setting = InfoSetting::Full;
  double s_n = 0.0;
  SuccessEstimate success_estimate;
  double reward = 0.0;
};

/// c_r + c_s E[T_d] + (c_d - R) p
NetCost net_cost(const CostParams& costs, double mean_residual_dest, double p, double reward);

/// c_d + base / p. Throws Errc::ZeroSuccessProbability when p = 0 and
/// Errc::DomainError when p is outside (0, 1].
double min_reward(const CostParams& costs, RelayBaseCost base, double p);

/// c_d + sum_i (c_r + c_s E[T_d^i]) with E[T_d^i] the true mean residual of
/// each relay's destination law. The same for every information setting.
double theoretical_expected_payment(const CostParams& costs, const RelaySet& relays);

/// c_d + sum_i (c_r + c_s / mu_i): the expected payment implied by quotes
/// made under the exponential assumption. Equal to the above when every
/// destination law is exponential.
double theoretical_quoted_payment(const CostParams& costs, const RelaySet& relays);

/// Quotes use the exponential-assumption base cost c_r + c_s / mu.
/// Propagates success-probability errors; throws
/// Errc::ZeroSuccessProbability when the estimate is exactly 0.
RewardQuote quote(const Knowledge& known, const CostParams& costs, const RelaySet& relays,
                  AnonVariant variant = AnonVariant::Normalized);
RewardQuote quote(const Knowledge& known, const CostParams& costs, const SuccessModel& model);

}  // namespace dtnreward
