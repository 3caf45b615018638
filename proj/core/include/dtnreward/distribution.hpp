#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dtnreward/rng.hpp"

namespace dtnreward {

struct Exponential {
  double rate;
  bool operator==(const Exponential&) const = default;
};

struct Hyperexponential {
  std::vector<double> probs;
  std::vector<double> rates;
  bool operator==(const Hyperexponential&) const = default;
};

struct Weibull {
  double shape;
  double scale;
  bool operator==(const Weibull&) const = default;
};

/// |X| with X ~ Normal(location, scale^2); parameters are those of the
/// underlying normal before folding.
struct FoldedNormal {
  double location;
  double scale;
  bool operator==(const FoldedNormal&) const = default;
};

/// Inter-contact time law of one relay with one fixed endpoint.
/// Parameters are validated on construction; the object is immutable.
class InterContactDistribution {
 public:
  using Params = std::variant<Exponential, Hyperexponential, Weibull, FoldedNormal>;

  InterContactDistribution(Exponential p);
  InterContactDistribution(Hyperexponential p);
  InterContactDistribution(Weibull p);
  InterContactDistribution(FoldedNormal p);

  const Params& params() const noexcept { return params_; }
  std::string_view kind() const noexcept;
  bool is_exponential() const noexcept { return std::holds_alternative<Exponential>(params_); }

  double mean() const;
  double second_moment() const;
  double sample(Rng& rng) const;

  /// The same family with time stretched by `factor` (> 0).
  InterContactDistribution scaled(double factor) const;

  friend bool operator==(const InterContactDistribution&, const InterContactDistribution&) = default;

 private:
  Params params_;
};

/// Mean residual (forward recurrence) time E[T^2] / (2 E[T]).
/// Throws Errc::NonFiniteMoment when the second moment is not finite.
double mean_residual(const InterContactDistribution& dist);

/// Folded-normal `location` such that the folded mean equals `target_mean`
/// when scale = ratio * location. Used to build scenarios from rates.
double folded_normal_location_for_mean(double target_mean, double scale_ratio);

}  // namespace dtnreward
