#include "dtnreward/scenarios.hpp"

#include <array>
#include <cmath>
#include <string>

namespace dtnreward::scenarios {
namespace {

struct Rates {
  const char* id;
  double lambda;
  double mu;
};

constexpr std::array<Rates, 10> kHeterogeneous{{
    {"r1", 0.6530, 0.7945},
    {"r2", 0.5296, 0.2824},
    {"r3", 0.6714, 0.6704},
    {"r4", 0.6685, 0.6670},
    {"r5", 0.2483, 0.2492},
    {"r6", 0.1647, 0.1996},
    {"r7", 0.2500, 0.2000},
    {"r8", 0.1999, 0.1991},
    {"r9", 0.2002, 0.2015},
    {"r10", 0.1991, 0.2005},
}};

constexpr std::array<Rates, 10> kTaxis{{
    {"t1", 0.0613, 0.0298},
    {"t2", 0.0423, 0.0345},
    {"t3", 0.0616, 0.0382},
    {"t4", 0.0340, 0.0370},
    {"t5", 0.0842, 0.0510},
    {"t6", 0.0731, 0.0445},
    {"t7", 0.0452, 0.0322},
    {"t8", 0.0691, 0.0513},
    {"t9", 0.0596, 0.0309},
    {"t10", 0.1095, 0.0252},
}};

constexpr double kWeibullShape = 1.5;
constexpr double kFoldedScaleRatio = 0.5;

InterContactDistribution hyper(double rate) {
  return Hyperexponential{{0.5, 0.5}, {2.0 * rate / 3.0, 2.0 * rate}};
}

InterContactDistribution weibull(double rate) {
  return Weibull{kWeibullShape, 1.0 / rate / std::tgamma(1.0 + 1.0 / kWeibullShape)};
}

InterContactDistribution folded(double rate) {
  const double loc = folded_normal_location_for_mean(1.0 / rate, kFoldedScaleRatio);
  return FoldedNormal{loc, kFoldedScaleRatio * loc};
}

RelaySet exponential_set(const std::array<Rates, 10>& rows) {
  std::vector<RelayProfile> out;
  for (const auto& r : rows) out.push_back(RelayProfile::exponential(r.id, r.lambda, r.mu));
  return validate_profiles(std::move(out));
}

}  // namespace

CostParams reference_costs() { return CostParams::make(0.4, 0.04, 0.01); }

RelaySet heterogeneous_exponential() { return exponential_set(kHeterogeneous); }

RelaySet heterogeneous_mixed() {
  std::vector<RelayProfile> out;
  for (std::size_t i = 0; i < kHeterogeneous.size(); ++i) {
    const Rates& r = kHeterogeneous[i];
    auto make = [&](double rate) -> InterContactDistribution {
      if (i < 2) return Exponential{rate};
      if (i < 4) return hyper(rate);
      if (i < 7) return weibull(rate);
      return folded(rate);
    };
    out.push_back(RelayProfile{r.id, r.lambda, r.mu, make(r.lambda), make(r.mu)});
  }
  return validate_profiles(std::move(out));
}

RelaySet taxis() { return exponential_set(kTaxis); }

}  // namespace dtnreward::scenarios
