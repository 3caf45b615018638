#include "dtnreward/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "dtnreward/error.hpp"
#include "dtnreward/rng.hpp"
#include "parallel.hpp"

namespace dtnreward {
namespace {

template <class Trial>
OracleEstimate run_batches(std::size_t relays, std::uint64_t samples, std::uint64_t seed, Trial trial) {
  if (samples == 0) throw Error(Errc::DomainError, "oracle needs at least one sample");
  const std::uint64_t batches = (samples + kOracleBatch - 1) / kOracleBatch;
  std::vector<std::uint64_t> wins(batches, 0);
  detail::for_each_block(batches, [&](std::size_t b) {
    Rng rng(split_seed(seed, b));
    const std::uint64_t begin = b * kOracleBatch;
    const std::uint64_t end = std::min(samples, begin + kOracleBatch);
    std::vector<double> meet(relays, 0.0);
    std::uint64_t w = 0;
    for (std::uint64_t i = begin; i < end; ++i) w += trial(rng, meet) ? 1 : 0;
    wins[b] = w;
  });
  OracleEstimate est;
  for (std::uint64_t w : wins) est.wins += w;
  est.samples = samples;
  est.seed = seed;
  est.mean = static_cast<double>(est.wins) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples));
  return est;
}

// Inverse CDF of Exponential(rate) restricted to (0, bound).
double truncated_exponential(Rng& rng, double rate, double bound) {
  const double mass = -std::expm1(-rate * bound);
  return -std::log1p(-rng.uniform() * mass) / rate;
}

// Self wins when its delivery instant is strictly earliest.
bool self_wins(Rng& rng, const RelaySet& relays, std::size_t self, double self_meet,
               const std::vector<double>& meet) {
  const double mine = self_meet + rng.exponential(relays.mu(self));
  for (std::size_t j = 0; j < relays.size(); ++j) {
    if (j == self) continue;
    if (meet[j] + rng.exponential(relays.mu(j)) <= mine) return false;
  }
  return true;
}

}  // namespace

OracleEstimate oracle_actual(const EncounterLog& log, const RelaySet& relays, std::size_t n,
                             std::uint64_t samples, std::uint64_t seed) {
  if (log.size() != relays.size()) {
    throw Error(Errc::IncompleteLog, fmt::format("log has {} of {} relays", log.size(), relays.size()));
  }
  if (n < 1 || n > log.size()) throw Error(Errc::IndexOutOfRange, fmt::format("order {} outside 1..{}", n, log.size()));
  std::vector<double> meet(relays.size());
  for (std::size_t k = 0; k < log.size(); ++k) meet[log.relay(k)] = log.time(k);
  const std::size_t self = log.relay(n - 1);
  return run_batches(relays.size(), samples, seed,
                     [&](Rng& rng, std::vector<double>&) { return self_wins(rng, relays, self, meet[self], meet); });
}

OracleEstimate oracle_setting(const Knowledge& known, const RelaySet& relays, std::uint64_t samples,
                              std::uint64_t seed) {
  const std::size_t N = relays.size();
  const std::size_t self = known.relay;
  if (self >= N) throw Error(Errc::UnknownRelay, fmt::format("relay index {} out of range", self));
  const double s = known.meeting_time;

  std::vector<bool> is_prior(N, false);
  for (std::size_t r : known.prior_relays) {
    if (r >= N || r == self || is_prior[r]) throw Error(Errc::InvalidLog, "bad prior holder list");
    is_prior[r] = true;
  }

  switch (known.setting) {
    case InfoSetting::Full: {
      if (known.prior_times.size() != known.prior_relays.size()) {
        throw Error(Errc::InvalidLog, "prior holders and prior times differ in length");
      }
      return run_batches(N, samples, seed, [&](Rng& rng, std::vector<double>& meet) {
        for (std::size_t j = 0; j < N; ++j) {
          if (j != self && !is_prior[j]) meet[j] = s + rng.exponential(relays.lambda(j));
        }
        for (std::size_t k = 0; k < known.prior_relays.size(); ++k) meet[known.prior_relays[k]] = known.prior_times[k];
        return self_wins(rng, relays, self, s, meet);
      });
    }
    case InfoSetting::PartialWithIdentities: {
      if (!known.prior_relays.empty() && !(s > 0.0)) throw Error(Errc::DegenerateTime, "s_n = 0 with prior holders");
      return run_batches(N, samples, seed, [&](Rng& rng, std::vector<double>& meet) {
        for (std::size_t j = 0; j < N; ++j) {
          if (j == self) continue;
          meet[j] = is_prior[j] ? truncated_exponential(rng, relays.lambda(j), s)
                                : s + rng.exponential(relays.lambda(j));
        }
        return self_wins(rng, relays, self, s, meet);
      });
    }
    case InfoSetting::PartialWithoutIdentities: {
      const std::size_t n = known.order;
      if (n < 1 || n > N) throw Error(Errc::IndexOutOfRange, fmt::format("order {} outside 1..{}", n, N));
      if (n > 1 && !(s > 0.0)) throw Error(Errc::DegenerateTime, "s_n = 0 with prior holders");
      if (N > 20) throw Error(Errc::TooManyRelays, "subset enumeration is limited to 20 relays");
      std::vector<std::size_t> others;
      for (std::size_t j = 0; j < N; ++j) {
        if (j != self) others.push_back(j);
      }
      // Every (n-1)-subset of the other relays with its posterior weight.
      std::vector<std::uint32_t> subsets;
      std::vector<double> cumulative;
      double total = 0.0;
      const std::uint32_t limit = std::uint32_t{1} << others.size();
      for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != n - 1) continue;
        double w = 1.0;
        for (std::size_t k = 0; k < others.size(); ++k) {
          const double lam = relays.lambda(others[k]);
          w *= (mask >> k & 1u) ? -std::expm1(-lam * s) : std::exp(-lam * s);
        }
        total += w;
        subsets.push_back(mask);
        cumulative.push_back(total);
      }
      if (!(total > 0.0)) throw Error(Errc::DomainError, "no prior-holder subset has positive weight");
      return run_batches(N, samples, seed, [&](Rng& rng, std::vector<double>& meet) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        const std::uint32_t mask = subsets[static_cast<std::size_t>(it - cumulative.begin())];
        for (std::size_t k = 0; k < others.size(); ++k) {
          const std::size_t j = others[k];
          const double lam = relays.lambda(j);
          meet[j] = (mask >> k & 1u) ? truncated_exponential(rng, lam, s) : s + rng.exponential(lam);
        }
        return self_wins(rng, relays, self, s, meet);
      });
    }
    case InfoSetting::NoInformation: {
      return run_batches(N, samples, seed, [&](Rng& rng, std::vector<double>& meet) {
        for (std::size_t j = 0; j < N; ++j) {
          if (j != self) meet[j] = rng.exponential(relays.lambda(j));
        }
        return self_wins(rng, relays, self, s, meet);
      });
    }
  }
  throw Error(Errc::ConfigError, "unknown information setting");
}

}  // namespace dtnreward
