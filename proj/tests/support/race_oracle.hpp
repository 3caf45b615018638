#pragma once

// Brute-force race sampler used as an independent reference in tests.
// It shares nothing with the library's sampler: its own PRNG, rejection
// conditioning instead of inverse-CDF truncation, and a direct race.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

struct Relay {
  double lambda;
  double mu;
};

struct Mc {
  double mean;
  double se;
  std::uint64_t accepted;
};

enum class Known { Full, Ids, Count, Nothing };

// self: index of the quoting relay, s: its meeting time.
// Full: fixed_times holds every other relay's time when it met before s, or < 0.
// Ids: holders lists which other relays met before s.
// Count: holders.size() others met before s, identities unknown.
// Nothing: no constraint on the others.
inline Mc race(const std::vector<Relay>& relays, std::size_t self, double s, Known known,
               const std::vector<double>& fixed_times, const std::vector<std::size_t>& holders,
               std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const std::size_t n = relays.size();
  std::vector<char> must_hold(n, 0);
  for (std::size_t h : holders) must_hold[h] = 1;
  std::uint64_t wins = 0;
  std::uint64_t done = 0;
  std::vector<double> t(n);
  while (done < samples) {
    bool ok = true;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n && ok; ++j) {
      if (j == self) continue;
      std::exponential_distribution<double> ex(relays[j].lambda);
      double tj = ex(gen);
      switch (known) {
        case Known::Full:
          if (fixed_times[j] >= 0.0) {
            tj = fixed_times[j];
          } else {
            while (tj < s) tj = ex(gen);
          }
          break;
        case Known::Ids:
          ok = (tj < s) == (must_hold[j] != 0);
          break;
        case Known::Count:
          if (tj < s) ++count;
          break;
        case Known::Nothing:
          break;
      }
      t[j] = tj;
    }
    if (known == Known::Count && count != holders.size()) ok = false;
    if (!ok) continue;
    ++done;
    const double mine = s + std::exponential_distribution<double>(relays[self].mu)(gen);
    bool win = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == self) continue;
      if (t[j] + std::exponential_distribution<double>(relays[j].mu)(gen) <= mine) win = false;
    }
    if (win) ++wins;
  }
  const double m = static_cast<double>(wins) / static_cast<double>(samples);
  return {m, std::sqrt(m * (1.0 - m) / static_cast<double>(samples)), done};
}

// Fixed meeting times for everyone; probability that `self` delivers first.
inline Mc race_fixed(const std::vector<Relay>& relays, const std::vector<double>& times, std::size_t self,
                     std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uint64_t wins = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    std::size_t best = 0;
    double best_t = INFINITY;
    for (std::size_t j = 0; j < relays.size(); ++j) {
      const double d = times[j] + std::exponential_distribution<double>(relays[j].mu)(gen);
      if (d < best_t) {
        best_t = d;
        best = j;
      }
    }
    if (best == self) ++wins;
  }
  const double m = static_cast<double>(wins) / static_cast<double>(samples);
  return {m, std::sqrt(m * (1.0 - m) / static_cast<double>(samples)), samples};
}

// Tolerance used throughout: 3 standard errors, floored so a zero-variance
// estimate does not demand exact equality with a closed form.
inline double tol3(double m, double p, std::uint64_t n) {
  const double v = std::max({m * (1.0 - m), p * (1.0 - p), 1.0 / static_cast<double>(n)});
  return 3.0 * std::sqrt(v / static_cast<double>(n));
}

}  // namespace testsupport
