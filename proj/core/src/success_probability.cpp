#include "dtnreward/success_probability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dtnreward/error.hpp"

namespace dtnreward {
namespace {

void check_size(const RelaySet& relays) {
  if (relays.size() > kMaxClosedFormRelays) {
    throw Error(Errc::TooManyRelays,
                fmt::format("{} relays; closed forms are limited to {}", relays.size(), kMaxClosedFormRelays));
  }
}

void check_self(const RelaySet& relays, std::size_t self) {
  if (self >= relays.size()) throw Error(Errc::UnknownRelay, fmt::format("relay index {} out of range", self));
}

double full_value(const RaceTable& t, const RelaySet& relays, double s_n, std::span<const std::size_t> prev,
                  std::span<const double> prev_times) {
  double exponent = 0.0;
  for (std::size_t k = 0; k < prev.size(); ++k) exponent += relays.mu(prev[k]) * (s_n - prev_times[k]);
  return std::exp(-exponent) * t.win(t.mask_of(prev));
}

double partial_id_value(const RaceTable& t, const RelaySet& relays, double s_n, std::span<const std::size_t> prev) {
  if (!prev.empty() && !(s_n > 0.0)) {
    throw Error(Errc::DegenerateTime, "prior holders cannot have met the source before time 0");
  }
  const std::uint32_t mask = t.mask_of(prev);
  double lead = 1.0;
  for (std::size_t i : prev) lead *= relays.lambda(i) * psi(relays.lambda(i), relays.mu(i), s_n);
  return lead * t.win(mask);
}

// Sum over holder subsets B of the other relays, each relay independently
// having met the source before s with probability a = 1 - e^{-lambda s}.
// Weights are carried in log space because e^{-lambda s} underflows long
// before the conditional ratios lose meaning. `count` < 0 takes every subset.
double subset_value(const RaceTable& t, const RelaySet& relays, double s, int count) {
  const auto others = t.others();
  const std::size_t m = others.size();
  const std::size_t total = std::size_t{1} << m;
  std::vector<double> log_w(total);
  std::vector<double> hold(total);
  log_w[0] = 0.0;
  hold[0] = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double lam = relays.lambda(others[k]);
    const double log_a = std::log(-std::expm1(-lam * s));
    const double log_q = -lam * s;
    const double h = lam * psi(lam, relays.mu(others[k]), s);
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t mask = 0; mask < bit; ++mask) {
      log_w[mask | bit] = log_w[mask] + log_a;
      hold[mask | bit] = hold[mask] * h;
      log_w[mask] += log_q;
    }
  }
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (count >= 0 && std::popcount(mask) != count) continue;
    top = std::max(top, log_w[mask]);
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (count >= 0 && std::popcount(mask) != count) continue;
    const double w = std::exp(log_w[mask] - top);
    den += w;
    num += w * hold[mask] * t.win(static_cast<std::uint32_t>(mask));
  }
  return num / den;
}

double anon_as_written(const RaceTable& t, const RelaySet& relays, double s, int count) {
  const auto others = t.others();
  const std::size_t m = others.size();
  const std::size_t total = std::size_t{1} << m;
  std::vector<double> term(total);
  term[0] = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double lam = relays.lambda(others[k]);
    const double h = lam * psi(lam, relays.mu(others[k]), s);
    const double q = std::exp(-lam * s);
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t mask = 0; mask < bit; ++mask) {
      term[mask | bit] = term[mask] * h;
      term[mask] *= q;
    }
  }
  double sum = 0.0;
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (std::popcount(mask) == count) sum += term[mask] * t.win(static_cast<std::uint32_t>(mask));
  }
  return sum;
}

double partial_anon_value(const RaceTable& t, const RelaySet& relays, double s_n, std::size_t n, AnonVariant v) {
  if (n < 1 || n > relays.size()) {
    throw Error(Errc::IndexOutOfRange, fmt::format("order {} outside 1..{}", n, relays.size()));
  }
  if (n == 1) return t.win(0);
  if (!(s_n > 0.0)) throw Error(Errc::DegenerateTime, "prior holders cannot have met the source before time 0");
  const int count = static_cast<int>(n - 1);
  return v == AnonVariant::Normalized ? subset_value(t, relays, s_n, count) : anon_as_written(t, relays, s_n, count);
}

double none_value(const RaceTable& t, const RelaySet& relays, double s) {
  if (!(s >= 0.0)) throw Error(Errc::DomainError, fmt::format("meeting time {} is negative", s));
  if (s == 0.0) return t.win(0);
  return subset_value(t, relays, s, -1);
}

}  // namespace

double psi(double lambda, double mu, double s) {
  if (s == 0.0) return 1.0 / lambda;
  const double denom = -std::expm1(-lambda * s);
  if (std::abs(lambda - mu) < 1e-9 * std::max(lambda, mu)) {
    return s * std::exp(-lambda * s) / denom;
  }
  // (e^{-mu s} - e^{-lambda s}) / (lambda - mu), written around the smaller
  // rate so neither exponential overflows.
  const double lo = std::min(lambda, mu);
  const double gap = std::abs(lambda - mu);
  const double diff = std::exp(-lo * s) * -std::expm1(-gap * s) / gap;
  return diff / denom;
}

RaceTable::RaceTable(const RelaySet& relays, std::size_t self) : self_(self) {
  check_size(relays);
  check_self(relays, self);
  for (std::size_t i = 0; i < relays.size(); ++i) {
    if (i != self) others_.push_back(i);
  }
  const std::size_t m = others_.size();
  const std::size_t total = std::size_t{1} << m;
  table_.assign(total, 0.0);
  const double mu_self = relays.mu(self);
  for (std::size_t mask = total; mask-- > 0;) {
    double num = mu_self;
    double den = mu_self;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t bit = std::size_t{1} << k;
      if (mask & bit) {
        den += relays.mu(others_[k]);
      } else {
        const double lam = relays.lambda(others_[k]);
        den += lam;
        num += lam * table_[mask | bit];
      }
    }
    table_[mask] = num / den;
  }
}

std::uint32_t RaceTable::mask_of(std::span<const std::size_t> relays) const {
  std::uint32_t mask = 0;
  for (std::size_t r : relays) {
    if (r == self_) throw Error(Errc::InvalidLog, "a relay cannot precede itself");
    auto it = std::lower_bound(others_.begin(), others_.end(), r);
    if (it == others_.end() || *it != r) {
      throw Error(Errc::UnknownRelay, fmt::format("relay index {} out of range", r));
    }
    const std::uint32_t bit = std::uint32_t{1} << (it - others_.begin());
    if (mask & bit) throw Error(Errc::InvalidLog, "prior holder listed twice");
    mask |= bit;
  }
  return mask;
}

double p_full(const EncounterLog& log, const RelaySet& relays, std::size_t n) {
  if (n < 1 || n > log.size()) {
    throw Error(Errc::IndexOutOfRange, fmt::format("order {} outside 1..{}", n, log.size()));
  }
  const RaceTable t(relays, log.relay(n - 1));
  return full_value(t, relays, log.time(n - 1), log.order().first(n - 1), log.times().first(n - 1));
}

double p_partial_id(double s_n, std::size_t n, std::span<const std::size_t> prev, std::size_t self,
                    const RelaySet& relays) {
  if (n < 1 || prev.size() != n - 1) {
    throw Error(Errc::IndexOutOfRange, fmt::format("order {} with {} prior holders", n, prev.size()));
  }
  const RaceTable t(relays, self);
  return partial_id_value(t, relays, s_n, prev);
}

double p_partial_anon(double s_n, std::size_t n, std::size_t self, const RelaySet& relays, AnonVariant variant) {
  const RaceTable t(relays, self);
  return partial_anon_value(t, relays, s_n, n, variant);
}

double p_none(double s, std::size_t self, const RelaySet& relays) {
  const RaceTable t(relays, self);
  return none_value(t, relays, s);
}

double p_actual(const EncounterLog& log, const RelaySet& relays, std::size_t n) {
  const std::size_t N = relays.size();
  if (log.size() != N) {
    throw Error(Errc::IncompleteLog, fmt::format("log has {} of {} relays", log.size(), N));
  }
  if (n < 1 || n > N) throw Error(Errc::IndexOutOfRange, fmt::format("order {} outside 1..{}", n, N));
  const double mu_n = relays.mu(log.relay(n - 1));
  double exponent = 0.0;  // sum_{k<i} mu_k (s_i - s_k)
  double rate = 0.0;      // sum_{k<=i} mu_k
  double result = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) exponent += rate * (log.time(i) - log.time(i - 1));
    rate += relays.mu(log.relay(i));
    if (i + 1 < n) continue;
    const double window = i + 1 < N ? -std::expm1(-rate * (log.time(i + 1) - log.time(i))) : 1.0;
    result += std::exp(-exponent) * window * mu_n / rate;
  }
  return result;
}

SuccessModel::SuccessModel(const RelaySet& relays, AnonVariant variant) : relays_(relays), variant_(variant) {
  check_size(relays_);
  tables_.reserve(relays_.size());
  for (std::size_t i = 0; i < relays_.size(); ++i) tables_.emplace_back(relays_, i);
}

double SuccessModel::full(std::size_t self, double s_n, std::span<const std::size_t> prev,
                          std::span<const double> prev_times) const {
  check_self(relays_, self);
  if (prev.size() != prev_times.size()) {
    throw Error(Errc::InvalidLog, "prior holders and prior times differ in length");
  }
  return full_value(tables_[self], relays_, s_n, prev, prev_times);
}

double SuccessModel::partial_id(std::size_t self, double s_n, std::span<const std::size_t> prev) const {
  check_self(relays_, self);
  return partial_id_value(tables_[self], relays_, s_n, prev);
}

double SuccessModel::partial_anon(std::size_t self, double s_n, std::size_t n) const {
  check_self(relays_, self);
  return partial_anon_value(tables_[self], relays_, s_n, n, variant_);
}

double SuccessModel::none(std::size_t self, double s) const {
  check_self(relays_, self);
  return none_value(tables_[self], relays_, s);
}

SuccessEstimate SuccessModel::estimate(const Knowledge& k) const {
  SuccessEstimate e{k.setting, k.order, k.meeting_time, 0.0};
  switch (k.setting) {
    case InfoSetting::Full: e.value = full(k.relay, k.meeting_time, k.prior_relays, k.prior_times); break;
    case InfoSetting::PartialWithIdentities: e.value = partial_id(k.relay, k.meeting_time, k.prior_relays); break;
    case InfoSetting::PartialWithoutIdentities: e.value = partial_anon(k.relay, k.meeting_time, k.order); break;
    case InfoSetting::NoInformation: e.value = none(k.relay, k.meeting_time); break;
  }
  return e;
}

SuccessEstimate success_probability(const Knowledge& k, const RelaySet& relays, AnonVariant variant) {
  const RaceTable t(relays, k.relay);
  SuccessEstimate e{k.setting, k.order, k.meeting_time, 0.0};
  switch (k.setting) {
    case InfoSetting::Full:
      if (k.prior_relays.size() != k.prior_times.size()) {
        throw Error(Errc::InvalidLog, "prior holders and prior times differ in length");
      }
      e.value = full_value(t, relays, k.meeting_time, k.prior_relays, k.prior_times);
      break;
    case InfoSetting::PartialWithIdentities:
      e.value = partial_id_value(t, relays, k.meeting_time, k.prior_relays);
      break;
    case InfoSetting::PartialWithoutIdentities:
      e.value = partial_anon_value(t, relays, k.meeting_time, k.order, variant);
      break;
    case InfoSetting::NoInformation: e.value = none_value(t, relays, k.meeting_time); break;
  }
  return e;
}

}  // namespace dtnreward
