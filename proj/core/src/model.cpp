#include "dtnreward/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include <fmt/format.h>

#include "dtnreward/error.hpp"

namespace dtnreward {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::NonPositiveRate: return "NonPositiveRate";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::InconsistentRate: return "InconsistentRate";
    case Errc::NonFiniteMoment: return "NonFiniteMoment";
    case Errc::InvalidLog: return "InvalidLog";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnknownRelay: return "UnknownRelay";
    case Errc::DegenerateTime: return "DegenerateTime";
    case Errc::TooManyRelays: return "TooManyRelays";
    case Errc::IncompleteLog: return "IncompleteLog";
    case Errc::ZeroSuccessProbability: return "ZeroSuccessProbability";
    case Errc::DomainError: return "DomainError";
    case Errc::EmptyTrace: return "EmptyTrace";
    case Errc::UnsortedInput: return "UnsortedInput";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::ConfigError: return "ConfigError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

RelayProfile RelayProfile::exponential(std::string id, double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) {
    throw Error(Errc::NonPositiveRate, fmt::format("relay '{}': lambda={} mu={}", id, lambda, mu));
  }
  return RelayProfile{std::move(id), lambda, mu, Exponential{lambda}, Exponential{mu}};
}

RelayProfile RelayProfile::from_distributions(std::string id, InterContactDistribution source,
                                              InterContactDistribution dest) {
  const double lambda = 1.0 / source.mean();
  const double mu = 1.0 / dest.mean();
  return RelayProfile{std::move(id), lambda, mu, std::move(source), std::move(dest)};
}

std::size_t RelaySet::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(Errc::UnknownRelay, fmt::format("no relay with id '{}'", id));
}

std::optional<std::size_t> RelaySet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool RelaySet::all_exponential() const noexcept {
  return std::all_of(relays_.begin(), relays_.end(), [](const RelayProfile& r) { return r.is_exponential(); });
}

namespace {

// Rates are the reciprocal of the mean; inputs typically carry a handful of
// significant digits, so the check is relative.
constexpr double kRateTolerance = 1e-6;

void check_rate(const RelayProfile& r, double rate, const InterContactDistribution& dist, const char* which) {
  const double implied = 1.0 / dist.mean();
  if (std::abs(rate - implied) > kRateTolerance * implied) {
    throw Error(Errc::InconsistentRate,
                fmt::format("relay '{}': {} = {} but 1/mean({}) = {}", r.id, which, rate, dist.kind(), implied));
  }
}

}  // namespace

RelaySet validate_profiles(std::vector<RelayProfile> profiles) {
  RelaySet out;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const RelayProfile& r = profiles[i];
    if (!(r.lambda > 0.0) || !(r.mu > 0.0) || !std::isfinite(r.lambda) || !std::isfinite(r.mu)) {
      throw Error(Errc::NonPositiveRate, fmt::format("relay '{}': lambda={} mu={}", r.id, r.lambda, r.mu));
    }
    check_rate(r, r.lambda, r.source_dist, "lambda");
    check_rate(r, r.mu, r.dest_dist, "mu");
    if (!out.index_.emplace(r.id, i).second) {
      throw Error(Errc::DuplicateId, fmt::format("relay id '{}' appears more than once", r.id));
    }
  }
  out.relays_ = std::move(profiles);
  return out;
}

CostParams CostParams::make(double c_d, double c_r, double c_s) {
  for (double v : {c_d, c_r, c_s}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(Errc::DomainError, fmt::format("costs must be finite and >= 0 (c_d={}, c_r={}, c_s={})", c_d, c_r, c_s));
    }
  }
  return CostParams{c_r, c_s, c_d};
}

RelayBaseCost base_cost(const CostParams& costs, const RelayProfile& relay) {
  return {costs.c_r + costs.c_s * mean_residual(relay.dest_dist)};
}

RelayBaseCost quoted_base_cost(const CostParams& costs, const RelayProfile& relay) {
  return {costs.c_r + costs.c_s / relay.mu};
}

std::string_view to_string(InfoSetting s) noexcept {
  switch (s) {
    case InfoSetting::Full: return "full";
    case InfoSetting::PartialWithIdentities: return "partial_id";
    case InfoSetting::PartialWithoutIdentities: return "partial_anon";
    case InfoSetting::NoInformation: return "none";
  }
  return "full";
}

InfoSetting parse_info_setting(std::string_view text) {
  if (text == "full" || text == "F") return InfoSetting::Full;
  if (text == "partial_id" || text == "P+") return InfoSetting::PartialWithIdentities;
  if (text == "partial_anon" || text == "P-") return InfoSetting::PartialWithoutIdentities;
  if (text == "none" || text == "N") return InfoSetting::NoInformation;
  throw Error(Errc::ParseError, fmt::format("unknown information setting '{}'", text));
}

EncounterLog::EncounterLog(const RelaySet& relays, std::vector<double> times, std::span<const std::string> ids) {
  std::vector<std::size_t> order;
  order.reserve(ids.size());
  for (const auto& id : ids) order.push_back(relays.index_of(id));
  *this = EncounterLog(relays, std::move(times), std::move(order));
}

EncounterLog::EncounterLog(const RelaySet& relays, std::vector<double> times, std::vector<std::size_t> order) {
  if (times.size() != order.size()) {
    throw Error(Errc::InvalidLog, fmt::format("{} times but {} relays", times.size(), order.size()));
  }
  if (times.size() > relays.size()) {
    throw Error(Errc::InvalidLog, "log is longer than the relay set");
  }
  std::vector<bool> seen(relays.size(), false);
  double prev_input = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (order[k] >= relays.size()) {
      throw Error(Errc::UnknownRelay, fmt::format("relay index {} out of range", order[k]));
    }
    if (seen[order[k]]) {
      throw Error(Errc::InvalidLog, fmt::format("relay '{}' listed twice", relays[order[k]].id));
    }
    seen[order[k]] = true;
    const double t = times[k];
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error(Errc::InvalidLog, fmt::format("bad meeting time {}", t));
    if (t < prev_input) throw Error(Errc::InvalidLog, "meeting times are not sorted");
    prev_input = t;
    if (k > 0 && times[k] <= times[k - 1]) {
      times[k] = std::nextafter(times[k - 1], std::numeric_limits<double>::infinity());
    }
  }
  times_ = std::move(times);
  order_ = std::move(order);
}

std::optional<std::size_t> EncounterLog::position_of(std::size_t relay) const {
  auto it = std::find(order_.begin(), order_.end(), relay);
  if (it == order_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - order_.begin());
}

EncounterLog EncounterLog::prefix(std::size_t n) const {
  if (n > size()) throw Error(Errc::IndexOutOfRange, fmt::format("prefix {} of a log of {}", n, size()));
  EncounterLog out;
  out.times_.assign(times_.begin(), times_.begin() + n);
  out.order_.assign(order_.begin(), order_.begin() + n);
  return out;
}

Knowledge Knowledge::from_log(InfoSetting setting, const EncounterLog& log, std::size_t n) {
  if (n < 1 || n > log.size()) {
    throw Error(Errc::IndexOutOfRange, fmt::format("order {} outside 1..{}", n, log.size()));
  }
  Knowledge k;
  k.setting = setting;
  k.relay = log.relay(n - 1);
  k.meeting_time = log.time(n - 1);
  k.order = n;
  if (setting == InfoSetting::Full || setting == InfoSetting::PartialWithIdentities) {
    k.prior_relays.assign(log.order().begin(), log.order().begin() + (n - 1));
  }
  if (setting == InfoSetting::Full) {
    k.prior_times.assign(log.times().begin(), log.times().begin() + (n - 1));
  }
  if (setting == InfoSetting::NoInformation) k.order = 0;
  return k;
}

}  // namespace dtnreward
