#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dtnreward/distribution.hpp"

namespace dtnreward {

/// All times are in hours.
struct RelayProfile {
  std::string id;
  double lambda = 0.0;  ///< contact rate with the source, 1/mean(source_dist)
  double mu = 0.0;      ///< contact rate with the destination, 1/mean(dest_dist)
  InterContactDistribution source_dist{Exponential{1.0}};
  InterContactDistribution dest_dist{Exponential{1.0}};

  static RelayProfile exponential(std::string id, double lambda, double mu);
  /// Rates are derived from the distribution means.
  static RelayProfile from_distributions(std::string id, InterContactDistribution source,
                                         InterContactDistribution dest);

  bool is_exponential() const noexcept {
    return source_dist.is_exponential() && dest_dist.is_exponential();
  }
};

/// A validated, immutable relay population. Relays are addressed by their
/// position in the set; ids are kept for I/O and reporting.
class RelaySet {
 public:
  RelaySet() = default;

  std::size_t size() const noexcept { return relays_.size(); }
  bool empty() const noexcept { return relays_.empty(); }
  const RelayProfile& operator[](std::size_t i) const { return relays_[i]; }
  std::span<const RelayProfile> profiles() const noexcept { return relays_; }
  auto begin() const noexcept { return relays_.begin(); }
  auto end() const noexcept { return relays_.end(); }

  /// Throws Errc::UnknownRelay.
  std::size_t index_of(std::string_view id) const;
  std::optional<std::size_t> find(std::string_view id) const;

  double lambda(std::size_t i) const { return relays_[i].lambda; }
  double mu(std::size_t i) const { return relays_[i].mu; }

  bool all_exponential() const noexcept;

 private:
  friend RelaySet validate_profiles(std::vector<RelayProfile> profiles);
  std::vector<RelayProfile> relays_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Throws Errc::DuplicateId, Errc::NonPositiveRate, Errc::InconsistentRate.
RelaySet validate_profiles(std::vector<RelayProfile> profiles);

/// Per-message energy costs, in cost units (storage: cost units per hour).
struct CostParams {
  double c_r = 0.0;  ///< reception
  double c_s = 0.0;  ///< storage per unit time
  double c_d = 0.0;  ///< delivery transmission

  static CostParams make(double c_d, double c_r, double c_s);
};

/// c_r + c_s * E[T_d], the cost a relay always bears once it accepts a copy.
struct RelayBaseCost {
  double value = 0.0;
};

/// Base cost with E[T_d] taken as the true mean residual of dest_dist.
RelayBaseCost base_cost(const CostParams& costs, const RelayProfile& relay);
/// Base cost under the exponential quoting assumption, E[T_d] = 1/mu.
RelayBaseCost quoted_base_cost(const CostParams& costs, const RelayProfile& relay);

enum class InfoSetting { Full, PartialWithIdentities, PartialWithoutIdentities, NoInformation };

inline constexpr InfoSetting kAllSettings[] = {
    InfoSetting::Full, InfoSetting::PartialWithIdentities,
    InfoSetting::PartialWithoutIdentities, InfoSetting::NoInformation};

/// Canonical names: "full", "partial_id", "partial_anon", "none".
std::string_view to_string(InfoSetting s) noexcept;
/// Accepts the canonical names plus F, P+, P-, N. Throws Errc::ParseError.
InfoSetting parse_info_setting(std::string_view text);

/// Source-meeting times and the order in which relays met the source for one
/// message. Times are strictly increasing: a tie is broken at construction
/// by moving the later entry up by one ulp.
class EncounterLog {
 public:
  EncounterLog() = default;
  /// Throws Errc::InvalidLog (length mismatch, negative or unsorted time,
  /// repeated relay) or Errc::UnknownRelay.
  EncounterLog(const RelaySet& relays, std::vector<double> times, std::span<const std::string> ids);
  EncounterLog(const RelaySet& relays, std::vector<double> times, std::vector<std::size_t> order);

  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  /// Zero-based: time(0) is s_1.
  double time(std::size_t k) const { return times_[k]; }
  std::size_t relay(std::size_t k) const { return order_[k]; }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const std::size_t> order() const noexcept { return order_; }

  /// Position of a relay in the log, if it met the source.
  std::optional<std::size_t> position_of(std::size_t relay) const;
  /// First `n` entries.
  EncounterLog prefix(std::size_t n) const;

 private:
  std::vector<double> times_;
  std::vector<std::size_t> order_;
};

/// What a relay is told at its source encounter. The fields a setting does
/// not grant are left empty:
///   Full                      meeting_time, order, prior_relays, prior_times
///   PartialWithIdentities     meeting_time, order, prior_relays
///   PartialWithoutIdentities  meeting_time, order
///   NoInformation             meeting_time
struct Knowledge {
  InfoSetting setting = InfoSetting::Full;
  std::size_t relay = 0;
  double meeting_time = 0.0;
  std::size_t order = 1;  ///< 0 under NoInformation
  std::vector<std::size_t> prior_relays;
  std::vector<double> prior_times;

  /// What the n-th (1-based) relay of `log` learns under `setting`.
  static Knowledge from_log(InfoSetting setting, const EncounterLog& log, std::size_t n);
};

}  // namespace dtnreward
