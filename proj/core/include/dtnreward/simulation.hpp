#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtnreward/model.hpp"
#include "dtnreward/success_probability.hpp"

namespace dtnreward {

/// Whether relays that meet the source after the message has already been
/// delivered still take a copy.
///   Carry     every relay takes a copy and carries it until it meets the
///             destination (or its TTL fires); the default.
///   Truncate  quoting stops at the realized delivery instant.
enum class LateContacts { Carry, Truncate };

std::string_view to_string(LateContacts l) noexcept;
LateContacts parse_late_contacts(std::string_view text);

struct ExperimentConfig {
  RelaySet relays;
  CostParams costs;
  InfoSetting setting = InfoSetting::Full;
  std::size_t messages = 1;  ///< one per time slot
  std::optional<double> ttl_epsilon;
  std::uint64_t seed = 0;
  double slot_hours = 10.0;
  LateContacts late_contacts = LateContacts::Carry;
  AnonVariant anon_variant = AnonVariant::Normalized;
  /// Messages per independently seeded block; block b draws from
  /// split_seed(seed, b).
  std::size_t block_size = 1000;
};

struct MessageRecord {
  std::optional<std::size_t> winner;
  double payment = 0.0;        ///< the winner's frozen quote, 0 when undelivered
  double delivery_delay = 0.0; ///< from message generation; 0 when undelivered
  std::size_t accepted = 0;
  std::size_t skipped = 0;
};

struct RelayLedger {
  std::string id;
  double rewards = 0.0;  ///< cumulative payments received
  double costs = 0.0;    ///< c_r + c_s * holding per copy, c_d per delivery
  std::uint64_t accepted = 0;
  std::uint64_t wins = 0;
  std::uint64_t skipped = 0;
  std::uint64_t drops = 0;
  double holding_time = 0.0;  ///< summed over accepted copies
};

struct TTLStats {
  double epsilon = 0.0;
  double expected_failure = 0.0;
  double empirical_failure = 0.0;
  double failure_std_error = 0.0;
  std::vector<double> mean_holding;      ///< per relay
  std::vector<double> expected_holding;  ///< 1 / (mu (1 + eps))
};

struct SimulationReport {
  InfoSetting setting = InfoSetting::Full;
  std::size_t messages = 0;
  std::uint64_t seed = 0;
  double slot_hours = 10.0;
  LateContacts late_contacts = LateContacts::Carry;
  std::vector<MessageRecord> records;
  std::vector<double> running_average;  ///< (1/t) sum of payments up to slot t
  std::vector<RelayLedger> ledgers;
  std::size_t failures = 0;
  double mean_payment = 0.0;
  double payment_std_error = 0.0;
  double theoretical = 0.0;         ///< true mean-residual reference
  double theoretical_quoted = 0.0;  ///< exponential-assumption reference
  bool distribution_mismatch = false;
  std::optional<TTLStats> ttl;
  std::vector<std::string> notes;

  /// Payments of delivered messages, in slot order.
  std::vector<double> payments() const;
};

/// Throws Errc::ConfigError for an invalid configuration (including TTL with
/// non-exponential profiles) and propagates module errors.
SimulationReport run(const ExperimentConfig& config);
/// Same pipeline; intended for non-exponential profiles quoted under the
/// exponential assumption. The report flags the mismatch.
SimulationReport run_robustness(const ExperimentConfig& config);
/// Requires ttl_epsilon.
SimulationReport run_ttl(const ExperimentConfig& config);

struct BreakevenSeries {
  std::string relay_id;
  std::vector<double> avg_reward;  ///< cumulative average per slot
  std::vector<double> avg_cost;
};

/// Throws Errc::UnknownRelay.
BreakevenSeries run_relay_breakeven(const ExperimentConfig& config, std::string_view relay_id);

nlohmann::json report_to_json(const SimulationReport& report);
/// Columns: slot, payment, running_avg, theoretical.
void write_series_csv(std::ostream& out, const SimulationReport& report);

/// Experiment document:
///   {"relays": "file.json" | [...], "costs": {"c_d":..,"c_r":..,"c_s":..},
///    "setting": "full", "messages": 10000, "seed": 1, "ttl_epsilon": 0.5,
///    "slot_hours": 10, "late_contacts": "carry", "anon_variant": "normalized",
///    "block_size": 1000}
/// A relative relay path is resolved against `base_dir`.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

}  // namespace dtnreward
