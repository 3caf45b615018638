#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dtnreward/model.hpp"

namespace dtnreward {

/// Subset enumeration bound for every closed form except p_actual.
inline constexpr std::size_t kMaxClosedFormRelays = 20;

struct SuccessEstimate {
  InfoSetting setting = InfoSetting::Full;
  std::size_t relay_index_n = 1;  ///< 1-based order; 0 when unknown (NoInformation)
  double s_n = 0.0;
  double value = 0.0;
};

/// (e^{-mu s} - e^{-lambda s}) / ((lambda - mu)(1 - e^{-lambda s})), with the
/// s e^{-lambda s} / (1 - e^{-lambda s}) branch when |lambda - mu| is below
/// 1e-9 max(lambda, mu). lambda * psi is the probability that a relay which
/// met the source at an unknown time before s still holds an undelivered copy.
double psi(double lambda, double mu, double s);

/// Delivery race seen from one relay (`self`) from the current instant on.
///
/// Every other relay is either a holder (already carrying a copy, delivering
/// at rate mu) or still to meet the source (arriving at rate lambda, then
/// delivering). By memorylessness the win probability depends only on which
/// relays hold a copy, so it is tabulated once over all subsets of the other
/// relays:
///
///   W(B) = (mu_self + sum_{j not in B} lambda_j W(B + j))
///          / (mu_self + sum_{j in B} mu_j + sum_{j not in B} lambda_j)
class RaceTable {
 public:
  RaceTable(const RelaySet& relays, std::size_t self);

  std::size_t self() const noexcept { return self_; }
  /// Other relays in index order; bit k of a mask refers to others()[k].
  std::span<const std::size_t> others() const noexcept { return others_; }
  /// Throws Errc::UnknownRelay for self or an index outside the set.
  std::uint32_t mask_of(std::span<const std::size_t> relays) const;

  double win(std::uint32_t holders) const { return table_[holders]; }

 private:
  std::size_t self_;
  std::vector<std::size_t> others_;
  std::vector<double> table_;
};

enum class AnonVariant { Normalized, AsWritten };

/// Full information: `log` holds at least the first n encounters.
double p_full(const EncounterLog& log, const RelaySet& relays, std::size_t n);

/// Partial information with identities. `self` is the quoting relay.
double p_partial_id(double s_n, std::size_t n, std::span<const std::size_t> prev, std::size_t self,
                    const RelaySet& relays);

/// Partial information without identities. Normalized conditions on exactly
/// n - 1 prior holders; AsWritten sums the joint weights without dividing.
double p_partial_anon(double s_n, std::size_t n, std::size_t self, const RelaySet& relays,
                      AnonVariant variant = AnonVariant::Normalized);

/// No information: only the relay's own meeting time s is known.
double p_none(double s, std::size_t self, const RelaySet& relays);

/// Win probability of the n-th relay given every meeting time.
double p_actual(const EncounterLog& log, const RelaySet& relays, std::size_t n);

/// Precomputed race tables for every relay of a fixed set, so repeated
/// quotes cost one subset sweep at most. Immutable after construction.
class SuccessModel {
 public:
  explicit SuccessModel(const RelaySet& relays, AnonVariant variant = AnonVariant::Normalized);

  const RelaySet& relays() const noexcept { return relays_; }
  const RaceTable& table(std::size_t relay) const { return tables_.at(relay); }

  SuccessEstimate estimate(const Knowledge& k) const;

  double full(std::size_t self, double s_n, std::span<const std::size_t> prev,
              std::span<const double> prev_times) const;
  double partial_id(std::size_t self, double s_n, std::span<const std::size_t> prev) const;
  double partial_anon(std::size_t self, double s_n, std::size_t n) const;
  double none(std::size_t self, double s) const;

 private:
  RelaySet relays_;
  AnonVariant variant_;
  std::vector<RaceTable> tables_;
};

/// One-shot dispatch on the knowledge's setting.
SuccessEstimate success_probability(const Knowledge& k, const RelaySet& relays,
                                    AnonVariant variant = AnonVariant::Normalized);

}  // namespace dtnreward
