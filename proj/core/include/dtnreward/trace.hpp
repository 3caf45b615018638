#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtnreward/rng.hpp"

namespace dtnreward {

/// Anchor ids used for the fixed endpoints.
inline constexpr const char* kSourceAnchor = "source";
inline constexpr const char* kDestinationAnchor = "destination";

struct PositionRecord {
  double time = 0.0;  ///< seconds
  std::string node;
  double x = 0.0;  ///< meters
  double y = 0.0;
};

struct Anchor {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

struct ContactInterval {
  std::string node_a;
  std::string node_b;
  double t_start = 0.0;
  double t_end = 0.0;
};

struct DetectOptions {
  double range_m = 50.0;
  /// Expected time between fixes. When absent, the median gap of each node.
  std::optional<double> fix_period;
  /// Consecutive fixes further apart than this many periods are not joined.
  double gap_factor = 10.0;
};

/// Maximal intervals during which a node, moving linearly between fixes, is
/// within range of an anchor. node_a is the node, node_b the anchor id.
/// Output is sorted by (node_a, node_b, t_start); zero-length intervals are
/// dropped. Throws Errc::EmptyTrace, Errc::UnsortedInput, Errc::DomainError.
std::vector<ContactInterval> detect_contacts(std::span<const PositionRecord> positions,
                                             std::span<const Anchor> anchors, const DetectOptions& opts = {});

/// Start of each contact minus end of the previous one, for contacts between
/// `node` and `anchor` (either order). Overlapping or touching contacts are
/// merged first. Throws Errc::InsufficientData when fewer than two remain.
std::vector<double> extract_intercontacts(std::span<const ContactInterval> contacts, const std::string& node,
                                          const std::string& anchor);

struct Histogram {
  std::vector<double> edges;        ///< bins + 1 edges
  std::vector<double> density;      ///< empirical density per bin
  std::vector<double> exp_density;  ///< fitted exponential density at bin centers
};

Histogram histogram_summary(std::span<const double> samples, std::size_t bins = 20);

struct RelayFit {
  std::string id;
  double lambda_hat = 0.0;  ///< 1/hour
  double mu_hat = 0.0;
  std::vector<double> source_samples;  ///< hours
  std::vector<double> dest_samples;
  Histogram source_hist;
  Histogram dest_hist;
};

struct FittedRates {
  std::vector<RelayFit> relays;
};

/// 1 / sample mean. Throws Errc::InsufficientData below two samples.
double fit_rate(std::span<const double> samples);

/// Samples in hours, keyed by relay id: (source gaps, destination gaps).
FittedRates fit_rates(const std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>& samples);

/// Relay document (see relay_io.hpp) with exponential laws at the fitted rates.
nlohmann::json fitted_rates_to_relays_json(const FittedRates& fit);
/// Relay document plus sample counts and histogram summaries.
nlohmann::json fitted_rates_to_json(const FittedRates& fit);

/// Fits every node seen in `contacts` that met both anchors at least twice.
/// Gaps are converted from seconds to hours.
FittedRates fit_contacts(std::span<const ContactInterval> contacts);

/// Headerless `time_s,node_id,x_m,y_m`.
std::vector<PositionRecord> read_positions_csv(std::istream& in);
/// Headerless `t_start_s,t_end_s,node_a,node_b`.
std::vector<ContactInterval> read_contacts_csv(std::istream& in);
void write_positions_csv(std::ostream& out, std::span<const PositionRecord> positions);

/// Equirectangular projection around (lat0, lon0), in meters. Distortion is
/// below 0.1% over a few tens of kilometers.
std::pair<double, double> project_equirectangular(double lat, double lon, double lat0, double lon0);

/// A node that sits far from both anchors and, at each contact instant of two
/// renewal streams, crosses the anchor's disk on a straight line through its
/// center. Used to validate the pipeline against known contact processes.
struct PassTraceParams {
  std::string node = "n1";
  Anchor source{kSourceAnchor, 0.0, 0.0};
  Anchor destination{kDestinationAnchor, 5000.0, 0.0};
  double source_rate_per_hour = 0.1;
  double dest_rate_per_hour = 0.1;
  double horizon_hours = 1e4;
  double speed_mps = 10.0;
  double approach_m = 300.0;  ///< path starts and ends this far from the center
  double fix_period_s = 7.0;
};

std::vector<PositionRecord> synthesize_pass_trace(const PassTraceParams& params, Rng& rng);

}  // namespace dtnreward
