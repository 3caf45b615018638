#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtnreward/model.hpp"

namespace dtnreward {

// Relay documents are JSON arrays of
//   {"id": "...", "lambda": 0.65, "mu": 0.79,
//    "source_dist": {"kind": "exponential", "rate": 0.65},
//    "dest_dist":   {"kind": "weibull", "shape": 1.5, "scale": 1.3}}
// Distribution kinds and their fields:
//   exponential {rate}, hyperexponential {probs, rates},
//   weibull {shape, scale}, folded_normal {location, scale}.
// A missing dist defaults to an exponential with the given rate; a missing
// rate is derived from the dist mean.

nlohmann::json distribution_to_json(const InterContactDistribution& dist);
InterContactDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json relays_to_json(const RelaySet& relays);
std::vector<RelayProfile> profiles_from_json(const nlohmann::json& j);

/// Parses and validates. Throws Errc::ParseError on malformed documents.
RelaySet relays_from_json(const nlohmann::json& j);
RelaySet load_relays(const std::filesystem::path& path);

}  // namespace dtnreward
