#include "dtnreward/relay_io.hpp"

#include <fstream>

#include <fmt/format.h>

#include "dtnreward/error.hpp"

namespace dtnreward {

using nlohmann::json;

json distribution_to_json(const InterContactDistribution& dist) {
  json j{{"kind", dist.kind()}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          j["rate"] = p.rate;
        } else if constexpr (std::is_same_v<T, Hyperexponential>) {
          j["probs"] = p.probs;
          j["rates"] = p.rates;
        } else if constexpr (std::is_same_v<T, Weibull>) {
          j["shape"] = p.shape;
          j["scale"] = p.scale;
        } else {
          j["location"] = p.location;
          j["scale"] = p.scale;
        }
      },
      dist.params());
  return j;
}

InterContactDistribution distribution_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exponential") return Exponential{j.at("rate").get<double>()};
    if (kind == "hyperexponential") {
      return Hyperexponential{j.at("probs").get<std::vector<double>>(), j.at("rates").get<std::vector<double>>()};
    }
    if (kind == "weibull") return Weibull{j.at("shape").get<double>(), j.at("scale").get<double>()};
    if (kind == "folded_normal") return FoldedNormal{j.at("location").get<double>(), j.at("scale").get<double>()};
    throw Error(Errc::ParseError, fmt::format("unknown distribution kind '{}'", kind));
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

json relays_to_json(const RelaySet& relays) {
  json out = json::array();
  for (const auto& r : relays) {
    out.push_back({{"id", r.id},
                   {"lambda", r.lambda},
                   {"mu", r.mu},
                   {"source_dist", distribution_to_json(r.source_dist)},
                   {"dest_dist", distribution_to_json(r.dest_dist)}});
  }
  return out;
}

std::vector<RelayProfile> profiles_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "relay document must be a JSON array");
  std::vector<RelayProfile> out;
  try {
    for (const auto& item : j) {
      const std::string id = item.at("id").is_string() ? item.at("id").get<std::string>() : item.at("id").dump();
      const bool has_src = item.contains("source_dist");
      const bool has_dst = item.contains("dest_dist");
      if (!has_src && !item.contains("lambda")) {
        throw Error(Errc::ParseError, fmt::format("relay '{}' needs lambda or source_dist", id));
      }
      if (!has_dst && !item.contains("mu")) {
        throw Error(Errc::ParseError, fmt::format("relay '{}' needs mu or dest_dist", id));
      }
      const double lambda_in = item.value("lambda", 0.0);
      const double mu_in = item.value("mu", 0.0);
      if ((!has_src && !(lambda_in > 0.0)) || (!has_dst && !(mu_in > 0.0))) {
        throw Error(Errc::NonPositiveRate, fmt::format("relay '{}': lambda={} mu={}", id, lambda_in, mu_in));
      }
      InterContactDistribution src = has_src ? distribution_from_json(item["source_dist"])
                                             : InterContactDistribution(Exponential{lambda_in});
      InterContactDistribution dst = has_dst ? distribution_from_json(item["dest_dist"])
                                             : InterContactDistribution(Exponential{mu_in});
      const double lambda = item.contains("lambda") ? lambda_in : 1.0 / src.mean();
      const double mu = item.contains("mu") ? mu_in : 1.0 / dst.mean();
      out.push_back(RelayProfile{id, lambda, mu, std::move(src), std::move(dst)});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return out;
}

RelaySet relays_from_json(const json& j) { return validate_profiles(profiles_from_json(j)); }

RelaySet load_relays(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, fmt::format("cannot open '{}'", path.string()));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, fmt::format("{}: {}", path.string(), e.what()));
  }
  return relays_from_json(j);
}

}  // namespace dtnreward
