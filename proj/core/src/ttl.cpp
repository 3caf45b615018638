#include "dtnreward/ttl.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dtnreward/error.hpp"

namespace dtnreward {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::DomainError, fmt::format("epsilon must be finite and > 0, got {}", epsilon));
  }
}

}  // namespace

double storage_gain(double epsilon) {
  check_epsilon(epsilon);
  return epsilon / (1.0 + epsilon);
}

double failure_prob(double epsilon, std::size_t n) {
  if (n < 1) throw Error(Errc::DomainError, "failure probability needs at least one relay");
  return std::pow(storage_gain(epsilon), static_cast<double>(n));
}

double epsilon_for_target(double d, std::size_t n) {
  if (!(d > 0.0 && d < 1.0)) throw Error(Errc::DomainError, fmt::format("target {} not in (0, 1)", d));
  if (n < 1) throw Error(Errc::DomainError, "epsilon needs at least one relay");
  const double root = std::pow(d, 1.0 / static_cast<double>(n));
  return root / (1.0 - root);
}

std::vector<std::pair<double, double>> tradeoff_curve(std::size_t n, std::span<const double> grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double g : grid) {
    if (!(g >= 0.0 && g < 1.0)) throw Error(Errc::DomainError, fmt::format("gain {} not in [0, 1)", g));
    out.emplace_back(g, std::pow(g, static_cast<double>(n)));
  }
  return out;
}

double mean_holding_time(double mu, double epsilon) {
  check_epsilon(epsilon);
  if (!(mu > 0.0)) throw Error(Errc::NonPositiveRate, fmt::format("mu = {}", mu));
  return 1.0 / (mu * (1.0 + epsilon));
}

TTLReport ttl_report(double epsilon, const RelaySet& relays) {
  TTLReport r;
  r.epsilon = epsilon;
  r.n = relays.size();
  r.gain = storage_gain(epsilon);
  r.failure_prob = relays.empty() ? 1.0 : failure_prob(epsilon, relays.size());
  for (const auto& p : relays) r.rho.push_back(r.gain * mean_residual(p.dest_dist));
  return r;
}

}  // namespace dtnreward
