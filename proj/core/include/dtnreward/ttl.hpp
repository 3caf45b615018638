#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dtnreward/model.hpp"

namespace dtnreward {

// Each copy carries a drop timer at rate eps * mu_i. None of the quantities
// below depends on the rates themselves, except rho which scales E[T_d].

struct TTLReport {
  double epsilon = 0.0;
  std::size_t n = 0;
  double failure_prob = 0.0;  ///< D = (eps / (1 + eps))^N
  double gain = 0.0;          ///< G = eps / (1 + eps)
  std::vector<double> rho;    ///< G * E[T_d^i], one per relay
};

/// (eps / (1 + eps))^N. Throws Errc::DomainError unless eps > 0, N >= 1.
double failure_prob(double epsilon, std::size_t n);
/// eps / (1 + eps)
double storage_gain(double epsilon);
/// D^{1/N} / (1 - D^{1/N}). Throws Errc::DomainError unless 0 < D < 1.
double epsilon_for_target(double d, std::size_t n);
/// (G, G^N) per grid point. Throws Errc::DomainError for G outside [0, 1).
std::vector<std::pair<double, double>> tradeoff_curve(std::size_t n, std::span<const double> grid);
/// 1 / (mu (1 + eps)): mean time a copy is held before delivery or drop.
double mean_holding_time(double mu, double epsilon);

TTLReport ttl_report(double epsilon, const RelaySet& relays);

}  // namespace dtnreward
