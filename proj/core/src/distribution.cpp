#include "dtnreward/distribution.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "dtnreward/error.hpp"

namespace dtnreward {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(Errc::InvalidDistribution, fmt::format("{} must be finite and > 0, got {}", what, v));
  }
}

// E|X| for X ~ N(m, s^2).
double folded_mean(double m, double s) {
  return s * std::sqrt(2.0 / std::numbers::pi) * std::exp(-m * m / (2.0 * s * s)) +
         m * std::erf(m / (s * std::numbers::sqrt2));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

InterContactDistribution::InterContactDistribution(Exponential p) : params_(p) {
  require_positive(p.rate, "exponential rate");
}

InterContactDistribution::InterContactDistribution(Hyperexponential p) {
  if (p.probs.empty() || p.probs.size() != p.rates.size()) {
    throw Error(Errc::InvalidDistribution, "hyperexponential needs matching, non-empty probs and rates");
  }
  for (double q : p.probs) require_positive(q, "hyperexponential phase probability");
  for (double r : p.rates) require_positive(r, "hyperexponential phase rate");
  const double total = std::accumulate(p.probs.begin(), p.probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::InvalidDistribution, fmt::format("phase probabilities sum to {}, not 1", total));
  }
  params_ = std::move(p);
}

InterContactDistribution::InterContactDistribution(Weibull p) : params_(p) {
  require_positive(p.shape, "weibull shape");
  require_positive(p.scale, "weibull scale");
}

InterContactDistribution::InterContactDistribution(FoldedNormal p) : params_(p) {
  require_positive(p.location, "folded normal location");
  require_positive(p.scale, "folded normal scale");
}

std::string_view InterContactDistribution::kind() const noexcept {
  switch (params_.index()) {
    case 0: return "exponential";
    case 1: return "hyperexponential";
    case 2: return "weibull";
    default: return "folded_normal";
  }
}

double InterContactDistribution::mean() const {
  return std::visit(
      overloaded{
          [](const Exponential& e) { return 1.0 / e.rate; },
          [](const Hyperexponential& h) {
            double m = 0.0;
            for (std::size_t i = 0; i < h.probs.size(); ++i) m += h.probs[i] / h.rates[i];
            return m;
          },
          [](const Weibull& w) { return w.scale * std::tgamma(1.0 + 1.0 / w.shape); },
          [](const FoldedNormal& f) { return folded_mean(f.location, f.scale); },
      },
      params_);
}

double InterContactDistribution::second_moment() const {
  return std::visit(
      overloaded{
          [](const Exponential& e) { return 2.0 / (e.rate * e.rate); },
          [](const Hyperexponential& h) {
            double m = 0.0;
            for (std::size_t i = 0; i < h.probs.size(); ++i) m += 2.0 * h.probs[i] / (h.rates[i] * h.rates[i]);
            return m;
          },
          [](const Weibull& w) { return w.scale * w.scale * std::tgamma(1.0 + 2.0 / w.shape); },
          [](const FoldedNormal& f) { return f.location * f.location + f.scale * f.scale; },
      },
      params_);
}

double InterContactDistribution::sample(Rng& rng) const {
  return std::visit(
      overloaded{
          [&](const Exponential& e) { return rng.exponential(e.rate); },
          [&](const Hyperexponential& h) {
            double u = rng.uniform();
            std::size_t phase = 0;
            while (phase + 1 < h.probs.size() && u >= h.probs[phase]) u -= h.probs[phase++];
            return rng.exponential(h.rates[phase]);
          },
          [&](const Weibull& w) { return w.scale * std::pow(-std::log(rng.uniform_pos()), 1.0 / w.shape); },
          [&](const FoldedNormal& f) {
            // A draw of exactly zero has probability zero but is representable.
            double x = 0.0;
            while (x == 0.0) x = std::abs(f.location + f.scale * rng.standard_normal());
            return x;
          },
      },
      params_);
}

InterContactDistribution InterContactDistribution::scaled(double factor) const {
  require_positive(factor, "scale factor");
  return std::visit(
      overloaded{
          [&](const Exponential& e) { return InterContactDistribution(Exponential{e.rate / factor}); },
          [&](const Hyperexponential& h) {
            Hyperexponential out = h;
            for (double& r : out.rates) r /= factor;
            return InterContactDistribution(std::move(out));
          },
          [&](const Weibull& w) { return InterContactDistribution(Weibull{w.shape, w.scale * factor}); },
          [&](const FoldedNormal& f) {
            return InterContactDistribution(FoldedNormal{f.location * factor, f.scale * factor});
          },
      },
      params_);
}

double mean_residual(const InterContactDistribution& dist) {
  if (const auto* e = std::get_if<Exponential>(&dist.params())) return 1.0 / e->rate;
  const double m1 = dist.mean();
  const double m2 = dist.second_moment();
  if (!std::isfinite(m2) || !std::isfinite(m1) || !(m1 > 0.0)) {
    throw Error(Errc::NonFiniteMoment, fmt::format("{} has no finite second moment", dist.kind()));
  }
  return m2 / (2.0 * m1);
}

double folded_normal_location_for_mean(double target_mean, double scale_ratio) {
  require_positive(target_mean, "target mean");
  require_positive(scale_ratio, "scale ratio");
  return target_mean / folded_mean(1.0, scale_ratio);
}

}  // namespace dtnreward
