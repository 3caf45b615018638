#include "dtnreward/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "dtnreward/error.hpp"

namespace dtnreward {
namespace {

struct Span {
  double start;
  double end;
};

std::vector<Span> merge(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.start < b.start; });
  std::vector<Span> out;
  for (const Span& s : spans) {
    if (!out.empty() && s.start <= out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

double median_gap(const std::vector<const PositionRecord*>& fixes) {
  std::vector<double> gaps;
  for (std::size_t i = 1; i < fixes.size(); ++i) {
    const double dt = fixes[i]->time - fixes[i - 1]->time;
    if (dt > 0.0) gaps.push_back(dt);
  }
  if (gaps.empty()) return 0.0;
  auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
  std::nth_element(gaps.begin(), mid, gaps.end());
  return *mid;
}

// Part of the segment p0 -> p1 (tau in [0, 1]) inside the disk, if any.
std::optional<std::pair<double, double>> disk_overlap(const PositionRecord& p0, const PositionRecord& p1,
                                                      const Anchor& a, double r) {
  const double dx = p1.x - p0.x;
  const double dy = p1.y - p0.y;
  const double wx = p0.x - a.x;
  const double wy = p0.y - a.y;
  const double qa = dx * dx + dy * dy;
  const double qb = 2.0 * (dx * wx + dy * wy);
  const double qc = wx * wx + wy * wy - r * r;
  if (qa == 0.0) {
    if (qc <= 0.0) return std::pair{0.0, 1.0};
    return std::nullopt;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double lo = std::max(0.0, (-qb - root) / (2.0 * qa));
  const double hi = std::min(1.0, (-qb + root) / (2.0 * qa));
  if (!(lo < hi)) return std::nullopt;
  return std::pair{lo, hi};
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t comma = line.find(',', begin);
    std::string field = line.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string{} : field.substr(first, last - first + 1));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return out;
}

double parse_number(const std::string& field, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw Error(Errc::ParseError, fmt::format("line {}: '{}' is not a number", line, field));
  }
  return v;
}

template <class Row>
void for_each_row(std::istream& in, std::size_t fields, Row row) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto parts = split_line(line);
    if (parts.size() != fields) {
      throw Error(Errc::ParseError, fmt::format("line {}: expected {} fields, got {}", number, fields, parts.size()));
    }
    row(parts, number);
  }
}

}  // namespace

std::vector<ContactInterval> detect_contacts(std::span<const PositionRecord> positions,
                                             std::span<const Anchor> anchors, const DetectOptions& opts) {
  if (positions.empty()) throw Error(Errc::EmptyTrace, "no position records");
  if (!(opts.range_m > 0.0)) throw Error(Errc::DomainError, fmt::format("range {} must be > 0", opts.range_m));
  if (opts.fix_period && !(*opts.fix_period > 0.0)) throw Error(Errc::DomainError, "fix period must be > 0");

  std::map<std::string, std::vector<const PositionRecord*>> by_node;
  for (const auto& p : positions) {
    auto& fixes = by_node[p.node];
    if (!fixes.empty() && p.time < fixes.back()->time) {
      throw Error(Errc::UnsortedInput, fmt::format("node '{}': time {} after {}", p.node, p.time, fixes.back()->time));
    }
    fixes.push_back(&p);
  }

  std::vector<ContactInterval> out;
  for (const auto& [node, fixes] : by_node) {
    const double period = opts.fix_period ? *opts.fix_period : median_gap(fixes);
    const double max_gap = opts.gap_factor * period;
    for (const Anchor& a : anchors) {
      std::vector<Span> spans;
      for (std::size_t i = 1; i < fixes.size(); ++i) {
        const PositionRecord& p0 = *fixes[i - 1];
        const PositionRecord& p1 = *fixes[i];
        const double dt = p1.time - p0.time;
        if (!(dt > 0.0) || dt > max_gap) continue;
        if (auto hit = disk_overlap(p0, p1, a, opts.range_m)) {
          spans.push_back({p0.time + hit->first * dt, p0.time + hit->second * dt});
        }
      }
      for (const Span& s : merge(std::move(spans))) {
        if (s.end > s.start) out.push_back({node, a.id, s.start, s.end});
      }
    }
  }
  return out;
}

std::vector<double> extract_intercontacts(std::span<const ContactInterval> contacts, const std::string& node,
                                          const std::string& anchor) {
  std::vector<Span> spans;
  for (const auto& c : contacts) {
    if ((c.node_a == node && c.node_b == anchor) || (c.node_a == anchor && c.node_b == node)) {
      spans.push_back({c.t_start, c.t_end});
    }
  }
  spans = merge(std::move(spans));
  if (spans.size() < 2) {
    throw Error(Errc::InsufficientData,
                fmt::format("'{}' met '{}' {} time(s); need at least 2", node, anchor, spans.size()));
  }
  std::vector<double> gaps;
  gaps.reserve(spans.size() - 1);
  for (std::size_t i = 1; i < spans.size(); ++i) gaps.push_back(spans[i].start - spans[i - 1].end);
  return gaps;
}

double fit_rate(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw Error(Errc::InsufficientData, fmt::format("{} sample(s); need at least 2", samples.size()));
  }
  double sum = 0.0;
  for (double s : samples) sum += s;
  if (!(sum > 0.0)) throw Error(Errc::InsufficientData, "samples have zero mean");
  return static_cast<double>(samples.size()) / sum;
}

Histogram histogram_summary(std::span<const double> samples, std::size_t bins) {
  if (samples.empty() || bins == 0) throw Error(Errc::InsufficientData, "histogram needs samples and bins");
  const double top = *std::max_element(samples.begin(), samples.end());
  const double width = top > 0.0 ? top / static_cast<double>(bins) : 1.0 / static_cast<double>(bins);
  Histogram h;
  h.density.assign(bins, 0.0);
  for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(width * static_cast<double>(b));
  for (double s : samples) {
    auto b = static_cast<std::size_t>(s / width);
    h.density[std::min(b, bins - 1)] += 1.0;
  }
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double rate = sum > 0.0 ? n / sum : 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    h.density[b] /= n * width;
    const double center = width * (static_cast<double>(b) + 0.5);
    h.exp_density.push_back(rate * std::exp(-rate * center));
  }
  return h;
}

FittedRates fit_rates(const std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>& samples) {
  FittedRates fit;
  for (const auto& [id, pair] : samples) {
    RelayFit r;
    r.id = id;
    try {
      r.lambda_hat = fit_rate(pair.first);
      r.mu_hat = fit_rate(pair.second);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("relay '{}': {}", id, e.what()));
    }
    r.source_samples = pair.first;
    r.dest_samples = pair.second;
    r.source_hist = histogram_summary(r.source_samples);
    r.dest_hist = histogram_summary(r.dest_samples);
    fit.relays.push_back(std::move(r));
  }
  return fit;
}

FittedRates fit_contacts(std::span<const ContactInterval> contacts) {
  const std::set<std::string> anchors{kSourceAnchor, kDestinationAnchor};
  std::set<std::string> nodes;
  for (const auto& c : contacts) {
    if (!anchors.count(c.node_a)) nodes.insert(c.node_a);
    if (!anchors.count(c.node_b)) nodes.insert(c.node_b);
  }
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> samples;
  for (const auto& node : nodes) {
    std::vector<double> src;
    std::vector<double> dst;
    try {
      src = extract_intercontacts(contacts, node, kSourceAnchor);
      dst = extract_intercontacts(contacts, node, kDestinationAnchor);
    } catch (const Error& e) {
      if (e.code() == Errc::InsufficientData) continue;
      throw;
    }
    if (src.size() < 2 || dst.size() < 2) continue;
    for (double& g : src) g /= 3600.0;
    for (double& g : dst) g /= 3600.0;
    samples.emplace(node, std::pair{std::move(src), std::move(dst)});
  }
  if (samples.empty()) throw Error(Errc::InsufficientData, "no node met both anchors often enough to fit");
  return fit_rates(samples);
}

nlohmann::json fitted_rates_to_relays_json(const FittedRates& fit) {
  auto out = nlohmann::json::array();
  for (const auto& r : fit.relays) {
    out.push_back({{"id", r.id},
                   {"lambda", r.lambda_hat},
                   {"mu", r.mu_hat},
                   {"source_dist", {{"kind", "exponential"}, {"rate", r.lambda_hat}}},
                   {"dest_dist", {{"kind", "exponential"}, {"rate", r.mu_hat}}}});
  }
  return out;
}

nlohmann::json fitted_rates_to_json(const FittedRates& fit) {
  auto hist = [](const Histogram& h) {
    return nlohmann::json{{"edges", h.edges}, {"density", h.density}, {"exp_density", h.exp_density}};
  };
  auto rows = nlohmann::json::array();
  for (const auto& r : fit.relays) {
    rows.push_back({{"id", r.id},
                    {"source_samples", r.source_samples.size()},
                    {"dest_samples", r.dest_samples.size()},
                    {"source_histogram", hist(r.source_hist)},
                    {"dest_histogram", hist(r.dest_hist)}});
  }
  return {{"relays", fitted_rates_to_relays_json(fit)}, {"summary", rows}};
}

std::vector<PositionRecord> read_positions_csv(std::istream& in) {
  std::vector<PositionRecord> out;
  for_each_row(in, 4, [&](const std::vector<std::string>& f, std::size_t line) {
    out.push_back({parse_number(f[0], line), f[1], parse_number(f[2], line), parse_number(f[3], line)});
  });
  return out;
}

std::vector<ContactInterval> read_contacts_csv(std::istream& in) {
  std::vector<ContactInterval> out;
  for_each_row(in, 4, [&](const std::vector<std::string>& f, std::size_t line) {
    ContactInterval c{f[2], f[3], parse_number(f[0], line), parse_number(f[1], line)};
    if (!(c.t_start < c.t_end)) {
      throw Error(Errc::ParseError, fmt::format("line {}: contact ends before it starts", line));
    }
    out.push_back(std::move(c));
  });
  return out;
}

void write_positions_csv(std::ostream& out, std::span<const PositionRecord> positions) {
  for (const auto& p : positions) out << fmt::format("{},{},{},{}\n", p.time, p.node, p.x, p.y);
}

std::pair<double, double> project_equirectangular(double lat, double lon, double lat0, double lon0) {
  constexpr double kEarthRadius = 6371008.8;
  constexpr double deg = std::numbers::pi / 180.0;
  const double x = kEarthRadius * (lon - lon0) * deg * std::cos(lat0 * deg);
  const double y = kEarthRadius * (lat - lat0) * deg;
  return {x, y};
}

std::vector<PositionRecord> synthesize_pass_trace(const PassTraceParams& params, Rng& rng) {
  struct Pass {
    double center_time;  // seconds
    const Anchor* anchor;
  };
  std::vector<Pass> passes;
  for (const auto& [rate, anchor] : {std::pair{params.source_rate_per_hour, &params.source},
                                     std::pair{params.dest_rate_per_hour, &params.destination}}) {
    for (double t = rng.exponential(rate); t <= params.horizon_hours; t += rng.exponential(rate)) {
      passes.push_back({t * 3600.0, anchor});
    }
  }
  std::sort(passes.begin(), passes.end(), [](const Pass& a, const Pass& b) { return a.center_time < b.center_time; });

  // A pass cannot start before the previous one is over and far enough in
  // the past that the two are never interpolated across.
  const double half = params.approach_m / params.speed_mps;
  const double separation = 2.0 * half + 20.0 * params.fix_period_s;
  std::vector<PositionRecord> out;
  double last_center = -1e300;
  for (auto& p : passes) {
    p.center_time = std::max(p.center_time, last_center + separation);
    last_center = p.center_time;
    const double start = p.center_time - half;
    const auto fixes = static_cast<std::size_t>(std::ceil(2.0 * half / params.fix_period_s));
    for (std::size_t j = 0; j <= fixes; ++j) {
      const double dt = params.fix_period_s * static_cast<double>(j);
      out.push_back({start + dt, params.node, p.anchor->x - params.approach_m + params.speed_mps * dt, p.anchor->y});
    }
  }
  return out;
}

}  // namespace dtnreward
