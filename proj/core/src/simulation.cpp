#include "dtnreward/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "dtnreward/error.hpp"
#include "dtnreward/mobility.hpp"
#include "dtnreward/relay_io.hpp"
#include "dtnreward/reward.hpp"
#include "dtnreward/rng.hpp"
#include "dtnreward/ttl.hpp"
#include "parallel.hpp"

namespace dtnreward {
namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoTag = static_cast<std::size_t>(-1);

struct BlockResult {
  std::vector<MessageRecord> records;
  std::vector<RelayLedger> ledgers;
  std::vector<double> tag_reward;  // per message, only when tagging
  std::vector<double> tag_cost;
};

void validate(const ExperimentConfig& c) {
  if (c.messages < 1) throw Error(Errc::ConfigError, "messages must be >= 1");
  if (c.block_size < 1) throw Error(Errc::ConfigError, "block_size must be >= 1");
  if (!(c.slot_hours > 0.0)) throw Error(Errc::ConfigError, "slot_hours must be > 0");
  if (c.ttl_epsilon) {
    if (!(*c.ttl_epsilon > 0.0) || !std::isfinite(*c.ttl_epsilon)) {
      throw Error(Errc::ConfigError, "ttl_epsilon must be finite and > 0");
    }
    if (!c.relays.all_exponential()) {
      throw Error(Errc::ConfigError, "TTL runs require exponential inter-contact laws");
    }
  }
}

class Simulator {
 public:
  Simulator(const ExperimentConfig& c, std::size_t tag)
      : cfg_(c), model_(c.relays, c.anon_variant), tag_(tag) {
    for (const auto& r : c.relays) quoted_base_.push_back(quoted_base_cost(c.costs, r));
  }

  BlockResult run_block(std::size_t block) const {
    const std::size_t first = block * cfg_.block_size;
    const std::size_t count = std::min(cfg_.block_size, cfg_.messages - first);
    const std::size_t n = cfg_.relays.size();
    BlockResult out;
    out.ledgers.resize(n);
    out.records.reserve(count);
    Rng rng(split_seed(cfg_.seed, block));
    EncounterSynthesizer synth(cfg_.relays);
    for (std::size_t m = 0; m < count; ++m) {
      double tag_reward = 0.0;
      double tag_cost = 0.0;
      out.records.push_back(message(synth.next(rng), rng, out.ledgers, tag_reward, tag_cost));
      if (tag_ != kNoTag) {
        out.tag_reward.push_back(tag_reward);
        out.tag_cost.push_back(tag_cost);
      }
    }
    return out;
  }

 private:
  MessageRecord message(const Encounter& enc, Rng& rng, std::vector<RelayLedger>& ledgers, double& tag_reward,
                        double& tag_cost) const {
    const CostParams& costs = cfg_.costs;
    MessageRecord rec;
    double best = kNever;
    double best_quote = 0.0;
    for (std::size_t k = 0; k < enc.log.size(); ++k) {
      const std::size_t r = enc.log.relay(k);
      const double s = enc.log.time(k);
      if (cfg_.late_contacts == LateContacts::Truncate && s >= best) break;
      const SuccessEstimate est = model_.estimate(Knowledge::from_log(cfg_.setting, enc.log, k + 1));
      RelayLedger& led = ledgers[r];
      if (!(est.value > 0.0)) {
        ++led.skipped;
        ++rec.skipped;
        continue;
      }
      // The quote is frozen here; nothing later revises it.
      const double quote = min_reward(costs, quoted_base_[r], std::min(est.value, 1.0));
      ++led.accepted;
      ++rec.accepted;
      const double delay = enc.dest_delay[r];
      double holding = delay;
      bool delivers = true;
      if (cfg_.ttl_epsilon) {
        const double timer = rng.exponential(*cfg_.ttl_epsilon * cfg_.relays.mu(r));
        if (timer <= delay) {
          delivers = false;
          holding = timer;
          ++led.drops;
        }
      }
      const double cost = costs.c_r + costs.c_s * holding;
      led.costs += cost;
      led.holding_time += holding;
      if (r == tag_) tag_cost += cost;
      if (delivers && s + delay < best) {
        best = s + delay;
        best_quote = quote;
        rec.winner = r;
      }
    }
    if (rec.winner) {
      RelayLedger& led = ledgers[*rec.winner];
      ++led.wins;
      led.rewards += best_quote;
      led.costs += costs.c_d;
      rec.payment = best_quote;
      rec.delivery_delay = best;
      if (*rec.winner == tag_) {
        tag_reward += best_quote;
        tag_cost += costs.c_d;
      }
    }
    return rec;
  }

  const ExperimentConfig& cfg_;
  SuccessModel model_;
  std::vector<RelayBaseCost> quoted_base_;
  std::size_t tag_;
};

std::vector<BlockResult> simulate(const ExperimentConfig& cfg, std::size_t tag) {
  validate(cfg);
  const Simulator sim(cfg, tag);
  const std::size_t blocks = (cfg.messages + cfg.block_size - 1) / cfg.block_size;
  std::vector<BlockResult> results(blocks);
  detail::for_each_block(blocks, [&](std::size_t b) { results[b] = sim.run_block(b); });
  return results;
}

SimulationReport assemble(const ExperimentConfig& cfg, std::vector<BlockResult> blocks) {
  SimulationReport rep;
  rep.setting = cfg.setting;
  rep.messages = cfg.messages;
  rep.seed = cfg.seed;
  rep.slot_hours = cfg.slot_hours;
  rep.late_contacts = cfg.late_contacts;
  rep.theoretical = theoretical_expected_payment(cfg.costs, cfg.relays);
  rep.theoretical_quoted = theoretical_quoted_payment(cfg.costs, cfg.relays);
  rep.distribution_mismatch = !cfg.relays.all_exponential();
  const std::size_t n = cfg.relays.size();
  rep.ledgers.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.ledgers[i].id = cfg.relays[i].id;

  rep.records.reserve(cfg.messages);
  for (auto& b : blocks) {
    for (std::size_t i = 0; i < n; ++i) {
      RelayLedger& to = rep.ledgers[i];
      const RelayLedger& from = b.ledgers[i];
      to.rewards += from.rewards;
      to.costs += from.costs;
      to.accepted += from.accepted;
      to.wins += from.wins;
      to.skipped += from.skipped;
      to.drops += from.drops;
      to.holding_time += from.holding_time;
    }
    for (auto& r : b.records) rep.records.push_back(std::move(r));
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  rep.running_average.reserve(rep.records.size());
  for (std::size_t t = 0; t < rep.records.size(); ++t) {
    const MessageRecord& r = rep.records[t];
    if (!r.winner) ++rep.failures;
    sum += r.payment;
    sum_sq += r.payment * r.payment;
    rep.running_average.push_back(sum / static_cast<double>(t + 1));
  }
  const double count = static_cast<double>(rep.records.size());
  rep.mean_payment = sum / count;
  if (rep.records.size() > 1) {
    const double var = std::max(0.0, (sum_sq - count * rep.mean_payment * rep.mean_payment) / (count - 1.0));
    rep.payment_std_error = std::sqrt(var / count);
  }

  rep.notes.push_back("quotes use exponential rates from the profile means");
  rep.notes.push_back(fmt::format("late contacts: {}", to_string(cfg.late_contacts)));
  if (rep.distribution_mismatch) {
    rep.notes.push_back("encounters drawn from non-exponential laws while quotes assume exponential ones");
  }
  if (cfg.ttl_epsilon) {
    TTLStats s;
    s.epsilon = *cfg.ttl_epsilon;
    s.expected_failure = n == 0 ? 1.0 : failure_prob(s.epsilon, n);
    s.empirical_failure = static_cast<double>(rep.failures) / count;
    s.failure_std_error = std::sqrt(s.expected_failure * (1.0 - s.expected_failure) / count);
    for (std::size_t i = 0; i < n; ++i) {
      const RelayLedger& l = rep.ledgers[i];
      s.mean_holding.push_back(l.accepted ? l.holding_time / static_cast<double>(l.accepted) : 0.0);
      s.expected_holding.push_back(mean_holding_time(cfg.relays.mu(i), s.epsilon));
    }
    rep.ttl = std::move(s);
    rep.notes.push_back("quotes do not account for the relay's own TTL");
  }
  return rep;
}

}  // namespace

std::string_view to_string(LateContacts l) noexcept { return l == LateContacts::Carry ? "carry" : "truncate"; }

LateContacts parse_late_contacts(std::string_view text) {
  if (text == "carry") return LateContacts::Carry;
  if (text == "truncate") return LateContacts::Truncate;
  throw Error(Errc::ParseError, fmt::format("late_contacts must be carry or truncate, got '{}'", text));
}

std::vector<double> SimulationReport::payments() const {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.winner) out.push_back(r.payment);
  }
  return out;
}

SimulationReport run(const ExperimentConfig& config) { return assemble(config, simulate(config, kNoTag)); }

SimulationReport run_robustness(const ExperimentConfig& config) { return run(config); }

SimulationReport run_ttl(const ExperimentConfig& config) {
  if (!config.ttl_epsilon) throw Error(Errc::ConfigError, "TTL run without ttl_epsilon");
  return run(config);
}

BreakevenSeries run_relay_breakeven(const ExperimentConfig& config, std::string_view relay_id) {
  const std::size_t tag = config.relays.index_of(relay_id);
  auto blocks = simulate(config, tag);
  BreakevenSeries out;
  out.relay_id = std::string(relay_id);
  double reward = 0.0;
  double cost = 0.0;
  std::size_t t = 0;
  for (const auto& b : blocks) {
    for (std::size_t m = 0; m < b.tag_reward.size(); ++m) {
      ++t;
      reward += b.tag_reward[m];
      cost += b.tag_cost[m];
      out.avg_reward.push_back(reward / static_cast<double>(t));
      out.avg_cost.push_back(cost / static_cast<double>(t));
    }
  }
  return out;
}

nlohmann::json report_to_json(const SimulationReport& rep) {
  nlohmann::json j;
  j["setting"] = to_string(rep.setting);
  j["messages"] = rep.messages;
  j["seed"] = rep.seed;
  j["slot_hours"] = rep.slot_hours;
  j["late_contacts"] = to_string(rep.late_contacts);
  j["quote_assumption"] = "exponential rates from profile means";
  j["distribution_mismatch"] = rep.distribution_mismatch;
  j["theoretical_expected_payment"] = rep.theoretical;
  j["theoretical_quoted_payment"] = rep.theoretical_quoted;
  j["mean_payment"] = rep.mean_payment;
  j["payment_std_error"] = rep.payment_std_error;
  j["failures"] = rep.failures;
  j["notes"] = rep.notes;
  auto ledgers = nlohmann::json::array();
  for (const auto& l : rep.ledgers) {
    ledgers.push_back({{"id", l.id},
                       {"rewards", l.rewards},
                       {"costs", l.costs},
                       {"accepted", l.accepted},
                       {"wins", l.wins},
                       {"skipped", l.skipped},
                       {"drops", l.drops},
                       {"holding_time", l.holding_time}});
  }
  j["ledgers"] = std::move(ledgers);
  auto winners = nlohmann::json::array();
  auto payments = nlohmann::json::array();
  for (const auto& r : rep.records) {
    winners.push_back(r.winner ? nlohmann::json(rep.ledgers[*r.winner].id) : nlohmann::json(nullptr));
    payments.push_back(r.payment);
  }
  j["winners"] = std::move(winners);
  j["payments"] = std::move(payments);
  if (rep.ttl) {
    j["ttl"] = {{"epsilon", rep.ttl->epsilon},
                {"expected_failure", rep.ttl->expected_failure},
                {"empirical_failure", rep.ttl->empirical_failure},
                {"failure_std_error", rep.ttl->failure_std_error},
                {"mean_holding", rep.ttl->mean_holding},
                {"expected_holding", rep.ttl->expected_holding}};
  }
  return j;
}

void write_series_csv(std::ostream& out, const SimulationReport& rep) {
  out << "slot,payment,running_avg,theoretical\n";
  for (std::size_t t = 0; t < rep.records.size(); ++t) {
    out << fmt::format("{},{},{},{}\n", t + 1, rep.records[t].payment, rep.running_average[t], rep.theoretical);
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  try {
    ExperimentConfig c;
    const auto& relays = j.at("relays");
    if (relays.is_string()) {
      std::filesystem::path p = relays.get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      c.relays = load_relays(p);
    } else {
      c.relays = relays_from_json(relays);
    }
    const auto& costs = j.at("costs");
    c.costs = CostParams::make(costs.at("c_d").get<double>(), costs.at("c_r").get<double>(),
                               costs.at("c_s").get<double>());
    c.setting = parse_info_setting(j.value("setting", std::string("full")));
    c.messages = j.value("messages", std::size_t{1});
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("ttl_epsilon") && !j["ttl_epsilon"].is_null()) c.ttl_epsilon = j["ttl_epsilon"].get<double>();
    c.slot_hours = j.value("slot_hours", 10.0);
    c.late_contacts = parse_late_contacts(j.value("late_contacts", std::string("carry")));
    const std::string variant = j.value("anon_variant", std::string("normalized"));
    if (variant == "normalized") {
      c.anon_variant = AnonVariant::Normalized;
    } else if (variant == "as_written") {
      c.anon_variant = AnonVariant::AsWritten;
    } else {
      throw Error(Errc::ConfigError, fmt::format("anon_variant must be normalized or as_written, got '{}'", variant));
    }
    c.block_size = j.value("block_size", std::size_t{1000});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, e.what());
  }
}

}  // namespace dtnreward
