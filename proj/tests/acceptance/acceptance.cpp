// Acceptance suite: one PASS/FAIL line per criterion, INFO lines for context.
// Every seed is fixed up front; nothing here is tuned after looking at results.
//
// usage: acceptance [path-to-dtnreward-cli] [scratch-dir]

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dtnreward/mobility.hpp"
#include "dtnreward/oracle.hpp"
#include "dtnreward/reward.hpp"
#include "dtnreward/scenarios.hpp"
#include "dtnreward/simulation.hpp"
#include "dtnreward/success_probability.hpp"
#include "dtnreward/trace.hpp"
#include "dtnreward/ttl.hpp"
#include "dtnreward/validation.hpp"

namespace fs = std::filesystem;
using namespace dtnreward;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::size_t kMessages = 10000;
constexpr double kZ99 = 2.5758293035489004;

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << fmt::format("CRITERION {} {}: {}", id, pass ? "PASS" : "FAIL", detail) << std::endl;
}

void info(int id, const std::string& detail) { std::cout << fmt::format("  INFO {}: {}", id, detail) << std::endl; }

ExperimentConfig config(RelaySet relays, InfoSetting s) {
  ExperimentConfig c;
  c.relays = std::move(relays);
  c.costs = scenarios::reference_costs();
  c.setting = s;
  c.messages = kMessages;
  c.seed = kSeed;
  return c;
}

const char* short_name(InfoSetting s) {
  switch (s) {
    case InfoSetting::Full: return "F";
    case InfoSetting::PartialWithIdentities: return "P+";
    case InfoSetting::PartialWithoutIdentities: return "P-";
    case InfoSetting::NoInformation: return "N";
  }
  return "?";
}

// E[payment | meeting times, order] = sum_k P(k-th relay wins | log) * quote_k,
// averaged over logs. Same target as the raw mean, without the rare 1/p draws.
std::array<std::pair<double, double>, 4> conditional_payment(const RelaySet& relays, std::uint64_t seed,
                                                             std::size_t logs) {
  const CostParams costs = scenarios::reference_costs();
  const SuccessModel model(relays);
  EncounterSynthesizer synth(relays);
  Rng rng(seed);
  std::array<double, 4> sum{}, sum2{};
  std::vector<double> win(relays.size());
  for (std::size_t m = 0; m < logs; ++m) {
    const Encounter e = synth.next(rng);
    for (std::size_t k = 1; k <= e.log.size(); ++k) win[k - 1] = p_actual(e.log, relays, k);
    for (std::size_t si = 0; si < 4; ++si) {
      double v = 0.0;
      for (std::size_t k = 1; k <= e.log.size(); ++k) {
        const SuccessEstimate est = model.estimate(Knowledge::from_log(kAllSettings[si], e.log, k));
        if (est.value > 0.0) v += win[k - 1] * min_reward(costs, quoted_base_cost(costs, relays[e.log.relay(k - 1)]),
                                                          std::min(est.value, 1.0));
      }
      sum[si] += v;
      sum2[si] += v * v;
    }
  }
  std::array<std::pair<double, double>, 4> out;
  const double n = static_cast<double>(logs);
  for (std::size_t si = 0; si < 4; ++si) {
    const double mean = sum[si] / n;
    out[si] = {mean, std::sqrt(std::max(0.0, sum2[si] / n - mean * mean) / n)};
  }
  return out;
}

void criterion1() {
  const RelaySet relays = scenarios::heterogeneous_exponential();
  const double target = theoretical_quoted_payment(scenarios::reference_costs(), relays);
  bool within = true;
  std::array<std::pair<double, double>, 4> ci{};
  std::string detail;
  for (std::size_t si = 0; si < 4; ++si) {
    const auto rep = run(config(relays, kAllSettings[si]));
    const double gap = rep.mean_payment / target - 1.0;
    within = within && std::abs(gap) < 0.02;
    ci[si] = {rep.mean_payment - kZ99 * rep.payment_std_error, rep.mean_payment + kZ99 * rep.payment_std_error};
    detail += fmt::format(" {}={:.4f}({:+.1f}%)", short_name(kAllSettings[si]), rep.mean_payment, 100 * gap);
  }
  bool overlap = true;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) overlap = overlap && ci[a].first <= ci[b].second && ci[b].first <= ci[a].second;
  }
  verdict(1, within && overlap,
          fmt::format("mean payment vs {:.4f} within 2%:{} | 99% CIs overlap: {}", target, detail,
                      overlap ? "yes" : "no"));
  const auto cond = conditional_payment(relays, split_seed(kSeed, 1000), kMessages);
  std::string c;
  for (std::size_t si = 0; si < 4; ++si) {
    c += fmt::format(" {}={:.4f}+-{:.4f}", short_name(kAllSettings[si]), cond[si].first, cond[si].second);
  }
  info(1, "conditional-expectation payment estimate (not the criterion):" + c);
}

struct Draw {
  RandomInstance inst;
  std::size_t n;
  std::uint64_t seed;
};

std::vector<Draw> sweep_draws() {
  std::vector<Draw> out;
  for (std::size_t big_n = 2; big_n <= 4; ++big_n) {
    for (std::size_t j = 0; j < 20; ++j) {
      const std::uint64_t seed = split_seed(kSeed, 20 * (big_n - 2) + j);
      Rng rng(seed);
      RandomInstance inst = random_instance(big_n, rng);
      const std::size_t n = 1 + static_cast<std::size_t>(rng.below(big_n));
      out.push_back({std::move(inst), n, seed});
    }
  }
  return out;
}

void criterion2(const std::vector<Draw>& draws) {
  std::size_t total = 0, misses = 0;
  double worst = 0.0;
  std::string worst_row;
  std::array<std::size_t, 4> miss_by{};
  for (const Draw& d : draws) {
    for (std::size_t k = 0; k < 4; ++k) {
      const ValidationRow row =
          compare_with_oracle(kAllSettings[k], d.inst.relays, d.inst.log, d.n, 1000000, split_seed(d.seed, 100 + k));
      ++total;
      const double z = std::abs(row.closed_form - row.oracle_mean) / (row.tolerance / 3.0);
      if (!row.within) {
        ++misses;
        ++miss_by[k];
      }
      if (z > worst) {
        worst = z;
        worst_row = fmt::format("{} N={} n={} closed={:.6f} oracle={:.6f}", short_name(row.setting), row.relays, row.n,
                                row.closed_form, row.oracle_mean);
      }
    }
  }
  verdict(2, misses == 0,
          fmt::format("{}/{} closed-form vs oracle comparisons within 3 SE at 1e6 samples (misses F/P+/P-/N = "
                      "{}/{}/{}/{}); largest |z| = {:.2f} ({})",
                      total - misses, total, miss_by[0], miss_by[1], miss_by[2], miss_by[3], worst, worst_row));
}

void criterion3(const std::vector<Draw>& draws) {
  std::size_t checks = 0;
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
  auto check = [&](const RandomInstance& inst) {
    const std::size_t big_n = inst.relays.size();
    const std::size_t first = inst.log.relay(0);
    const double s1 = inst.log.time(0);
    const double f1 = p_full(inst.log, inst.relays, 1);
    worst = std::max({worst, rel(p_partial_id(s1, 1, {}, first, inst.relays), f1),
                      rel(p_partial_anon(s1, 1, first, inst.relays), f1),
                      rel(p_full(inst.log, inst.relays, big_n), p_actual(inst.log, inst.relays, big_n))});
    checks += 3;
  };
  for (const Draw& d : draws) check(d.inst);
  // The same ranges again, on many more instances and up to twelve relays.
  Rng rng(split_seed(kSeed, 3000));
  for (int i = 0; i < 5000; ++i) check(random_instance(2 + rng.below(11), rng));
  verdict(3, worst <= 1e-10,
          fmt::format("{} boundary identities (P+_1 = P-_1 = F_1, F_N = actual), max relative error {:.3g}", checks,
                      worst));
}

void criterion4() {
  const RelaySet relays = scenarios::heterogeneous_exponential();
  bool pass = true;
  std::string detail;
  for (InfoSetting s : kAllSettings) {
    const auto b = run_relay_breakeven(config(relays, s), "r1");
    const double gap = b.avg_reward.back() / b.avg_cost.back() - 1.0;
    pass = pass && std::abs(gap) < 0.05;
    detail += fmt::format(" {}: {:.4f}/{:.4f} ({:+.1f}%)", short_name(s), b.avg_reward.back(), b.avg_cost.back(),
                          100 * gap);
  }
  verdict(4, pass, "relay r1 average reward/cost after 1e4 slots within 5%:" + detail);
  std::string t;
  for (InfoSetting s : kAllSettings) {
    auto c = config(relays, s);
    c.late_contacts = LateContacts::Truncate;
    const auto b = run_relay_breakeven(c, "r1");
    t += fmt::format(" {}={:+.1f}%", short_name(s), 100 * (b.avg_reward.back() / b.avg_cost.back() - 1.0));
  }
  info(4, "same runs with late contacts truncated at delivery:" + t);
}

void criterion5() {
  const RelaySet relays = scenarios::heterogeneous_mixed();
  const CostParams costs = scenarios::reference_costs();
  const double target = theoretical_quoted_payment(costs, relays);
  bool pass = true;
  std::string detail;
  for (InfoSetting s : kAllSettings) {
    const auto rep = run_robustness(config(relays, s));
    const double gap = rep.mean_payment / target - 1.0;
    pass = pass && std::abs(gap) < 0.05;
    detail += fmt::format(" {}={:.4f}({:+.1f}%)", short_name(s), rep.mean_payment, 100 * gap);
  }
  verdict(5, pass, fmt::format("mixed laws, mean payment vs {:.4f} within 5%:{}", target, detail));
  info(5, fmt::format("reference with true mean residual delays: {:.4f}",
                      theoretical_expected_payment(costs, relays)));
  std::string h;
  for (InfoSetting s : kAllSettings) {
    for (const char* id : {"r3", "r4"}) {
      const auto b = run_relay_breakeven(config(relays, s), id);
      h += fmt::format(" {}/{}={:+.1f}%", short_name(s), id, 100 * (b.avg_reward.back() / b.avg_cost.back() - 1.0));
    }
  }
  info(5, "hyperexponential relays, reward vs cost:" + h);
}

void criterion6() {
  const RelaySet table = scenarios::heterogeneous_exponential();
  bool pass = true;
  std::string detail;
  const std::array<std::pair<double, std::size_t>, 3> cases{{{1.0, 2}, {0.5, 5}, {0.2, 10}}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto [eps, n] = cases[i];
    std::vector<RelayProfile> sub(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(n));
    auto c = config(validate_profiles(std::move(sub)), InfoSetting::Full);
    c.ttl_epsilon = eps;
    c.seed = split_seed(kSeed, 600 + i);
    const auto rep = run_ttl(c);
    const double d = failure_prob(eps, n);
    const double se = std::sqrt(d * (1 - d) / static_cast<double>(kMessages));
    const bool ok = std::abs(rep.ttl->empirical_failure - d) <= 3.0 * se;
    pass = pass && ok;
    detail += fmt::format(" (eps={}, N={}): {:.4f} vs {:.4f}{}", eps, n, rep.ttl->empirical_failure, d, ok ? "" : " MISS");
  }
  double roundtrip = 0.0;
  for (std::size_t n = 1; n <= 20; ++n) {
    for (double d = 1e-6; d < 1.0; d = d < 0.01 ? d * 10 : d + 0.01) {
      roundtrip = std::max(roundtrip, std::abs(failure_prob(epsilon_for_target(d, n), n) - d) / d);
    }
  }
  bool convex = true;
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(i / 200.0);
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto c = tradeoff_curve(n, grid);
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
      convex = convex && c[i - 1].second + c[i + 1].second - 2.0 * c[i].second >= -1e-15;
    }
  }
  pass = pass && roundtrip <= 1e-12 && convex;
  verdict(6, pass,
          fmt::format("failure fraction within 3 binomial SE:{} | roundtrip max rel err {:.2g} | convex: {}", detail,
                      roundtrip, convex ? "yes" : "no"));
}

void criterion7() {
  PassTraceParams params;
  Rng rng(split_seed(kSeed, 700));
  const auto fixes = synthesize_pass_trace(params, rng);
  const std::vector<Anchor> anchors{params.source, params.destination};
  const FittedRates fit = fit_contacts(detect_contacts(fixes, anchors));
  const RelayFit& r = fit.relays.at(0);
  const double el = r.lambda_hat / params.source_rate_per_hour - 1.0;
  const double em = r.mu_hat / params.dest_rate_per_hour - 1.0;
  const bool rates_ok = std::abs(el) < 0.05 && std::abs(em) < 0.05;

  // Straight pass through the 50 m disk; entry and exit against the chord.
  const double speed = 10.0, period = 7.0, offset = 30.0, x0 = -500.0;
  std::vector<PositionRecord> line;
  for (double t = 0.0; x0 + speed * t <= 500.0; t += period) line.push_back({t, "probe", x0 + speed * t, offset});
  const std::vector<Anchor> center{{kSourceAnchor, 0.0, 0.0}};
  const auto c = detect_contacts(line, center);
  const double half = std::sqrt(50.0 * 50.0 - offset * offset);
  const double enter = (-half - x0) / speed, leave = (half - x0) / speed;
  const bool chord_ok =
      c.size() == 1 && std::abs(c[0].t_start - enter) <= period && std::abs(c[0].t_end - leave) <= period;
  verdict(7, rates_ok && chord_ok,
          fmt::format("fitted lambda {:.5f} ({:+.1f}%), mu {:.5f} ({:+.1f}%) vs 0.1/h from {}/{} gaps | chord "
                      "crossing {}",
                      r.lambda_hat, 100 * el, r.mu_hat, 100 * em, r.source_samples.size(), r.dest_samples.size(),
                      chord_ok ? "within one fix period" : "MISSED"));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion8(const char* cli, const fs::path& scratch) {
  std::vector<std::string> mismatches;
  auto same = [&](const std::string& what, const std::string& a, const std::string& b) {
    if (a != b || a.empty()) mismatches.push_back(what);
  };

  // In-process: every randomized entry point twice with the same seed.
  for (InfoSetting s : kAllSettings) {
    auto c = config(scenarios::heterogeneous_mixed(), s);
    c.messages = 3000;
    same(fmt::format("run/{}", short_name(s)), report_to_json(run(c)).dump(), report_to_json(run(c)).dump());
  }
  {
    auto c = config(scenarios::heterogeneous_exponential(), InfoSetting::Full);
    c.messages = 3000;
    c.ttl_epsilon = 0.5;
    same("run_ttl", report_to_json(run_ttl(c)).dump(), report_to_json(run_ttl(c)).dump());
    const auto a = run_relay_breakeven(c, "r2");
    const auto b = run_relay_breakeven(c, "r2");
    same("breakeven", nlohmann::json(a.avg_reward).dump() + nlohmann::json(a.avg_cost).dump(),
         nlohmann::json(b.avg_reward).dump() + nlohmann::json(b.avg_cost).dump());
  }
  {
    Rng r1(5), r2(5);
    const RandomInstance inst = random_instance(4, r1);
    const RandomInstance again = random_instance(4, r2);
    for (InfoSetting s : kAllSettings) {
      same(fmt::format("oracle/{}", short_name(s)),
           to_json(compare_with_oracle(s, inst.relays, inst.log, 3, 300000, 9)).dump(),
           to_json(compare_with_oracle(s, again.relays, again.log, 3, 300000, 9)).dump());
    }
  }
  {
    PassTraceParams params;
    params.horizon_hours = 2000.0;
    Rng r1(7), r2(7);
    std::ostringstream a, b;
    write_positions_csv(a, synthesize_pass_trace(params, r1));
    write_positions_csv(b, synthesize_pass_trace(params, r2));
    same("trace", a.str(), b.str());
  }

  std::size_t cli_checks = 0;
  if (cli != nullptr) {
    fs::create_directories(scratch);
    const std::string data = DTNREWARD_DATA_DIR;
    {
      PassTraceParams params;
      params.horizon_hours = 2000.0;
      Rng rng(11);
      std::ofstream out(scratch / "positions.csv");
      write_positions_csv(out, synthesize_pass_trace(params, rng));
    }
    auto twice = [&](const std::string& name, const std::string& args, const std::vector<std::string>& outputs) {
      std::array<std::string, 2> got;
      for (int k = 0; k < 2; ++k) {
        const fs::path dir = scratch / fmt::format("{}_{}", name, k);
        fs::create_directories(dir);
        std::string cmd = fmt::format("\"{}\" {}", cli, args);
        for (const auto& o : outputs) {
          const std::string from = "@" + o;
          cmd.replace(cmd.find(from), from.size(), (dir / o).string());
        }
        cmd += fmt::format(" > \"{}\"", (dir / "stdout.txt").string());
        const int rc = std::system(cmd.c_str());
        if (rc != 0) mismatches.push_back(fmt::format("cli {} exited with {}", name, rc));
        got[k] = slurp(dir / "stdout.txt");
        for (const auto& o : outputs) {
          const std::string body = slurp(dir / o);
          if (body.empty()) mismatches.push_back(fmt::format("cli {} wrote no {}", name, o));
          got[k] += "|" + body;
        }
      }
      same("cli " + name, got[0], got[1]);
      ++cli_checks;
    };
    twice("simulate",
          fmt::format("simulate --config \"{}/experiment.json\" --seed 1 --messages 2000 --setting partial_anon "
                      "--out @report.json --csv @series.csv",
                      data),
          {"report.json", "series.csv"});
    twice("validate-prob", "validate-prob --n-relays 3 --samples 100000 --seed 7 --out @rows.json", {"rows.json"});
    twice("fit-traces",
          fmt::format("fit-traces --positions \"{}\" --source 0,0 --dest 5000,0 --range 50 --out @relays.json "
                      "--summary @summary.json",
                      (scratch / "positions.csv").string()),
          {"relays.json", "summary.json"});
    twice("ttl-curve", "ttl-curve --n 3 --grid 0:0.9:0.1", {});
    twice("theoretical", fmt::format("theoretical --relays \"{}/taxis.json\" --costs 0.4,0.04,0.01", data), {});
  }
  std::string detail = fmt::format("in-process double runs plus {} CLI commands run twice", cli_checks);
  if (cli == nullptr) detail += " (CLI path not given, CLI part skipped)";
  for (const auto& m : mismatches) detail += " | differs: " + m;
  verdict(8, mismatches.empty() && cli != nullptr, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "dtnreward_acceptance";
  const auto draws = sweep_draws();
  const std::vector<std::function<void()>> steps{
      criterion1,
      [&] { criterion2(draws); },
      [&] { criterion3(draws); },
      criterion4,
      criterion5,
      criterion6,
      criterion7,
      [&] { criterion8(cli, scratch); },
  };
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      steps[i]();
    } catch (const std::exception& e) {
      verdict(static_cast<int>(i + 1), false, fmt::format("threw: {}", e.what()));
    }
  }
  std::cout << fmt::format("{} of 8 criteria passed", 8 - failures) << std::endl;
  return failures == 0 ? 0 : 1;
}
