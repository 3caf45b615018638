// Command-line front end. Times are in hours throughout; trace inputs are in
// seconds and meters and are converted on the way in.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "dtnreward/error.hpp"
#include "dtnreward/relay_io.hpp"
#include "dtnreward/reward.hpp"
#include "dtnreward/simulation.hpp"
#include "dtnreward/trace.hpp"
#include "dtnreward/ttl.hpp"
#include "dtnreward/validation.hpp"
#include "dtnreward/version.hpp"

namespace {

using namespace dtnreward;

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("'{}' is not a number", item));
    }
  }
  return out;
}

std::pair<double, double> parse_point(const std::string& text) {
  auto v = parse_doubles(text, ',');
  if (v.size() != 2) throw UsageError(fmt::format("expected X,Y but got '{}'", text));
  return {v[0], v[1]};
}

// "a:b:c" (start:stop:step, stop inclusive), "a,b,c" or a single value.
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_doubles(text, ',');
  auto v = parse_doubles(text, ':');
  if (v.size() != 3 || !(v[2] > 0.0) || v[1] < v[0]) {
    throw UsageError(fmt::format("grid '{}' must be start:stop:step with step > 0", text));
  }
  std::vector<double> out;
  const double slack = 1e-9 * v[2];
  for (std::size_t k = 0;; ++k) {
    const double g = v[0] + static_cast<double>(k) * v[2];
    if (g > v[1] + slack) break;
    out.push_back(g);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError(fmt::format("cannot write '{}'", path));
  out << text;
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string csv;
  std::optional<std::uint64_t> seed;
  std::string setting;
  std::optional<std::size_t> messages;
};

int cmd_simulate(const SimulateArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw UsageError(fmt::format("cannot open '{}'", a.config));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, fmt::format("{}: {}", a.config, e.what()));
  }
  ExperimentConfig cfg = config_from_json(j, std::filesystem::path(a.config).parent_path());
  cfg.seed = *a.seed;
  if (!a.setting.empty()) cfg.setting = parse_info_setting(a.setting);
  if (a.messages) cfg.messages = *a.messages;
  const SimulationReport rep = run(cfg);
  write_text(a.out, report_to_json(rep).dump(2) + "\n");
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_series_csv(csv, rep);
    write_text(a.csv, csv.str());
  }
  if (!a.out.empty() && a.out != "-") {
    std::cerr << fmt::format("setting={} messages={} mean_payment={:.6f} theoretical={:.6f} quoted={:.6f}\n",
                             to_string(rep.setting), rep.messages, rep.mean_payment, rep.theoretical,
                             rep.theoretical_quoted);
  }
  return kOk;
}

struct ValidateArgs {
  std::size_t n_relays = 3;
  std::uint64_t samples = 1000000;
  std::optional<std::uint64_t> seed;
  std::size_t draws = 1;
  std::string relays;
  std::string out;
  std::string variant = "normalized";
};

int cmd_validate(const ValidateArgs& a) {
  const AnonVariant variant = a.variant == "as_written" ? AnonVariant::AsWritten : AnonVariant::Normalized;
  nlohmann::json rows = nlohmann::json::array();
  bool ok = true;
  for (std::size_t d = 0; d < a.draws; ++d) {
    Rng rng(split_seed(*a.seed, d));
    RandomInstance inst;
    if (!a.relays.empty()) {
      // Fixed relay set, random meeting times.
      inst.relays = load_relays(a.relays);
      RandomInstance shape = random_instance(inst.relays.size(), rng);
      std::vector<double> times(shape.log.times().begin(), shape.log.times().end());
      std::vector<std::size_t> order(shape.log.order().begin(), shape.log.order().end());
      inst.log = EncounterLog(inst.relays, std::move(times), std::move(order));
    } else {
      inst = random_instance(a.n_relays, rng);
    }
    std::uint64_t stream = 0;
    for (InfoSetting s : kAllSettings) {
      for (std::size_t n = 1; n <= inst.relays.size(); ++n) {
        const auto row = compare_with_oracle(s, inst.relays, inst.log, n, a.samples,
                                             split_seed(split_seed(*a.seed, d), 100 + stream++), variant);
        ok = ok && row.within;
        rows.push_back(to_json(row));
      }
    }
  }
  nlohmann::json doc{{"seed", *a.seed}, {"samples", a.samples}, {"variant", a.variant}, {"all_within", ok}, {"rows", rows}};
  write_text(a.out, doc.dump(2) + "\n");
  return ok ? kOk : kValidationFailure;
}

int cmd_ttl_curve(std::size_t n, const std::string& grid) {
  std::string text;
  for (const auto& [g, d] : tradeoff_curve(n, parse_grid(grid))) text += fmt::format("{:.12g},{:.12g}\n", g, d);
  std::cout << text;
  return kOk;
}

struct FitArgs {
  std::string positions;
  std::string contacts;
  std::string source;
  std::string dest;
  double range = 50.0;
  std::optional<double> fix_period;
  std::string out;
  std::string summary;
};

int cmd_fit(const FitArgs& a) {
  std::vector<ContactInterval> contacts;
  if (!a.positions.empty()) {
    if (a.source.empty() || a.dest.empty()) throw UsageError("--positions needs --source and --dest");
    std::ifstream in(a.positions);
    if (!in) throw UsageError(fmt::format("cannot open '{}'", a.positions));
    const auto fixes = read_positions_csv(in);
    const auto [sx, sy] = parse_point(a.source);
    const auto [dx, dy] = parse_point(a.dest);
    const std::vector<Anchor> anchors{{kSourceAnchor, sx, sy}, {kDestinationAnchor, dx, dy}};
    DetectOptions opts;
    opts.range_m = a.range;
    opts.fix_period = a.fix_period;
    contacts = detect_contacts(fixes, anchors, opts);
  } else {
    std::ifstream in(a.contacts);
    if (!in) throw UsageError(fmt::format("cannot open '{}'", a.contacts));
    contacts = read_contacts_csv(in);
  }
  const FittedRates fit = fit_contacts(contacts);
  write_text(a.out, fitted_rates_to_relays_json(fit).dump(2) + "\n");
  if (!a.summary.empty()) write_text(a.summary, fitted_rates_to_json(fit).dump(2) + "\n");
  return kOk;
}

int cmd_theoretical(const std::string& relays_path, const std::string& costs_text, bool quoted) {
  const auto c = parse_doubles(costs_text, ',');
  if (c.size() != 3) throw UsageError("--costs takes c_d,c_r,c_s");
  const CostParams costs = CostParams::make(c[0], c[1], c[2]);
  const RelaySet relays = load_relays(relays_path);
  const double value = quoted ? theoretical_quoted_payment(costs, relays) : theoretical_expected_payment(costs, relays);
  std::cout << fmt::format("{:.12g}\n", value);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incentive rewards for two-hop relaying in heterogeneous delay-tolerant networks.\n"
               "All times are in hours and all rates are per hour."};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print the version and build identifier");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the per-message reward simulation");
  simulate->add_option("--config", sim.config, "Experiment JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", sim.out, "Report JSON path (default: stdout)");
  simulate->add_option("--csv", sim.csv, "Series CSV path: slot,payment,running_avg,theoretical");
  simulate->add_option("--seed", sim.seed, "Master seed (overrides the config)")->required();
  simulate->add_option("--setting", sim.setting, "full | partial_id | partial_anon | none (overrides the config)");
  simulate->add_option("--messages", sim.messages, "Number of messages (overrides the config)");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate-prob", "Compare closed-form success probabilities with Monte Carlo");
  validate->add_option("--n-relays", val.n_relays, "Relays per random draw")->check(CLI::Range(1, 20));
  validate->add_option("--samples", val.samples, "Oracle samples per comparison")->check(CLI::PositiveNumber);
  validate->add_option("--seed", val.seed, "Master seed")->required();
  validate->add_option("--draws", val.draws, "Random parameter draws")->check(CLI::PositiveNumber);
  validate->add_option("--relays", val.relays, "Use this relay JSON instead of random rates")->check(CLI::ExistingFile);
  validate->add_option("--out", val.out, "Output JSON path (default: stdout)");
  validate->add_option("--variant", val.variant, "P- evaluator")->check(CLI::IsMember({"normalized", "as_written"}));

  std::size_t ttl_n = 1;
  std::string ttl_grid = "0:0.95:0.05";
  auto* ttl = app.add_subcommand("ttl-curve", "Print G,D pairs of the TTL tradeoff D = G^N");
  ttl->add_option("--n", ttl_n, "Number of relays")->required()->check(CLI::PositiveNumber);
  ttl->add_option("--grid", ttl_grid, "start:stop:step, a comma list, or a single G in [0, 1)");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit-traces", "Detect contacts and fit per-relay rates (1/hour)");
  auto* pos_opt = fit_cmd->add_option("--positions", fit.positions, "CSV time_s,node_id,x_m,y_m")->check(CLI::ExistingFile);
  auto* con_opt = fit_cmd->add_option("--contacts", fit.contacts, "CSV t_start_s,t_end_s,node_a,node_b")->check(CLI::ExistingFile);
  pos_opt->excludes(con_opt);
  fit_cmd->add_option("--source", fit.source, "Source position X,Y in meters");
  fit_cmd->add_option("--dest", fit.dest, "Destination position X,Y in meters");
  fit_cmd->add_option("--range", fit.range, "Contact range in meters")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--fix-period", fit.fix_period, "Seconds between fixes (default: median per node)");
  fit_cmd->add_option("--out", fit.out, "Relay JSON path (default: stdout)");
  fit_cmd->add_option("--summary", fit.summary, "Sample counts and histograms JSON path");

  std::string th_relays;
  std::string th_costs;
  bool th_quoted = false;
  auto* theo = app.add_subcommand("theoretical", "Expected source payment c_d + sum(c_r + c_s E[T_d])");
  theo->add_option("--relays", th_relays, "Relay JSON")->required()->check(CLI::ExistingFile);
  theo->add_option("--costs", th_costs, "c_d,c_r,c_s")->required();
  theo->add_flag("--quoted", th_quoted, "Use 1/mu for E[T_d] as quotes do");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (version) {
      std::cout << fmt::format("dtnreward {} ({})\n", kVersion, kBuildId);
      return kOk;
    }
    if (*simulate) return cmd_simulate(sim);
    if (*validate) return cmd_validate(val);
    if (*ttl) return cmd_ttl_curve(ttl_n, ttl_grid);
    if (*fit_cmd) {
      if (fit.positions.empty() && fit.contacts.empty()) throw UsageError("fit-traces needs --positions or --contacts");
      return cmd_fit(fit);
    }
    if (*theo) return cmd_theoretical(th_relays, th_costs, th_quoted);
    std::cerr << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
