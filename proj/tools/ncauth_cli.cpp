// ncauth: scenario runner for the network-coding authentication scheme.
//
//   ncauth simulate --config scenarios/butterfly_honest.json
//   ncauth pollute  --config scenarios/butterfly_pollute.json --out report.json
//   ncauth lemma-sweep --config scenarios/sweep_small.json --format table
//   ncauth demo --seed 7
//
// Exit codes: 0 success (attack outcomes are report data), 1 internal error,
// 2 invalid configuration, 3 resource guard exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncauth/errors.hpp"
#include "ncauth/scenario.hpp"

namespace {

using nlohmann::json;
using namespace ncauth;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> guard;
  std::string out;
  bool unsafe_n_gt_m = false;
  std::string format = "json";
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ConfigError("--out", "cannot write " + out);
  f << text;
}

Scenario load_scenario(const Options& opt, std::optional<AttackKind> expected) {
  if (opt.config.empty()) throw ConfigError("--config", "a scenario file is required");
  json doc = load_json(opt.config);
  // Command-line overrides are applied to the document so the echo shows them.
  if (doc.is_object()) {
    if (opt.seed) doc["seed"] = *opt.seed;
    if (opt.guard) doc["guard"] = *opt.guard;
    if (opt.unsafe_n_gt_m) doc["unsafe_n_gt_m"] = true;
  }
  Scenario s = parse_scenario(doc);
  if (expected && s.attack.kind != *expected) {
    if (*expected == AttackKind::kNone) {
      s.attack = AttackConfig{};  // simulate runs the honest pipeline only
    } else {
      throw ConfigError("attack.kind", std::string("this subcommand needs attack.kind = \"") +
                                           to_string(*expected) + "\", config has \"" +
                                           to_string(s.attack.kind) + "\"");
    }
  }
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int run(const std::string& command, const Options& opt) {
  if (command == "keygen") {
    emit(dump(keygen_report(load_scenario(opt, std::nullopt))), opt.out);
  } else if (command == "simulate") {
    emit(dump(run_scenario(load_scenario(opt, AttackKind::kNone))), opt.out);
  } else if (command == "forge") {
    emit(dump(run_scenario(load_scenario(opt, AttackKind::kForge))), opt.out);
  } else if (command == "pollute") {
    emit(dump(run_scenario(load_scenario(opt, AttackKind::kPollute))), opt.out);
  } else if (command == "recover") {
    emit(dump(run_scenario(load_scenario(opt, AttackKind::kRecover))), opt.out);
  } else if (command == "lemma-sweep") {
    SweepConfig cfg;
    if (opt.config.empty()) {
      cfg.q = {2};
      cfg.l = {1};
      cfg.k = {2};
      cfg.M = {1};
      cfg.K = {1};
      cfg.repetitions = 10;
    } else {
      cfg = parse_sweep(load_json(opt.config));
    }
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.guard) cfg.guard = *opt.guard;
    const SweepResult result = lemma_sweep(cfg);
    emit(opt.format == "table" ? sweep_to_table(result) : dump(sweep_to_json(cfg, result)), opt.out);
  } else if (command == "demo") {
    emit(dump(demo_report(opt.seed.value_or(1))), opt.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network-coding authentication: scenarios, attacks and key-recovery counting"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opt.config, "Scenario or sweep config (JSON)");
    if (config_required) c->required();
    sub->add_option("--seed", opt.seed, "Master seed, overrides the config");
    sub->add_option("--out", opt.out, "Write the report here instead of stdout");
    sub->add_option("--guard", opt.guard, "Brute-force candidate limit");
    sub->add_flag("--unsafe-n-gt-m", opt.unsafe_n_gt_m, "Allow more messages than the key supports");
  };
  add_common(app.add_subcommand("keygen", "Generate and print source and verifier keys"), true);
  add_common(app.add_subcommand("simulate", "Honest run: propagate, verify, decode"), true);
  add_common(app.add_subcommand("forge", "Affine-combination forgery by a coalition"), true);
  add_common(app.add_subcommand("pollute", "Sum-one substitution at an internal node"), true);
  add_common(app.add_subcommand("recover", "Build and count the coalition's key-recovery system"), true);
  auto* sweep = app.add_subcommand("lemma-sweep", "Compare predicted, Gaussian and brute-force counts");
  add_common(sweep, false);
  sweep->add_option("--format", opt.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  add_common(app.add_subcommand("demo", "Honest, pollution, forgery and recovery runs on the butterfly"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    return run(command, opt);
  } catch (const ConfigError& e) {
    std::cerr << "ncauth: config error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "ncauth: resource guard: " << e.what() << "\n";
    return 3;
  } catch (const HypothesisError& e) {
    std::cerr << "ncauth: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ncauth: error: " << e.what() << "\n";
    return 1;
  }
}
