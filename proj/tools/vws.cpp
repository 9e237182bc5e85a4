#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vws/config.hpp"
#include "vws/error.hpp"
#include "vws/runner.hpp"

namespace {

// Exit codes: 0 all verdicts pass, 1 some verdict failed, 2 bad invocation or config, 3 runtime error.
constexpr int kFailed = 1;
constexpr int kBadConfig = 2;
constexpr int kRuntime = 3;

struct Invocation {
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool verbose = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vws::ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

vws::ExperimentConfig load(const std::string& subcommand, const Invocation& inv) {
  vws::json doc;
  try {
    doc = vws::json::parse(read_file(inv.config_path));
  } catch (const vws::json::parse_error& e) {
    throw vws::ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw vws::ConfigError("config must be a JSON object");
  auto& exp = doc["experiment"];
  if (exp.is_null()) exp = vws::json::object();
  if (exp.is_object()) {
    if (!exp.contains("kind")) exp["kind"] = subcommand;
    else if (exp["kind"] != subcommand)
      throw vws::ConfigError("experiment.kind is " + exp["kind"].dump() + " but the subcommand is " + subcommand);
  }
  vws::ExperimentConfig cfg = vws::config_from_json(doc);
  if (inv.workers > 0) cfg.workers = inv.workers;
  if (inv.seed_set) cfg.seed = inv.seed;
  if (!inv.out_dir.empty()) cfg.output_directory = inv.out_dir;
  return cfg;
}

int execute(const std::string& subcommand, const Invocation& inv) {
  vws::ExperimentConfig cfg;
  try {
    cfg = load(subcommand, inv);
  } catch (const vws::Error& e) {
    std::cerr << "vws: config error: " << e.what() << '\n';
    return kBadConfig;
  }
  vws::RunOptions opt;
  opt.out_dir = cfg.output_directory;
  if (inv.verbose) opt.log = &std::cerr;
  try {
    vws::RunResult res = vws::run(cfg, opt);
    std::cout << "vws " << subcommand << ": " << (res.pass ? "PASS" : "FAIL") << " (report: "
              << (opt.out_dir / "report.json").string() << ")\n";
    return res.pass ? 0 : kFailed;
  } catch (const vws::ConfigError& e) {
    std::cerr << "vws: config error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "vws: error: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Very weak solutions of Schroedinger-type equations with singular coefficients"};
  app.footer("\n" + vws::config_reference());
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vws::kSoftwareVersion));

  Invocation inv;
  std::string chosen;
  for (const std::string& name : vws::experiment_kind_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("config", inv.config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", inv.out_dir, "output directory (default: output.directory, ./out)");
    sub->add_option("--workers", inv.workers, "worker threads, overrides the config")->check(CLI::PositiveNumber);
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
      inv.seed = s;
      inv.seed_set = true;
    }, "random seed, overrides the config");
    sub->add_flag("--verbose", inv.verbose, "log pipeline stages to stderr");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kBadConfig;
  }
  return execute(chosen, inv);
}
