#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "vws/config.hpp"
#include "vws/error.hpp"
#include "vws/io.hpp"
#include "vws/runner.hpp"

using namespace vws;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("vws-cli-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Invocation {
  int status = -1;
  std::string output;
};

// Runs the vws binary with stdout and stderr captured.
Invocation vws_cli(const fs::path& dir, const std::string& args, const std::string& config) {
  fs::path cfg = dir / "config.json";
  write_text(cfg, config);
  fs::path log = dir / "log.txt";
  std::string cmd = std::string("\"") + VWS_CLI + "\" " + args + " \"" + cfg.string() + "\" --out \"" +
                    (dir / "out").string() + "\" > \"" + log.string() + "\" 2>&1";
  int raw = std::system(cmd.c_str());
  Invocation inv;
  inv.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  inv.output = slurp(log);
  return inv;
}

const char* kFreeSolve = R"({"grid":{"n":1,"M":64,"L":8},"model":{"preset":"free"},
  "experiment":{"kind":"solve"},"evolution":{"T":1},
  "data":{"u0":{"kind":"gaussian-bump","width":1}}})";

}  // namespace

TEST_CASE("validate-hypotheses on ultra-diagonal defaults passes with the band") {
  fs::path dir = scratch("ultra");
  auto inv = vws_cli(dir, "validate-hypotheses", R"({"grid":{"n":2,"M":32,"L":8},"model":{"preset":"ultra-diagonal"}})");
  INFO(inv.output);
  CHECK(inv.status == 0);
  json report = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["pass"] == true);
  CHECK(report["software"]["name"] == "vws");
  CHECK(report["experiment"] == "validate-hypotheses");
  const json& band = report["result"]["principal_band"];
  CHECK(band["lower"] == doctest::Approx(0.5));
  CHECK(band["upper"] == doctest::Approx(1.5));
  double mu = band["mu"];
  CHECK(mu >= 0.5);
  CHECK(mu <= 1.5);
  CHECK(report["result"]["hypotheses"]["ellipticity"]["ratio_min"].size() == 5);
}

TEST_CASE("solve on the free preset keeps the L2 norm column constant") {
  fs::path dir = scratch("solve");
  auto inv = vws_cli(dir, "solve", kFreeSolve);
  INFO(inv.output);
  REQUIRE(inv.status == 0);
  std::ifstream csv(dir / "out" / "norms-eps-0.125.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,s,norm,smooth_integrand,smooth_integral");
  double first = -1.0;
  double worst = 0.0;
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<double> cols;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 5);
    CHECK(cols[1] == 0.0);
    if (first < 0.0) first = cols[2];
    worst = std::max(worst, std::abs(cols[2] - first) / first);
    ++rows;
  }
  CHECK(rows > 10);
  CHECK(worst < 1e-7);
  for (double e : {0.125, 0.0625, 0.03125, 0.015625, 0.0078125})
    CHECK(fs::exists(dir / "out" / ("norms-eps-" + eps_label(e) + ".csv")));
}

TEST_CASE("net with a three-member ladder exits nonzero with the ladder message") {
  fs::path dir = scratch("short");
  auto inv = vws_cli(dir, "net", R"({"grid":{"n":1,"M":64,"L":8},"ladder":{"eps":[0.5,0.25,0.125]},
                                     "data":{"u0":{"kind":"gaussian-bump"}}})");
  CHECK(inv.status != 0);
  CHECK(inv.output.find("at least 4") != std::string::npos);
}

TEST_CASE("config errors exit with status 2 and name the key") {
  fs::path dir = scratch("bad");
  auto inv = vws_cli(dir, "solve", R"({"moolifier":{}})");
  CHECK(inv.status == 2);
  CHECK(inv.output.find("moolifier") != std::string::npos);
  auto mismatch = vws_cli(dir, "net", kFreeSolve);
  CHECK(mismatch.status == 2);
  CHECK(mismatch.output.find("subcommand") != std::string::npos);
}

TEST_CASE("exit status follows the pass flags of the report") {
  fs::path dir = scratch("verdict");
  // A principal part that degenerates fails the ellipticity hypothesis.
  auto inv = vws_cli(dir, "validate-hypotheses",
                     R"({"grid":{"n":1,"M":64,"L":8},"model":{"preset":"elliptic-lipschitz","params":{"nu":5}}})");
  INFO(inv.output);
  json report = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["pass"] == all_pass(report["result"]));
  CHECK((inv.status == 0) == report["pass"].get<bool>());
}

TEST_CASE("identical config and seed give byte-identical reports apart from timings") {
  ExperimentConfig cfg = parse_config(R"({"grid":{"n":1,"M":64,"L":8},"model":{"preset":"delta-potential"},
    "experiment":{"kind":"net"},"evolution":{"T":0.05,"s":[0,0.5]},
    "ladder":{"eps":[0.25,0.125,0.0625,0.03125]},"data":{"u0":{"kind":"rough"}},"seed":11})");
  auto strip = [](json r) {
    r.erase("timings");
    r["config"].erase("workers");
    return r.dump(2);
  };
  RunOptions a{scratch("det-a")};
  RunOptions b{scratch("det-b")};
  cfg.workers = 4;
  auto ra = run(cfg, a);
  cfg.workers = 1;
  auto rb = run(cfg, b);
  CHECK(strip(ra.report) == strip(rb.report));
  for (const char* name : {"norms-eps-0.25.csv", "norms-eps-0.03125.csv"})
    CHECK(slurp(a.out_dir / name) == slurp(b.out_dir / name));

  cfg.seed = 12;
  auto rc = run(cfg, RunOptions{scratch("det-c")});
  CHECK(strip(ra.report) != strip(rc.report));
}

TEST_CASE("snapshots are written at the configured stride") {
  ExperimentConfig cfg = parse_config(kFreeSolve);
  cfg.eps = {0.5};
  cfg.T = 0.1;
  cfg.dt = 0.01;
  cfg.stride = 5;
  RunOptions opt{scratch("snap")};
  run(cfg, opt);
  json snap = json::parse(slurp(opt.out_dir / "snapshot-eps-0.5-0.json"));
  CHECK(snap["t"] == 0.0);
  CHECK(snap["u"].size() == 64);
  CHECK(snap["u"][0].size() == 2);
  CHECK(fs::exists(opt.out_dir / "snapshot-eps-0.5-2.json"));
}

TEST_CASE("every experiment kind reports raw numbers with its verdicts") {
  ExperimentConfig cfg = parse_config(R"({"grid":{"n":1,"M":64,"L":8},"evolution":{"T":0.2},
    "ladder":{"eps":[0.25,0.125,0.0625,0.03125]},"data":{"u0":{"kind":"gaussian-bump"}},
    "doi":{"xi":{"count":16}}})");
  for (auto kind : {ExperimentKind::doi_check, ExperimentKind::net, ExperimentKind::uniqueness,
                    ExperimentKind::mollifier_bench}) {
    cfg.kind = kind;
    RunOptions opt;
    opt.write_files = false;
    auto res = run(cfg, opt);
    INFO(to_string(kind));
    CHECK(res.pass);
    CHECK(res.files.empty());
    CHECK(res.report["result"].dump().find("\"pass\"") != std::string::npos);
  }
  cfg.kind = ExperimentKind::consistency;
  CHECK_THROWS_AS(run(cfg, RunOptions{scratch("cons")}), DomainError);
}

TEST_CASE("module errors carry the stage") {
  ExperimentConfig cfg = parse_config(kFreeSolve);
  cfg.kind = ExperimentKind::consistency;
  try {
    run(cfg, RunOptions{scratch("stage")});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stage consistency") != std::string::npos);
  }
}

TEST_CASE("all_pass needs at least one verdict") {
  CHECK_FALSE(all_pass(json::object()));
  CHECK(all_pass(json{{"a", {{"pass", true}}}}));
  CHECK_FALSE(all_pass(json{{"a", {{"pass", true}}}, {"b", json::array({{{"pass", false}}})}}));
}

TEST_CASE("consistency runs report their verdict") {
  ExperimentConfig cfg = parse_config(R"({"grid":{"n":1,"M":64,"L":8},"model":{"preset":"smooth-consistency"},
    "experiment":{"kind":"consistency"},"mollifier":{"kind":"vanishing-moment"},"scale":{"kind":"power","k":1},
    "evolution":{"T":0.5},"data":{"u0":{"kind":"gaussian-bump"}}})");
  RunOptions opt;
  opt.write_files = false;
  auto res = run(cfg, opt);
  CHECK(res.pass);
  CHECK(res.report["result"]["decreasing"] == true);
  CHECK(res.report["result"]["final_error"].get<double>() < 1e-4);
}

TEST_CASE("shipped configs parse and round-trip") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(VWS_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().string());
    ExperimentConfig cfg = parse_config(slurp(entry.path()));
    CHECK(parse_config(serialise(cfg)) == cfg);
    ++count;
  }
  CHECK(count >= 7);
}
