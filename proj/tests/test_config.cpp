#include <doctest.h>

#include <random>
#include <string>

#include "vws/config.hpp"
#include "vws/error.hpp"

using namespace vws;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config fills defaults and leaves dt automatic") {
  auto c = parse_config(R"({"grid":{"n":1,"M":64,"L":8},"model":{"preset":"free"},
                            "experiment":{"kind":"solve"},"evolution":{"T":1}})");
  CHECK(c.grid.dim == 1);
  CHECK(c.grid.points == 64);
  CHECK(c.grid.half_length == 8.0);
  CHECK(c.kind == ExperimentKind::solve);
  CHECK(c.dt == 0.0);
  CHECK(c.eps.size() == 5);
  CHECK(c.scale == ScaleFn::loglog());
  CHECK(c.data_mollifier == Mollifier::gaussian(0.5));
  CHECK(c.tolerances.slope_cap == 10.0);
  CHECK(to_json(c)["evolution"]["dt"] == "auto");
  CHECK(net_params(c).N == 2);
}

TEST_CASE("ladder must be strictly decreasing") {
  CHECK(error_of(R"({"ladder":{"eps":[0.5,0.5]}})").find("strictly decreasing") != std::string::npos);
  CHECK(error_of(R"({"ladder":{"eps":[0.25,0.5]}})").find("strictly decreasing") != std::string::npos);
  CHECK(error_of(R"({"ladder":{"eps":[1.5,0.5]}})").find("ladder.eps") != std::string::npos);
}

TEST_CASE("unknown keys are named with their path") {
  CHECK(error_of(R"({"moolifier":{"kind":"gaussian"}})").find("moolifier") != std::string::npos);
  std::string nested = error_of(R"({"experiment":{"tolerances":{"slope_cap":3}}})");
  CHECK(nested.find("experiment.tolerances.slope_cap") != std::string::npos);
  CHECK(error_of(R"({"data":{"u0":{"kind":"delta","mass":1}}})").find("data.u0.mass") != std::string::npos);
}

TEST_CASE("schema violations") {
  CHECK(error_of(R"({"grid":{"M":48}})").find("power of two") != std::string::npos);
  CHECK(error_of(R"({"grid":{"n":3}})").find("grid.n") != std::string::npos);
  CHECK(error_of(R"({"grid":{"L":"eight"}})").find("grid.L") != std::string::npos);
  CHECK(error_of(R"({"experiment":{"tolerances":{"residual":0}}})").find("positive") != std::string::npos);
  CHECK(error_of(R"({"experiment":{"kind":"simulate"}})").find("experiment.kind") != std::string::npos);
  CHECK(error_of(R"({"evolution":{"dt":"fast"}})").find("evolution.dt") != std::string::npos);
  CHECK(error_of(R"({"evolution":{"dt":-0.1}})").find("evolution.dt") != std::string::npos);
  CHECK(error_of(R"({"model":{"preset":"nonexistent"}})").find("model") != std::string::npos);
  CHECK(error_of(R"({"mollifier":{"kind":"box"}})").find("mollifier.kind") != std::string::npos);
  CHECK(error_of(R"({"doi":{"delta":0.5}})").find("doi.delta") != std::string::npos);
  CHECK(error_of(R"({"workers":0})").find("workers") != std::string::npos);
  CHECK(error_of(R"({"seed":-1})").find("seed") != std::string::npos);
  CHECK(error_of("{\"grid\":").find("malformed") != std::string::npos);
  CHECK(error_of("[1,2]").find("object") != std::string::npos);
}

TEST_CASE("explicit choices are read back") {
  auto c = parse_config(R"({
    "grid":{"n":2,"M":32,"L":6},
    "model":{"preset":"ultra-diagonal","params":{"nu":0}},
    "mollifier":{"kind":"vanishing-moment","moment-order":6,"width":0.4,"coefficient-width":0.3},
    "scale":{"kind":"power","k":1.5},
    "ladder":{"eps":[0.2,0.1,0.05,0.025]},
    "evolution":{"T":0.5,"dt":0.001,"s":[0,1],"N":3},
    "experiment":{"kind":"uniqueness","q":2,"perturbation":{"amplitude":0.5,"width":2}},
    "doi":{"xi":{"spacing":"dual"}},
    "data":{"u0":{"kind":"plane-wave","wave":[2,-1]},
            "forcing":{"kind":"sine","amplitude":0.3,"time":"oscillating","frequency":2},
            "amplitude-power":-1,"mollify":false},
    "output":{"directory":"results","stride":10},
    "seed":42,"workers":3})");
  CHECK(c.params.at("nu") == 0.0);
  CHECK(c.data_mollifier == Mollifier::vanishing_moment(6, 0.4));
  CHECK(c.coefficient_width == 0.3);
  CHECK(c.scale.kind == ScaleKind::power);
  CHECK(c.scale.exponent == 1.5);
  CHECK(c.dt == 0.001);
  CHECK(c.orders == std::vector<double>{0.0, 1.0});
  CHECK(c.N == 3);
  CHECK(config_model(c).weight_exponent == 3);
  CHECK(c.q == 2);
  CHECK(c.perturbation_amplitude == 0.5);
  CHECK(c.doi.xi_spacing == 0.0);
  CHECK(c.data.u0 == DataField::plane({2, -1}));
  CHECK(c.data.forcing.profile.kind == ProfileKind::sine);
  CHECK(c.data.forcing_time == Forcing::Time::oscillating);
  CHECK(c.data.forcing_frequency == 2.0);
  CHECK(c.data.amplitude_power == -1.0);
  CHECK_FALSE(c.mollify_data);
  CHECK(c.stride == 10);
  CHECK(c.seed == 42);
  CHECK(c.workers == 3);
  CHECK(parse_config(serialise(c)) == c);
}

TEST_CASE("serialisation round-trips") {
  ExperimentConfig defaults;
  CHECK(parse_config(serialise(defaults)) == defaults);
  CHECK(parse_config("{}") == defaults);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<std::string> presets = preset_names();
  for (int trial = 0; trial < 200; ++trial) {
    ExperimentConfig c;
    c.grid = GridSpec{1 + int(rng() % 2), 1 << (3 + rng() % 5), 0.5 + 10.0 * unit(rng)};
    c.preset = presets[rng() % presets.size()];
    try {
      config_model(c);
    } catch (const Error&) {
      c.grid.dim = 3 - c.grid.dim;  // the preset exists in the other dimension only
    }
    c.kind = ExperimentKind(rng() % 7);
    c.scale = rng() % 3 == 0 ? ScaleFn::power(0.1 + unit(rng)) : ScaleFn::loglog();
    c.eps.clear();
    double e = 0.2 + 0.8 * unit(rng);
    for (int k = 0; k < 4 + int(rng() % 3); ++k, e *= 0.3 + 0.6 * unit(rng)) c.eps.push_back(e);
    c.T = 0.01 + unit(rng);
    c.dt = rng() % 2 ? 0.0 : 1e-4 * (1.0 + unit(rng));
    c.orders = {unit(rng) - 0.5, 1.0 / 3.0};
    c.N = int(rng() % 4);
    c.tolerances.probe = unit(rng) + 1e-3;
    c.doi.xi_spacing = rng() % 2 ? 0.0 : unit(rng) + 0.01;
    c.data.u0 = rng() % 2 ? DataField::rough(0.5 + unit(rng), unit(rng))
                          : DataField::from(Profile::gaussian_bump(unit(rng), 0.2 + unit(rng), 2));
    c.data.amplitude_power = unit(rng);
    c.seed = rng();
    c.workers = 1 + int(rng() % 8);
    INFO(serialise(c));
    CHECK(parse_config(serialise(c)) == c);
  }
}

TEST_CASE("reference lists every section") {
  std::string ref = config_reference();
  for (const char* key : {"grid", "model", "mollifier", "scale", "ladder", "evolution", "experiment", "doi", "data",
                          "output", "seed", "workers", "ultra-diagonal"})
    CHECK(ref.find(key) != std::string::npos);
}
