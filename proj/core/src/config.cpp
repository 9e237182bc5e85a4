#include "vws/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "vws/error.hpp"

namespace vws {
namespace {

[[noreturn]] void fail_config(const std::string& path, const std::string& what) {
  throw ConfigError(path.empty() ? what : path + ": " + what);
}

// Walks one JSON object, remembering which keys were read so that leftovers can be rejected.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail_config(path_, "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  Section child(const std::string& key) {
    const json* v = find(key);
    static const json empty = json::object();
    return Section(v ? *v : empty, at(key));
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail_config(at(key), "expected a number");
    double x = v->get<double>();
    if (!std::isfinite(x)) fail_config(at(key), "must be finite");
    return x;
  }

  double positive(const std::string& key, double fallback) {
    double x = number(key, fallback);
    if (!(x > 0.0)) fail_config(at(key), "must be positive");
    return x;
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail_config(at(key), "expected an integer");
    return v->get<int>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) fail_config(at(key), "expected a string");
    return v->get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail_config(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_array()) fail_config(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      if (!e.is_number()) fail_config(at(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_array()) fail_config(at(key), "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      if (!e.is_number_integer()) fail_config(at(key) + "[" + std::to_string(i) + "]", "expected an integer");
      out.push_back(e.get<int>());
    }
    return out;
  }

  // Rejects every key that was never asked for.
  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it)
      if (!seen_.count(it.key())) fail_config(at(it.key()), "unknown key '" + it.key() + "'");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

// Converts module-level domain errors raised while interpreting a field into config errors.
template <class F>
auto interpret(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail_config(path, e.what());
  }
}

const std::vector<ProfileKind> kProfileKinds{
    ProfileKind::zero,      ProfileKind::constant,     ProfileKind::delta,
    ProfileKind::square_wave, ProfileKind::hat_wave,   ProfileKind::sine,
    ProfileKind::gaussian_bump, ProfileKind::tent,     ProfileKind::bump_derivative,
};

DataField parse_data_field(Section s) {
  std::string kind = s.text("kind", "zero");
  DataField d;
  if (kind == "plane-wave") {
    std::vector<int> k = s.integers("wave", {1, 0});
    if (k.empty() || k.size() > 2) fail_config(s.at("wave"), "expected one or two mode numbers");
    d = DataField::plane({k[0], k.size() > 1 ? k[1] : 0}, s.number("amplitude", 1.0));
  } else if (kind == "rough") {
    d = DataField::rough(s.positive("decay", 0.51), s.number("amplitude", 1.0));
  } else {
    auto it = std::find_if(kProfileKinds.begin(), kProfileKinds.end(),
                           [&](ProfileKind k) { return to_string(k) == kind; });
    if (it == kProfileKinds.end()) fail_config(s.at("kind"), "unknown data kind '" + kind + "'");
    Profile p;
    p.kind = *it;
    p.amplitude = s.number("amplitude", *it == ProfileKind::zero ? 0.0 : 1.0);
    p.width = s.positive("width", 1.0);
    p.wavenumber = s.number("wavenumber", 1.0);
    p.axis = s.integer("axis", 0);
    p.envelope = s.integer("envelope", 0);
    d = DataField::from(p);
  }
  s.finish();
  return d;
}

json data_field_json(const DataField& d) {
  json j;
  switch (d.kind) {
    case DataField::Kind::plane_wave:
      j["kind"] = "plane-wave";
      j["wave"] = {d.wave[0], d.wave[1]};
      j["amplitude"] = d.amplitude;
      break;
    case DataField::Kind::rough:
      j["kind"] = "rough";
      j["decay"] = d.decay;
      j["amplitude"] = d.amplitude;
      break;
    case DataField::Kind::profile:
      j["kind"] = to_string(d.profile.kind);
      j["amplitude"] = d.profile.amplitude;
      j["width"] = d.profile.width;
      j["wavenumber"] = d.profile.wavenumber;
      j["axis"] = d.profile.axis;
      j["envelope"] = d.profile.envelope;
      break;
  }
  return j;
}

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::validate_hypotheses: return "validate-hypotheses";
    case ExperimentKind::doi_check: return "doi-check";
    case ExperimentKind::solve: return "solve";
    case ExperimentKind::net: return "net";
    case ExperimentKind::uniqueness: return "uniqueness";
    case ExperimentKind::consistency: return "consistency";
    case ExperimentKind::mollifier_bench: return "mollifier-bench";
  }
  return "?";
}

std::vector<std::string> experiment_kind_names() {
  return {"validate-hypotheses", "doi-check", "solve", "net", "uniqueness", "consistency", "mollifier-bench"};
}

ExperimentKind experiment_kind_from(const std::string& name) {
  for (int k = 0; k <= int(ExperimentKind::mollifier_bench); ++k)
    if (to_string(ExperimentKind(k)) == name) return ExperimentKind(k);
  throw DomainError("unknown experiment kind '" + name + "'");
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig c;
  Section root(doc, "");

  {
    Section s = root.child("grid");
    c.grid.dim = s.integer("n", c.grid.dim);
    c.grid.points = s.integer("M", c.grid.points);
    c.grid.half_length = s.positive("L", c.grid.half_length);
    if (c.grid.dim != 1 && c.grid.dim != 2) fail_config(s.at("n"), "dimension must be 1 or 2");
    if (!power_of_two(c.grid.points) || c.grid.points < 4)
      fail_config(s.at("M"), "M must be a power of two (at least 4), got " + std::to_string(c.grid.points));
    s.finish();
  }
  {
    Section s = root.child("model");
    c.preset = s.text("preset", c.preset);
    if (const json* p = s.find("params")) {
      if (!p->is_object()) fail_config(s.at("params"), "expected an object of numbers");
      for (auto it = p->begin(); it != p->end(); ++it) {
        if (!it->is_number()) fail_config(s.at("params") + "." + it.key(), "expected a number");
        c.params[it.key()] = it->get<double>();
      }
    }
    s.finish();
  }
  {
    Section s = root.child("mollifier");
    std::string kind = s.text("kind", to_string(c.data_mollifier.kind));
    double width = s.positive("width", c.data_mollifier.width);
    MollifierKind mk = interpret(s.at("kind"), [&] { return mollifier_kind_from(kind); });
    int order = s.integer("moment-order", mk == MollifierKind::vanishing_moment
                                              ? Mollifier::vanishing_moment().moment_order
                                              : c.data_mollifier.moment_order);
    c.data_mollifier = Mollifier{mk, width, order};
    interpret(s.path(), [&] { validate(c.data_mollifier); return 0; });
    c.coefficient_width = s.positive("coefficient-width", c.coefficient_width);
    s.finish();
  }
  {
    Section s = root.child("scale");
    std::string kind = s.text("kind", to_string(c.scale.kind));
    ScaleKind sk = interpret(s.at("kind"), [&] { return scale_kind_from(kind); });
    c.scale.kind = sk;
    c.scale.exponent = s.positive("k", c.scale.exponent);
    c.scale.value = s.positive("value", c.scale.value);
    if (c.scale.value > 1.0) fail_config(s.at("value"), "constant scale must lie in (0, 1]");
    s.finish();
  }
  {
    Section s = root.child("ladder");
    c.eps = s.numbers("eps", c.eps);
    if (c.eps.empty()) fail_config(s.at("eps"), "ladder is empty");
    for (std::size_t i = 0; i < c.eps.size(); ++i) {
      if (!(c.eps[i] > 0.0 && c.eps[i] <= 1.0)) fail_config(s.at("eps"), "values must lie in (0, 1]");
      if (i > 0 && !(c.eps[i] < c.eps[i - 1])) fail_config(s.at("eps"), "ladder must be strictly decreasing");
    }
    s.finish();
  }
  {
    Section s = root.child("evolution");
    c.T = s.positive("T", c.T);
    if (const json* dt = s.find("dt")) {
      if (dt->is_string()) {
        if (dt->get<std::string>() != "auto") fail_config(s.at("dt"), "expected a positive number or \"auto\"");
        c.dt = 0.0;
      } else {
        c.dt = s.positive("dt", 0.0);
      }
    }
    c.orders = s.numbers("s", c.orders);
    if (c.orders.empty()) fail_config(s.at("s"), "at least one Sobolev order is required");
    if (s.has("N")) {
      c.N = s.integer("N", 0);
      if (c.N < 1) fail_config(s.at("N"), "must be positive");
    }
    s.finish();
  }
  {
    Section s = root.child("experiment");
    std::string kind = s.text("kind", to_string(c.kind));
    c.kind = interpret(s.at("kind"), [&] { return experiment_kind_from(kind); });
    c.q = s.integer("q", c.q);
    if (c.q < 1) fail_config(s.at("q"), "must be positive");
    {
      Section p = s.child("perturbation");
      c.perturbation_amplitude = p.number("amplitude", c.perturbation_amplitude);
      if (c.perturbation_amplitude < 0.0) fail_config(p.at("amplitude"), "must not be negative");
      c.perturbation_width = p.positive("width", c.perturbation_width);
      p.finish();
    }
    {
      Section t = s.child("tolerances");
      c.tolerances.slope_cap = t.positive("slope-cap", c.tolerances.slope_cap);
      c.tolerances.residual = t.positive("residual", c.tolerances.residual);
      c.tolerances.variation = t.positive("variation", c.tolerances.variation);
      c.tolerances.consistency = t.positive("consistency", c.tolerances.consistency);
      c.tolerances.probe = t.positive("probe", c.tolerances.probe);
      t.finish();
    }
    {
      Section b = s.child("bench");
      std::vector<int> beta = b.integers("beta", {c.bench.beta[0], c.bench.beta[1]});
      if (beta.empty() || beta.size() > 2) fail_config(b.at("beta"), "expected one or two derivative orders");
      for (int v : beta)
        if (v < 0) fail_config(b.at("beta"), "derivative orders must not be negative");
      c.bench.beta = {beta[0], beta.size() > 1 ? beta[1] : 0};
      c.bench.s = b.number("s", c.bench.s);
      c.bench.ell = b.integers("ell", c.bench.ell);
      for (int v : c.bench.ell)
        if (v < 1) fail_config(b.at("ell"), "orders must be at least 1");
      b.finish();
    }
    s.finish();
  }
  {
    Section s = root.child("doi");
    c.doi.C1 = s.positive("C1", c.doi.C1);
    c.doi.delta = s.positive("delta", c.doi.delta);
    if (c.doi.delta > 0.25) fail_config(s.at("delta"), "must lie in (0, 1/4]");
    Section x = s.child("xi");
    c.doi.xi_count = x.integer("count", c.doi.xi_count);
    if (c.doi.xi_count < 2) fail_config(x.at("count"), "at least 2 frequencies per axis");
    if (const json* sp = x.find("spacing")) {
      if (sp->is_string()) {
        if (sp->get<std::string>() != "dual") fail_config(x.at("spacing"), "expected a positive number or \"dual\"");
        c.doi.xi_spacing = 0.0;
      } else {
        c.doi.xi_spacing = x.positive("spacing", 0.0);
      }
    }
    x.finish();
    s.finish();
  }
  {
    Section s = root.child("output");
    c.output_directory = s.text("directory", c.output_directory);
    c.stride = s.integer("stride", c.stride);
    if (c.stride < 0) fail_config(s.at("stride"), "must not be negative");
    s.finish();
  }
  {
    Section s = root.child("data");
    if (s.has("u0")) c.data.u0 = parse_data_field(s.child("u0"));
    if (s.has("forcing")) {
      Section f = s.child("forcing");
      std::string time = f.text("time", "constant");
      double freq = f.number("frequency", 0.0);
      // The shape keys share the object with the time dependence.
      json shape = json::object();
      for (const char* key : {"kind", "amplitude", "width", "wavenumber", "axis", "envelope", "wave", "decay"})
        if (const json* v = f.find(key)) shape[key] = *v;
      f.finish();
      c.data.forcing = parse_data_field(Section(shape, f.path()));
      if (time == "constant") c.data.forcing_time = Forcing::Time::constant;
      else if (time == "oscillating") c.data.forcing_time = Forcing::Time::oscillating;
      else fail_config(f.at("time"), "expected \"constant\" or \"oscillating\"");
      c.data.forcing_frequency = freq;
    }
    c.data.amplitude_power = s.number("amplitude-power", c.data.amplitude_power);
    c.mollify_data = s.boolean("mollify", c.mollify_data);
    s.finish();
    interpret("data.u0", [&] { validate(c.data.u0, c.grid.dim); return 0; });
    interpret("data.forcing", [&] { validate(c.data.forcing, c.grid.dim); return 0; });
  }
  if (const json* v = root.find("seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0))
      fail_config("seed", "expected a non-negative integer");
    c.seed = v->get<std::uint64_t>();
  }
  c.workers = root.integer("workers", c.workers);
  if (c.workers < 1) fail_config("workers", "must be at least 1");
  root.finish();

  interpret("model", [&] { return config_model(c); });
  return c;
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(doc);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["grid"] = {{"n", c.grid.dim}, {"M", c.grid.points}, {"L", c.grid.half_length}};
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["model"] = {{"preset", c.preset}, {"params", params}};
  j["mollifier"] = {{"kind", to_string(c.data_mollifier.kind)},
                    {"width", c.data_mollifier.width},
                    {"moment-order", c.data_mollifier.moment_order},
                    {"coefficient-width", c.coefficient_width}};
  j["scale"] = {{"kind", to_string(c.scale.kind)}, {"k", c.scale.exponent}, {"value", c.scale.value}};
  j["ladder"] = {{"eps", c.eps}};
  json evo = {{"T", c.T}};
  evo["dt"] = c.dt == 0.0 ? json("auto") : json(c.dt);
  evo["s"] = c.orders;
  if (c.N > 0) evo["N"] = c.N;
  j["evolution"] = evo;
  j["experiment"] = {
      {"kind", to_string(c.kind)},
      {"q", c.q},
      {"perturbation", {{"amplitude", c.perturbation_amplitude}, {"width", c.perturbation_width}}},
      {"tolerances",
       {{"slope-cap", c.tolerances.slope_cap},
        {"residual", c.tolerances.residual},
        {"variation", c.tolerances.variation},
        {"consistency", c.tolerances.consistency},
        {"probe", c.tolerances.probe}}},
      {"bench", {{"beta", {c.bench.beta[0], c.bench.beta[1]}}, {"s", c.bench.s}, {"ell", c.bench.ell}}}};
  json xi = {{"count", c.doi.xi_count}};
  xi["spacing"] = c.doi.xi_spacing == 0.0 ? json("dual") : json(c.doi.xi_spacing);
  j["doi"] = {{"C1", c.doi.C1}, {"delta", c.doi.delta}, {"xi", xi}};
  j["output"] = {{"directory", c.output_directory}, {"stride", c.stride}};
  json forcing = data_field_json(c.data.forcing);
  forcing["time"] = c.data.forcing_time == Forcing::Time::constant ? "constant" : "oscillating";
  forcing["frequency"] = c.data.forcing_frequency;
  j["data"] = {{"u0", data_field_json(c.data.u0)},
               {"forcing", forcing},
               {"amplitude-power", c.data.amplitude_power},
               {"mollify", c.mollify_data}};
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j;
}

std::string serialise(const ExperimentConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

CoefficientModel config_model(const ExperimentConfig& cfg) {
  CoefficientModel m = preset(cfg.preset, cfg.grid.dim, cfg.params);
  if (cfg.N > 0) m.weight_exponent = cfg.N;
  return m;
}

int weight_exponent(const ExperimentConfig& cfg) { return config_model(cfg).weight_exponent; }

NetParams net_params(const ExperimentConfig& cfg) {
  NetParams p;
  p.grid = cfg.grid;
  p.coefficient_mollifier = Mollifier::gaussian(cfg.coefficient_width);
  p.data_mollifier = cfg.data_mollifier;
  p.scale = cfg.scale;
  p.eps = cfg.eps;
  p.T = cfg.T;
  p.dt = cfg.dt;
  p.orders = cfg.orders;
  p.N = weight_exponent(cfg);
  p.mollify_data = cfg.mollify_data;
  p.workers = cfg.workers;
  p.snapshot_stride = cfg.stride;
  p.seed = cfg.seed;
  p.slope_cap = cfg.tolerances.slope_cap;
  p.max_residual = cfg.tolerances.residual;
  return p;
}

std::string config_reference() {
  ExperimentConfig defaults;
  std::ostringstream out;
  out << "Experiment config (JSON). Every key is optional; unknown keys are rejected.\n"
         "  grid        n (1|2), M (power of two), L (half period)\n"
         "  model       preset (" ;
  auto names = preset_names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "|" : "") << names[i];
  out << "), params {name: value}\n"
         "  mollifier   data mollifier: kind (gaussian|vanishing-moment|flat-top), width, moment-order;\n"
         "              coefficient-width (gaussian used for the coefficients)\n"
         "  scale       kind (loglog|power|constant), k (power exponent), value (constant)\n"
         "  ladder      eps: strictly decreasing list in (0, 1]\n"
         "  evolution   T, dt (number or \"auto\"), s (Sobolev orders), N (weight exponent, preset default)\n"
         "  experiment  kind, q, perturbation {amplitude, width},\n"
         "              tolerances {slope-cap, residual, variation, consistency, probe},\n"
         "              bench {beta, s, ell}\n"
         "  doi         C1, delta, xi {count, spacing (number or \"dual\")}\n"
         "  data        u0 {kind, ...}, forcing {kind, ..., time, frequency}, amplitude-power, mollify\n"
         "              kinds: zero|constant|delta|square-wave|hat-wave|sine|gaussian-bump|tent|\n"
         "              bump-derivative|plane-wave|rough\n"
         "  output      directory, stride (snapshot stride, 0 disables)\n"
         "  seed, workers\n\n"
         "Defaults:\n"
      << serialise(defaults);
  return out.str();
}

}  // namespace vws
