#include "fracspec/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fracspec/error.hpp"

namespace fracspec {

using nlohmann::json;

namespace {

// Reads fields out of one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(path(key) + ": expected a number");
      out = v->get<double>();
    }
  }

  void read(const std::string& key, std::size_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0)
        throw ConfigError(path(key) + ": expected a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void read(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key) + ": expected true or false");
      out = v->get<bool>();
    }
  }

  void read(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(path(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void read(const std::string& key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) throw ConfigError(path(key) + ": expected an array of numbers");
      out.clear();
      for (const json& e : *v) {
        if (!e.is_number()) throw ConfigError(path(key) + ": expected an array of numbers");
        out.push_back(e.get<double>());
      }
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) throw ConfigError(path(key) + ": unknown key");
  }

  std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void read_block(ObjectReader& parent, const std::string& key, CaputoDirectBlock& b) {
  const json* v = parent.find(key);
  if (!v) return;
  ObjectReader r(*v, parent.path(key));
  r.read("function", b.function);
  r.read("mittag_a", b.mittag_a);
  r.read("samples", b.samples);
  if (const json* runs = r.find("runs")) {
    if (!runs->is_array()) throw ConfigError(r.path("runs") + ": expected an array");
    b.runs.clear();
    for (const json& e : *runs) {
      ObjectReader rr(e, r.path("runs[]"));
      LdtPair p;
      rr.read("L", p.L);
      rr.read("dt", p.dt);
      rr.finish();
      b.runs.push_back(p);
    }
  }
  r.finish();
}

void read_block(ObjectReader& parent, const std::string& key, PsiStabilityBlock& b) {
  const json* v = parent.find(key);
  if (!v) return;
  ObjectReader r(*v, parent.path(key));
  r.read("function", b.function);
  r.read("dts", b.dts);
  r.read("samples", b.samples);
  r.read("panels", b.panels);
  r.finish();
}

void read_block(ObjectReader& parent, const std::string& key, ToyPdeBlock& b) {
  const json* v = parent.find(key);
  if (!v) return;
  ObjectReader r(*v, parent.path(key));
  r.read("k", b.k);
  r.read("c", b.c);
  r.read("grid", b.grid);
  r.finish();
}

void read_block(ObjectReader& parent, const std::string& key, DiskWaveBlock& b) {
  const json* v = parent.find(key);
  if (!v) return;
  ObjectReader r(*v, parent.path(key));
  r.read("c0", b.c0);
  r.read("tau", b.tau);
  r.read("initial", b.initial);
  r.read("sensor_count", b.sensor_count);
  r.read("sensor_radius", b.sensor_radius);
  r.read("decimation", b.decimation);
  r.read("snapshot_count", b.snapshot_count);
  r.read("grid", b.grid);
  r.read("unscaled_psi_term", b.unscaled_psi_term);
  r.finish();
}

json to_json(const ExperimentConfig& c) {
  json runs = json::array();
  for (const LdtPair& p : c.caputo_direct.runs) runs.push_back({{"L", p.L}, {"dt", p.dt}});
  return {
      {"experiment", to_string(c.experiment)},
      {"method", std::string(to_string(c.method))},
      {"alpha", c.alpha},
      {"L", c.L},
      {"dt", c.dt},
      {"T", c.T},
      {"K", c.K},
      {"output_dir", c.output_dir},
      {"caputo_direct",
       {{"function", c.caputo_direct.function},
        {"mittag_a", c.caputo_direct.mittag_a},
        {"runs", runs},
        {"samples", c.caputo_direct.samples}}},
      {"psi_stability",
       {{"function", c.psi_stability.function},
        {"dts", c.psi_stability.dts},
        {"samples", c.psi_stability.samples},
        {"panels", c.psi_stability.panels}}},
      {"toy_pde", {{"k", c.toy_pde.k}, {"c", c.toy_pde.c}, {"grid", c.toy_pde.grid}}},
      {"disk_wave",
       {{"c0", c.disk_wave.c0},
        {"tau", c.disk_wave.tau},
        {"initial", c.disk_wave.initial},
        {"sensor_count", c.disk_wave.sensor_count},
        {"sensor_radius", c.disk_wave.sensor_radius},
        {"decimation", c.disk_wave.decimation},
        {"snapshot_count", c.disk_wave.snapshot_count},
        {"grid", c.disk_wave.grid},
        {"unscaled_psi_term", c.disk_wave.unscaled_psi_term}}},
  };
}

ExperimentConfig from_json(const json& j) {
  ExperimentConfig c;
  ObjectReader r(j, "");
  std::string name;
  r.read("experiment", name);
  if (!r.find("experiment")) throw ConfigError("experiment: required key missing");
  c.experiment = parse_experiment(name);
  std::string method = std::string(to_string(c.method));
  r.read("method", method);
  c.method = parse_quad_method(method);
  r.read("alpha", c.alpha);
  r.read("L", c.L);
  r.read("dt", c.dt);
  r.read("T", c.T);
  r.read("K", c.K);
  r.read("output_dir", c.output_dir);
  read_block(r, "caputo_direct", c.caputo_direct);
  read_block(r, "psi_stability", c.psi_stability);
  read_block(r, "toy_pde", c.toy_pde);
  read_block(r, "disk_wave", c.disk_wave);
  r.finish();
  c.validate();
  return c;
}

bool is_integer_multiple(double T, double dt) {
  const double n = std::round(T / dt);
  return n >= 1.0 && std::abs(T / dt - n) <= 1e-6 * std::max(1.0, n);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::CaputoDirect: return "caputo-direct";
    case ExperimentKind::PsiStability: return "psi-stability";
    case ExperimentKind::ToyPde: return "toy-pde";
    case ExperimentKind::DiskWave: return "disk-wave";
  }
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::CaputoDirect, ExperimentKind::PsiStability,
                           ExperimentKind::ToyPde, ExperimentKind::DiskWave})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown experiment '" + name + "'");
}

void ExperimentConfig::validate() const {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
  require(L >= 1, "L must be at least 1");
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  require(T > 0.0 && std::isfinite(T), "T must be positive");
  require(K >= 1, "K must be at least 1");
  require(!output_dir.empty(), "output_dir must not be empty");
  switch (experiment) {
    case ExperimentKind::CaputoDirect: {
      const auto& b = caputo_direct;
      const std::set<std::string> fns{"tsquared", "exp", "mittag", "constant"};
      require(fns.count(b.function) == 1, "caputo_direct.function: unknown test function '" + b.function + "'");
      require(b.mittag_a > 0.0, "caputo_direct.mittag_a must be positive");
      require(b.samples >= 1, "caputo_direct.samples must be at least 1");
      for (const LdtPair& p : b.runs) {
        require(p.L >= 1, "caputo_direct.runs: L must be at least 1");
        require(p.dt > 0.0, "caputo_direct.runs: dt must be positive");
        require(is_integer_multiple(T, p.dt), "caputo_direct.runs: T must be a multiple of dt");
      }
      if (b.runs.empty()) require(is_integer_multiple(T, dt), "T must be a multiple of dt");
      break;
    }
    case ExperimentKind::PsiStability: {
      const auto& b = psi_stability;
      const std::set<std::string> fns{"tsquared", "exp", "zero"};
      require(fns.count(b.function) == 1, "psi_stability.function: unknown test function '" + b.function + "'");
      require(b.samples >= 1, "psi_stability.samples must be at least 1");
      require(b.panels >= 1, "psi_stability.panels must be at least 1");
      for (double d : b.dts) {
        require(d > 0.0, "psi_stability.dts must be positive");
        require(is_integer_multiple(T, d), "psi_stability.dts: T must be a multiple of each dt");
      }
      if (b.dts.empty()) require(is_integer_multiple(T, dt), "T must be a multiple of dt");
      break;
    }
    case ExperimentKind::ToyPde:
      require(toy_pde.k > 0.0, "toy_pde.k must be positive");
      require(toy_pde.c > 0.0, "toy_pde.c must be positive");
      require(toy_pde.grid >= 2, "toy_pde.grid must be at least 2");
      require(K >= 2, "K must be at least 2");
      require(is_integer_multiple(T, dt), "T must be a multiple of dt");
      break;
    case ExperimentKind::DiskWave: {
      const auto& b = disk_wave;
      const std::set<std::string> inits{"dipole", "zero", "bump"};
      require(b.c0 > 0.0, "disk_wave.c0 must be positive");
      require(b.tau >= 0.0, "disk_wave.tau must be non-negative");
      require(inits.count(b.initial) == 1, "disk_wave.initial: unknown initial condition '" + b.initial + "'");
      require(b.sensor_radius >= 0.0 && b.sensor_radius <= 1.0, "disk_wave.sensor_radius must lie in [0,1]");
      require(b.decimation >= 1, "disk_wave.decimation must be at least 1");
      require(b.snapshot_count >= 1, "disk_wave.snapshot_count must be at least 1");
      require(b.grid >= 2, "disk_wave.grid must be at least 2");
      require(is_integer_multiple(T, dt), "T must be a multiple of dt");
      break;
    }
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

std::string serialize_config(const ExperimentConfig& cfg) { return to_json(cfg).dump(2); }

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

void assign(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  std::string pointer;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    pointer += "/" + key.substr(start, dot - start);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  const json::json_pointer ptr(pointer);
  if (!j.contains(ptr)) throw ConfigError("override: unknown key '" + key + "'");
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  j[ptr] = value;
}

}  // namespace

ExperimentConfig apply_override(const ExperimentConfig& cfg, const std::string& assignment) {
  return apply_overrides(cfg, {assignment});
}

ExperimentConfig apply_overrides(const ExperimentConfig& cfg, const std::vector<std::string>& assignments) {
  json j = to_json(cfg);
  for (const std::string& a : assignments) assign(j, a);
  return from_json(j);
}

std::string config_stamp(const ExperimentConfig& cfg) { return to_json(cfg).dump(); }

}  // namespace fracspec
