#include "aimh/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "aimh/core/error.hpp"
#include "aimh/targets/external.hpp"

namespace aimh {
namespace {

using Vec = std::vector<double>;
using Strings = std::vector<std::string>;

const std::map<std::string, std::map<std::string, Params>>& schemas() {
  static const std::map<std::string, std::map<std::string, Params>> table = {
      {"target",
       {{"example1", {{"alpha", 2000.0}}},
        {"gauss13", {{"r_inner", 0.05}, {"r_outer", 1.5}, {"sigma", 0.01}}},
        {"cauchy", {}},
        {"example4", {{"d", 2.5}, {"sigma2", 0.005}, {"simulator", Strings{}}, {"timeout_ms", 10000.0}}},
        {"uniform_box", {{"lower", Vec{0.0}}, {"upper", Vec{1.0}}}}}},
      {"initial",
       {{"target", {}},
        {"uniform", {{"lower", Vec{}}, {"upper", Vec{}}}},
        {"normal", {{"mean", Vec{}}, {"var", Vec{}}}},
        {"point", {{"x", Vec{}}}}}},
      {"kernel",
       {{"uniform_independence", {{"lower", Vec{}}, {"upper", Vec{}}}},
        {"normal_independence", {{"mean", Vec{}}, {"var", Vec{}}}},
        {"random_walk", {{"L", 0.02}, {"lower", Vec{}}, {"upper", Vec{}}}},
        {"gaussian_random_walk", {{"var", Vec{}}}},
        {"two_mode", {{"p", 0.4}, {"L", 0.02}, {"split", 0.5}}},
        {"normal_mixture",
         {{"base_mean", Vec{}}, {"base_var", Vec{}}, {"mode_var", Vec{}}, {"M0", 20.0}, {"M", 25.0}, {"eps1", 0.05},
          {"tau0", 0.5}}},
        {"suppressed_mixture",
         {{"base_mean", Vec{}}, {"base_var", Vec{}}, {"mode_var", Vec{}}, {"M0", 20.0}, {"M", 25.0}, {"eps1", 0.05},
          {"tau0", 0.5}, {"N", 1000.0}, {"N0", 1000.0}, {"eps2", 0.05}, {"delta", 0.1}, {"p", 1.3}, {"c0", 1.0},
          {"controller_window", 50.0}, {"controller_gain", 0.5}, {"base_fraction", 0.5}, {"c_max_factor", 1000.0}}},
        {"surrogate", {{"d", 2.5}, {"sigma2", 0.005}, {"w", 5.0}, {"ridge", 1e-8}, {"n_min", 10.0}}}}},
      {"wrap",
       {{"uniform_box", {{"eps", 0.05}, {"lower", Vec{}}, {"upper", Vec{}}}},
        {"student_t1", {{"eps", 0.05}, {"location", Vec{}}, {"scale", Vec{}}}}}},
      {"partition",
       {{"none", {}},
        {"ex1_quantile", {{"bins", 20.0}}},
        {"gauss13", {{"shells", 4.0}}},
        {"cauchy", {{"bins", 20.0}}},
        {"box_grid", {{"counts", Vec{10.0}}}}}},
  };
  return table;
}

int line_of(const YAML::Node& n) { return n.Mark().is_null() ? -1 : n.Mark().line + 1; }

std::string scalar(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) throw ConfigError(key, line_of(n), "expected a scalar");
  return n.Scalar();
}

double to_double(const YAML::Node& n, const std::string& key) {
  const std::string s = scalar(n, key);
  if (s == ".inf" || s == "inf") return kPosInf;
  if (s == "-.inf" || s == "-inf") return kNegInf;
  const auto v = wire::parse_double(s);
  if (!v) throw ConfigError(key, line_of(n), "expected a number, got '" + s + "'");
  return *v;
}

std::uint64_t to_count(const YAML::Node& n, const std::string& key) {
  const double v = to_double(n, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.007199254740992e15)
    throw ConfigError(key, line_of(n), "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t to_u64(const YAML::Node& n, const std::string& key) {
  const std::string s = scalar(n, key);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ConfigError(key, line_of(n), "expected an unsigned 64-bit integer");
  return v;
}

bool to_bool(const YAML::Node& n, const std::string& key) {
  const std::string s = scalar(n, key);
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError(key, line_of(n), "expected true or false");
}

Vec to_vector(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence()) throw ConfigError(key, line_of(n), "expected a list of numbers");
  Vec out;
  for (const auto& item : n) out.push_back(to_double(item, key));
  return out;
}

Strings to_strings(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence()) throw ConfigError(key, line_of(n), "expected a list of strings");
  Strings out;
  for (const auto& item : n) out.push_back(scalar(item, key));
  return out;
}

void require_map(const YAML::Node& n, const std::string& key) {
  if (!n.IsMap()) throw ConfigError(key, line_of(n), "expected a mapping");
}

// Parse `node` (a mapping with `kind`) against the schema of `section`.
// Keys listed in `extra` are left for the caller.
Section parse_section(const YAML::Node& node, const std::string& section, const std::set<std::string>& extra = {}) {
  require_map(node, section);
  const YAML::Node kind_node = node["kind"];
  if (!kind_node) throw ConfigError(section + ".kind", line_of(node), "missing kind");
  Section s;
  s.kind = scalar(kind_node, section + ".kind");
  const auto& kinds = schemas().at(section);
  const auto it = kinds.find(s.kind);
  if (it == kinds.end()) throw ConfigError(section + ".kind", line_of(kind_node), "unknown kind '" + s.kind + "'");
  s.params = it->second;
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (key == "kind" || extra.count(key)) continue;
    const std::string qualified = section + "." + key;
    auto p = s.params.find(key);
    if (p == s.params.end()) throw ConfigError(qualified, line_of(kv.first), "unknown key for kind '" + s.kind + "'");
    if (std::holds_alternative<double>(p->second)) p->second = to_double(kv.second, qualified);
    else if (std::holds_alternative<Vec>(p->second)) p->second = to_vector(kv.second, qualified);
    else if (std::holds_alternative<std::string>(p->second)) p->second = scalar(kv.second, qualified);
    else p->second = to_strings(kv.second, qualified);
  }
  return s;
}

KernelSpec parse_kernel(const YAML::Node& node) {
  Section s = parse_section(node, "kernel", {"every", "wrap"});
  KernelSpec k{s.kind, 1, std::move(s.params), std::nullopt};
  if (node["every"]) {
    k.every = to_count(node["every"], "kernel.every");
    if (k.every == 0) throw ConfigError("kernel.every", line_of(node["every"]), "must be positive");
  }
  if (node["wrap"]) k.wrap = parse_section(node["wrap"], "wrap");
  return k;
}

SamplerSpec parse_sampler(const YAML::Node& node) {
  require_map(node, "samplers");
  SamplerSpec s;
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (key == "name") s.name = scalar(kv.second, "samplers.name");
    else if (key == "doeblin_a") s.doeblin_a = to_double(kv.second, "samplers.doeblin_a");
    else if (key == "kernels") {
      if (!kv.second.IsSequence()) throw ConfigError("samplers.kernels", line_of(kv.second), "expected a list");
      for (const auto& k : kv.second) s.kernels.push_back(parse_kernel(k));
    } else {
      throw ConfigError("samplers." + key, line_of(kv.first), "unknown key");
    }
  }
  if (s.name.empty()) throw ConfigError("samplers.name", line_of(node), "missing name");
  return s;
}

DiagnosticsSpec parse_diagnostics(const YAML::Node& node, DiagnosticsSpec d) {
  require_map(node, "diagnostics");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    const std::string q = "diagnostics." + key;
    const YAML::Node& v = kv.second;
    if (key == "partition") d.partition = parse_section(v, "partition");
    else if (key == "snapshots") {
      d.snapshots.clear();
      if (!v.IsSequence()) throw ConfigError(q, line_of(v), "expected a list of iterations");
      for (const auto& item : v) d.snapshots.push_back(to_count(item, q));
    } else if (key == "geometric") d.geometric = to_bool(v, q);
    else if (key == "noise_replicates") d.noise_replicates = to_count(v, q);
    else if (key == "modes") {
      d.modes.clear();
      if (!v.IsSequence()) throw ConfigError(q, line_of(v), "expected a list of points");
      for (const auto& item : v) d.modes.push_back(to_vector(item, q));
    } else if (key == "split_coordinate") {
      if (v.IsNull()) d.split_coordinate.reset();
      else d.split_coordinate = to_count(v, q);
    } else if (key == "split_value") d.split_value = to_double(v, q);
    else if (key == "trace_chains") d.trace_chains = to_count(v, q);
    else if (key == "trace_iterations") d.trace_iterations = to_count(v, q);
    else throw ConfigError(q, line_of(kv.first), "unknown key");
  }
  return d;
}

template <class T>
void emit_value(YAML::Emitter& out, const T& v);

void emit_number(YAML::Emitter& out, double v) {
  if (std::isinf(v)) out << (v > 0 ? ".inf" : "-.inf");
  else out << wire::format_double(v);
}

void emit_params(YAML::Emitter& out, const Params& params) {
  for (const auto& [key, value] : params) {
    out << YAML::Key << key << YAML::Value;
    if (const auto* d = std::get_if<double>(&value)) emit_number(out, *d);
    else if (const auto* v = std::get_if<Vec>(&value)) {
      out << YAML::Flow << YAML::BeginSeq;
      for (double x : *v) emit_number(out, x);
      out << YAML::EndSeq;
    } else if (const auto* s = std::get_if<std::string>(&value)) out << YAML::DoubleQuoted << *s;
    else {
      out << YAML::Flow << YAML::BeginSeq;
      for (const auto& x : std::get<Strings>(value)) out << YAML::DoubleQuoted << x;
      out << YAML::EndSeq;
    }
  }
}

void emit_section(YAML::Emitter& out, const Section& s) {
  out << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << s.kind;
  emit_params(out, s.params);
  out << YAML::EndMap;
}

void check(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, -1, message);
}

}  // namespace

double param_double(const Params& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end() || !std::holds_alternative<double>(it->second)) throw ConfigError(key, -1, "missing number");
  return std::get<double>(it->second);
}

std::size_t param_count(const Params& p, const std::string& key) {
  const double v = param_double(p, key);
  if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError(key, -1, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

const std::vector<double>& param_vector(const Params& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end() || !std::holds_alternative<Vec>(it->second)) throw ConfigError(key, -1, "missing list");
  return std::get<Vec>(it->second);
}

const std::string& param_string(const Params& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end() || !std::holds_alternative<std::string>(it->second)) throw ConfigError(key, -1, "missing string");
  return std::get<std::string>(it->second);
}

const std::vector<std::string>& param_strings(const Params& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end() || !std::holds_alternative<Strings>(it->second)) throw ConfigError(key, -1, "missing list");
  return std::get<Strings>(it->second);
}

const Params& schema_for(const std::string& section, const std::string& kind) {
  const auto& kinds = schemas().at(section);
  const auto it = kinds.find(kind);
  if (it == kinds.end()) throw ConfigError(section + ".kind", -1, "unknown kind '" + kind + "'");
  return it->second;
}

ExperimentConfig preset_config(const std::string& name, bool full_scale) {
  auto section = [](const std::string& sec, const std::string& kind, Params overrides) {
    Section s{kind, schema_for(sec, kind)};
    for (auto& [k, v] : overrides) s.params.at(k) = std::move(v);
    return s;
  };
  auto kernel = [&](const std::string& kind, Params overrides) {
    Section s = section("kernel", kind, std::move(overrides));
    return KernelSpec{s.kind, 1, std::move(s.params), std::nullopt};
  };

  ExperimentConfig c;
  c.name = name;
  c.preset = name;
  c.full_scale = full_scale;
  c.seed = 1;
  c.output_dir = "out/" + name;
  c.diagnostics.trace_chains = 1;
  if (name == "ex1") {
    c.chains = full_scale ? 10000 : 2000;
    c.iterations = full_scale ? 10000 : 3000;
    c.burn_in = 500;
    c.target = section("target", "example1", {{"alpha", 2000.0}});
    c.initial = section("initial", "uniform", {{"lower", Vec{0.0}}, {"upper", Vec{1.0}}});
    c.samplers = {
        {"q1", {kernel("uniform_independence", {{"lower", Vec{0.0}}, {"upper", Vec{1.0}}})}, std::nullopt},
        {"q2", {kernel("random_walk", {{"L", 0.02}, {"lower", Vec{0.0}}, {"upper", Vec{1.0}}})}, std::nullopt},
        {"q3", {kernel("two_mode", {{"p", 0.4}, {"L", 0.02}, {"split", 0.5}})}, std::nullopt},
    };
    c.diagnostics.partition = section("partition", "ex1_quantile", {{"bins", 20.0}});
    c.diagnostics.modes = {{1.0 / 3.0}, {2.0 / 3.0}};
  } else if (name == "ex2") {
    c.chains = full_scale ? 20000 : 2000;
    c.iterations = full_scale ? 20000 : 3000;
    c.burn_in = 500;
    c.target = section("target", "gauss13", {});
    c.initial = section("initial", "normal", {{"mean", Vec{0.0, 0.0}}, {"var", Vec{1.0, 1.0}}});
    const Params mixture{{"base_mean", Vec{0.0, 0.0}}, {"base_var", Vec{1.0, 1.0}},
                         {"mode_var", Vec{0.03 * 0.03, 0.03 * 0.03}}, {"M0", 20.0}, {"M", 25.0}, {"eps1", 0.05},
                         {"tau0", 0.5}};
    Params suppressed = mixture;
    suppressed.insert({{"N", 1000.0}, {"N0", 1000.0}, {"eps2", 0.05}, {"delta", 0.1}, {"p", 1.3}});
    c.samplers = {
        {"q1", {kernel("normal_independence", {{"mean", Vec{0.0, 0.0}}, {"var", Vec{1.0, 1.0}}})}, std::nullopt},
        {"q2", {kernel("gaussian_random_walk", {{"var", Vec{0.09, 0.09}}})}, std::nullopt},
        {"q3", {kernel("normal_mixture", mixture)}, std::nullopt},
        {"q4", {kernel("suppressed_mixture", suppressed)}, std::nullopt},
    };
    c.diagnostics.partition = section("partition", "gauss13", {{"shells", 4.0}});
    // Filled with the layout by the builder when left empty.
    c.diagnostics.modes = {};
  } else if (name == "ex3") {
    c.chains = full_scale ? 10000 : 2000;
    c.iterations = full_scale ? 10000 : 2000;
    c.burn_in = 500;
    c.target = section("target", "cauchy", {});
    c.initial = section("initial", "normal", {{"mean", Vec{0.0}}, {"var", Vec{1.0}}});
    c.samplers = {
        {"q1", {kernel("normal_independence", {{"mean", Vec{0.0}}, {"var", Vec{1.0}}})}, std::nullopt},
        {"q3",
         {kernel("normal_mixture", {{"base_mean", Vec{0.0}}, {"base_var", Vec{1.0}}, {"mode_var", Vec{0.25}},
                                    {"M0", 70.0}, {"M", 80.0}, {"eps1", 0.05}, {"tau0", 0.5}})},
         std::nullopt},
    };
    c.diagnostics.partition = section("partition", "cauchy", {{"bins", 20.0}});
  } else if (name == "ex4") {
    c.chains = full_scale ? 20 : 4;
    c.iterations = 50000;
    c.burn_in = 5000;
    c.target = section("target", "example4", {});
    const Vec lo(5, 0.0), hi(5, 1.0);
    c.initial = section("initial", "uniform", {{"lower", lo}, {"upper", hi}});
    c.samplers = {
        {"q1", {kernel("uniform_independence", {{"lower", lo}, {"upper", hi}})}, std::nullopt},
        {"q2", {kernel("random_walk", {{"L", 0.1}, {"lower", lo}, {"upper", hi}})}, std::nullopt},
        {"q3", {kernel("surrogate", {{"d", 2.5}, {"sigma2", 0.005}, {"w", 5.0}})}, std::nullopt},
    };
    c.diagnostics.split_coordinate = 0;
    c.diagnostics.split_value = 0.5;
    c.diagnostics.trace_iterations = 50000;
  } else {
    throw ConfigError("preset", -1, "unknown preset '" + name + "'");
  }
  return c;
}

void validate_config(const ExperimentConfig& c) {
  check(!c.target.kind.empty(), "target", "missing target");
  check(c.chains > 0, "chains", "must be positive");
  check(!c.samplers.empty(), "samplers", "at least one sampler is required");
  std::set<std::string> names;
  for (const auto& s : c.samplers) {
    check(!s.name.empty(), "samplers.name", "missing name");
    check(s.name.find_first_of("/\\ ") == std::string::npos, "samplers.name", "name must not contain '/', '\\' or spaces");
    check(names.insert(s.name).second, "samplers.name", "duplicate sampler name '" + s.name + "'");
    check(!s.kernels.empty(), "samplers.kernels", "sampler '" + s.name + "' has no kernels");
    if (s.doeblin_a) check(*s.doeblin_a >= 0.0 && *s.doeblin_a <= 1.0, "samplers.doeblin_a", "must lie in [0, 1]");
    for (const auto& k : s.kernels) {
      check(k.every > 0, "kernel.every", "must be positive");
      if (k.wrap) {
        const double eps = param_double(k.wrap->params, "eps");
        check(eps >= 0.0 && eps <= 1.0, "wrap.eps", "must lie in [0, 1]");
      }
      if (k.kind == "two_mode") {
        const double p = param_double(k.params, "p");
        check(p > 0.0 && p < 0.5, "kernel.p", "must lie in (0, 0.5)");
        check(param_double(k.params, "L") > 0.0, "kernel.L", "must be positive");
      }
      if (k.kind == "random_walk") check(param_double(k.params, "L") > 0.0, "kernel.L", "must be positive");
      if (k.kind == "normal_mixture" || k.kind == "suppressed_mixture") {
        const auto m0 = param_count(k.params, "M0");
        const auto m = param_count(k.params, "M");
        check(m0 >= 1 && m0 <= m, "kernel.M0", "need 1 <= M0 <= M");
        check(param_double(k.params, "eps1") > 0.0, "kernel.eps1", "must be positive");
        check(param_double(k.params, "tau0") > 0.0, "kernel.tau0", "must be positive");
      }
      if (k.kind == "suppressed_mixture") {
        const auto n0 = param_count(k.params, "N0");
        const auto n = param_count(k.params, "N");
        check(n0 >= 1 && n0 <= n, "kernel.N0", "need 1 <= N0 <= N");
        check(param_double(k.params, "delta") > 0.0, "kernel.delta", "must be positive");
        check(param_double(k.params, "p") > 1.0, "kernel.p", "must exceed 1");
      }
      if (k.kind == "surrogate") {
        check(param_double(k.params, "sigma2") > 0.0, "kernel.sigma2", "must be positive");
        check(param_double(k.params, "w") > 0.0, "kernel.w", "must be positive");
      }
    }
  }
  if (c.target.kind == "example1") check(param_double(c.target.params, "alpha") > 0.0, "target.alpha", "must be positive");
  if (c.target.kind == "example4") check(param_double(c.target.params, "sigma2") > 0.0, "target.sigma2", "must be positive");
  check(c.diagnostics.noise_replicates > 0, "diagnostics.noise_replicates", "must be positive");
}

ExperimentConfig parse_config(const std::string& text, const ParseOptions& options) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, std::string("syntax error: ") + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError("target", -1, "missing target");
  require_map(root, "<document>");

  ExperimentConfig c;
  bool full_scale = options.full_scale;
  if (root["full_scale"]) full_scale = full_scale || to_bool(root["full_scale"], "full_scale");
  if (root["preset"]) c = preset_config(scalar(root["preset"], "preset"), full_scale);
  c.full_scale = full_scale;

  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "preset" || key == "full_scale") continue;
    if (key == "name") c.name = scalar(v, key);
    else if (key == "seed") c.seed = to_u64(v, key);
    else if (key == "chains") {
      c.chains = to_count(v, key);
      if (c.chains == 0) throw ConfigError(key, line_of(v), "must be positive");
    }
    else if (key == "iterations") c.iterations = to_count(v, key);
    else if (key == "burn_in") c.burn_in = to_count(v, key);
    else if (key == "target") c.target = parse_section(v, "target");
    else if (key == "initial") c.initial = parse_section(v, "initial");
    else if (key == "samplers") {
      if (!v.IsSequence()) throw ConfigError(key, line_of(v), "expected a list");
      c.samplers.clear();
      for (const auto& s : v) c.samplers.push_back(parse_sampler(s));
    } else if (key == "diagnostics") c.diagnostics = parse_diagnostics(v, c.diagnostics);
    else if (key == "output") {
      require_map(v, key);
      for (const auto& o : v) {
        const std::string ok = o.first.as<std::string>();
        if (ok != "dir") throw ConfigError("output." + ok, line_of(o.first), "unknown key");
        c.output_dir = scalar(o.second, "output.dir");
      }
    } else {
      throw ConfigError(key, line_of(kv.first), "unknown key");
    }
  }
  if (c.target.kind.empty()) throw ConfigError("target", -1, "missing target");
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", -1, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), options);
}

std::string emit_config(const ExperimentConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << c.name;
  if (!c.preset.empty()) out << YAML::Key << "preset" << YAML::Value << c.preset;
  out << YAML::Key << "full_scale" << YAML::Value << (c.full_scale ? "true" : "false");
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "chains" << YAML::Value << c.chains;
  out << YAML::Key << "iterations" << YAML::Value << c.iterations;
  out << YAML::Key << "burn_in" << YAML::Value << c.burn_in;
  out << YAML::Key << "target" << YAML::Value;
  emit_section(out, c.target);
  out << YAML::Key << "initial" << YAML::Value;
  emit_section(out, c.initial);
  out << YAML::Key << "samplers" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : c.samplers) {
    out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << s.name;
    if (s.doeblin_a) {
      out << YAML::Key << "doeblin_a" << YAML::Value;
      emit_number(out, *s.doeblin_a);
    }
    out << YAML::Key << "kernels" << YAML::Value << YAML::BeginSeq;
    for (const auto& k : s.kernels) {
      out << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << k.kind;
      out << YAML::Key << "every" << YAML::Value << k.every;
      emit_params(out, k.params);
      if (k.wrap) {
        out << YAML::Key << "wrap" << YAML::Value;
        emit_section(out, *k.wrap);
      }
      out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndSeq;
  const DiagnosticsSpec& d = c.diagnostics;
  out << YAML::Key << "diagnostics" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "partition" << YAML::Value;
  emit_section(out, d.partition);
  out << YAML::Key << "snapshots" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto s : d.snapshots) out << s;
  out << YAML::EndSeq;
  out << YAML::Key << "geometric" << YAML::Value << (d.geometric ? "true" : "false");
  out << YAML::Key << "noise_replicates" << YAML::Value << d.noise_replicates;
  out << YAML::Key << "modes" << YAML::Value << YAML::BeginSeq;
  for (const auto& m : d.modes) {
    out << YAML::Flow << YAML::BeginSeq;
    for (double x : m) emit_number(out, x);
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "split_coordinate" << YAML::Value;
  if (d.split_coordinate) out << *d.split_coordinate;
  else out << YAML::Null;
  out << YAML::Key << "split_value" << YAML::Value;
  emit_number(out, d.split_value);
  out << YAML::Key << "trace_chains" << YAML::Value << d.trace_chains;
  out << YAML::Key << "trace_iterations" << YAML::Value << d.trace_iterations;
  out << YAML::EndMap;
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap << YAML::Key << "dir" << YAML::Value
      << YAML::DoubleQuoted << c.output_dir << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace aimh
