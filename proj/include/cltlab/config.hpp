#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "cltlab/errors.hpp"
#include "cltlab/exact_engine.hpp"
#include "cltlab/gaussfit.hpp"
#include "cltlab/json_writer.hpp"
#include "cltlab/scheme.hpp"

namespace cltlab {

enum class run_mode { exact, mc, auto_mode };

inline const char* run_mode_name(run_mode m) {
  switch (m) {
    case run_mode::exact: return "exact";
    case run_mode::mc: return "mc";
    case run_mode::auto_mode: return "auto";
  }
  return "auto";
}

// Canonical parsed form of one distribution, kept for config echoing.
struct dist_spec {
  bool is_lattice = true;
  rational step{1};
  rational offset{0};
  std::vector<lattice_atom> atoms;
  cont_family family = cont_family::gaussian;
  double param = 1.0;

  distribution build() const {
    if (is_lattice) return distribution(lattice_dist::make(step, offset, atoms));
    switch (family) {
      case cont_family::gaussian: return distribution(continuous_dist::gaussian(param));
      case cont_family::uniform: return distribution(continuous_dist::uniform(param));
      case cont_family::exponential: return distribution(continuous_dist::exponential(param));
    }
    return distribution(continuous_dist::gaussian(param));
  }
};

struct scheme_spec {
  std::string name;
  std::optional<dist_spec> base;     // iid
  std::optional<rational> lambda;    // poisson-bernoulli
  std::map<std::int64_t, std::vector<dist_spec>> rows;  // custom

  scheme build() const {
    if (name == "iid") return make_iid(base->build());
    if (name == "poisson-bernoulli") return make_poisson_bernoulli(*lambda);
    if (name == "variance-escape") return make_variance_escape();
    if (name == "dominant-term") return make_dominant_term();
    std::map<std::int64_t, std::vector<distribution>> built;
    for (const auto& [n, specs] : rows) {
      std::vector<distribution> members;
      members.reserve(specs.size());
      for (const auto& s : specs) members.push_back(s.build());
      built.emplace(n, std::move(members));
    }
    return make_custom(std::move(built));
  }
};

struct experiment_config {
  scheme_spec scheme;
  std::vector<std::int64_t> n_grid;
  std::vector<double> eps_grid{0.05, 0.1, 0.2, 0.5};
  std::vector<double> c_grid{1.0, 4.0, 25.0, 100.0};
  run_mode mode = run_mode::auto_mode;
  std::uint64_t reps = 100000;
  std::uint64_t seed = 1;
  double alpha = 1e-3;
  std::uint64_t support_cap = default_support_cap;
  verdict_thresholds verdict;
  bool dump_pmf = false;
  bool dump_samples = false;
};

namespace cfgdetail {

using nlohmann::json;

inline rational parse_rational(const json& j, const std::string& path) {
  if (j.is_string()) {
    auto r = rational::parse(j.get<std::string>());
    if (!r) throw config_error(path, "invalid rational string '" + j.get<std::string>() + "' (use p or p/q)");
    return *r;
  }
  if (j.is_number_integer()) {
    return rational(j.get<std::int64_t>());
  }
  if (j.is_number_float()) {
    auto r = rational::from_double(j.get<double>());
    if (!r)
      throw config_error(path, "value is not representable as an int64 rational; use a p/q string");
    return *r;
  }
  throw config_error(path, "expected a number or a p/q string");
}

inline dist_spec parse_distribution(const json& j, const std::string& path) {
  if (!j.is_object()) throw config_error(path, "expected an object");
  dist_spec spec;
  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    if (!l.is_object()) throw config_error(path + ".lattice", "expected an object");
    spec.is_lattice = true;
    if (!l.contains("step")) throw config_error(path + ".lattice.step", "missing");
    spec.step = parse_rational(l.at("step"), path + ".lattice.step");
    spec.offset = l.contains("offset") ? parse_rational(l.at("offset"), path + ".lattice.offset")
                                       : rational(0);
    if (!l.contains("probs") || !l.at("probs").is_object() || l.at("probs").empty())
      throw config_error(path + ".lattice.probs", "expected a non-empty object of index -> probability");
    for (const auto& [key, val] : l.at("probs").items()) {
      std::int64_t idx = 0;
      auto parsed = rational::parse(key);
      if (!parsed || !parsed->is_integer())
        throw config_error(path + ".lattice.probs", "key '" + key + "' is not an integer index");
      idx = parsed->num();
      if (!val.is_number())
        throw config_error(path + ".lattice.probs." + key, "expected a number");
      spec.atoms.push_back({idx, val.get<double>()});
    }
    try {
      spec.build();
    } catch (const std::invalid_argument& e) {
      throw config_error(path + ".lattice", e.what());
    }
    return spec;
  }
  if (j.contains("continuous")) {
    const json& c = j.at("continuous");
    if (!c.is_object()) throw config_error(path + ".continuous", "expected an object");
    spec.is_lattice = false;
    std::string family = c.value("family", "");
    if (family == "gaussian") {
      spec.family = cont_family::gaussian;
      if (!c.contains("sigma2") || !c.at("sigma2").is_number())
        throw config_error(path + ".continuous.sigma2", "expected a positive number");
      spec.param = c.at("sigma2").get<double>();
    } else if (family == "uniform") {
      spec.family = cont_family::uniform;
      if (!c.contains("half_width") || !c.at("half_width").is_number())
        throw config_error(path + ".continuous.half_width", "expected a positive number");
      spec.param = c.at("half_width").get<double>();
    } else if (family == "exponential") {
      spec.family = cont_family::exponential;
      if (!c.contains("rate") || !c.at("rate").is_number())
        throw config_error(path + ".continuous.rate", "expected a positive number");
      spec.param = c.at("rate").get<double>();
    } else {
      throw config_error(path + ".continuous.family",
                         "unknown family '" + family + "' (gaussian, uniform, exponential)");
    }
    try {
      spec.build();
    } catch (const std::invalid_argument& e) {
      throw config_error(path + ".continuous", e.what());
    }
    return spec;
  }
  throw config_error(path, "expected a 'lattice' or 'continuous' distribution object");
}

template <typename T>
inline std::vector<T> parse_grid(const json& j, const std::string& path, bool require_positive) {
  if (!j.is_array() || j.empty()) throw config_error(path, "expected a non-empty array");
  std::vector<T> out;
  for (const auto& v : j) {
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() && !v.is_number_unsigned())
        throw config_error(path, "expected integer entries");
    } else {
      if (!v.is_number()) throw config_error(path, "expected numeric entries");
    }
    out.push_back(v.get<T>());
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (require_positive && !(out[i] > 0)) throw config_error(path, "entries must be positive");
    if (i > 0 && !(out[i] > out[i - 1])) throw config_error(path, "entries must be strictly increasing");
  }
  return out;
}

}  // namespace cfgdetail

inline experiment_config parse_config(const std::string& text) {
  using cfgdetail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error("$", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("$", "top level must be an object");

  experiment_config cfg;

  if (!j.contains("scheme") || !j.at("scheme").is_object())
    throw config_error("scheme", "expected an object");
  const json& s = j.at("scheme");
  cfg.scheme.name = s.value("name", "");
  if (cfg.scheme.name == "iid") {
    if (!s.contains("base")) throw config_error("scheme.base", "iid scheme requires a base distribution");
    cfg.scheme.base = cfgdetail::parse_distribution(s.at("base"), "scheme.base");
  } else if (cfg.scheme.name == "poisson-bernoulli") {
    if (!s.contains("lambda")) throw config_error("scheme.lambda", "missing");
    rational lambda = cfgdetail::parse_rational(s.at("lambda"), "scheme.lambda");
    if (!lambda.positive()) throw config_error("scheme.lambda", "must be positive");
    cfg.scheme.lambda = lambda;
  } else if (cfg.scheme.name == "variance-escape" || cfg.scheme.name == "dominant-term") {
    // no parameters
  } else if (cfg.scheme.name == "custom") {
    if (!s.contains("rows") || !s.at("rows").is_object() || s.at("rows").empty())
      throw config_error("scheme.rows", "expected a non-empty object of n -> member list");
    for (const auto& [key, val] : s.at("rows").items()) {
      auto parsed = rational::parse(key);
      if (!parsed || !parsed->is_integer() || parsed->num() < 1)
        throw config_error("scheme.rows", "key '" + key + "' is not a positive integer n");
      std::int64_t n = parsed->num();
      if (!val.is_array() || val.empty())
        throw config_error("scheme.rows." + key, "expected a non-empty array of distributions");
      std::vector<dist_spec> members;
      for (std::size_t i = 0; i < val.size(); ++i)
        members.push_back(cfgdetail::parse_distribution(
            val[i], "scheme.rows." + key + "[" + std::to_string(i) + "]"));
      cfg.scheme.rows.emplace(n, std::move(members));
    }
  } else {
    throw config_error("scheme.name", "unknown scheme '" + cfg.scheme.name +
                                          "' (iid, poisson-bernoulli, variance-escape, dominant-term, custom)");
  }

  if (!j.contains("n_grid")) throw config_error("n_grid", "missing");
  cfg.n_grid = cfgdetail::parse_grid<std::int64_t>(j.at("n_grid"), "n_grid", true);

  if (j.contains("eps_grid"))
    cfg.eps_grid = cfgdetail::parse_grid<double>(j.at("eps_grid"), "eps_grid", true);
  if (j.contains("c_grid"))
    cfg.c_grid = cfgdetail::parse_grid<double>(j.at("c_grid"), "c_grid", true);

  if (j.contains("mode")) {
    std::string m = j.at("mode").is_string() ? j.at("mode").get<std::string>() : "";
    if (m == "exact") cfg.mode = run_mode::exact;
    else if (m == "mc") cfg.mode = run_mode::mc;
    else if (m == "auto") cfg.mode = run_mode::auto_mode;
    else throw config_error("mode", "expected one of exact, mc, auto");
  }

  if (j.contains("reps")) {
    if (!j.at("reps").is_number_unsigned() && !j.at("reps").is_number_integer())
      throw config_error("reps", "expected a positive integer");
    auto r = j.at("reps").get<std::int64_t>();
    if (r < 1) throw config_error("reps", "must be >= 1");
    cfg.reps = static_cast<std::uint64_t>(r);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number()) throw config_error("seed", "expected an unsigned integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("alpha")) {
    if (!j.at("alpha").is_number()) throw config_error("alpha", "expected a number in (0, 1)");
    cfg.alpha = j.at("alpha").get<double>();
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw config_error("alpha", "must lie in (0, 1)");
  }
  if (j.contains("support_cap")) {
    if (!j.at("support_cap").is_number_integer() && !j.at("support_cap").is_number_unsigned())
      throw config_error("support_cap", "expected a positive integer");
    auto c = j.at("support_cap").get<std::int64_t>();
    if (c < 1) throw config_error("support_cap", "must be >= 1");
    cfg.support_cap = static_cast<std::uint64_t>(c);
  }
  if (j.contains("verdict")) {
    const json& v = j.at("verdict");
    if (!v.is_object()) throw config_error("verdict", "expected an object");
    auto read_tau = [&](const char* name, double& slot) {
      if (!v.contains(name)) return;
      if (!v.at(name).is_number() || !(v.at(name).get<double>() > 0.0))
        throw config_error(std::string("verdict.") + name, "expected a positive number");
      slot = v.at(name).get<double>();
    };
    read_tau("tau_neg", cfg.verdict.tau_neg);
    read_tau("tau_ui", cfg.verdict.tau_ui);
    read_tau("tau_ks", cfg.verdict.tau_ks);
    read_tau("tau_sigma", cfg.verdict.tau_sigma);
  }
  if (j.contains("dump_pmf")) {
    if (!j.at("dump_pmf").is_boolean()) throw config_error("dump_pmf", "expected a boolean");
    cfg.dump_pmf = j.at("dump_pmf").get<bool>();
  }
  if (j.contains("dump_samples")) {
    if (!j.at("dump_samples").is_boolean()) throw config_error("dump_samples", "expected a boolean");
    cfg.dump_samples = j.at("dump_samples").get<bool>();
  }

  if (cfg.scheme.name == "poisson-bernoulli") {
    for (std::int64_t n : cfg.n_grid) {
      if (cfg.scheme.lambda->order(rational(n)) >= 0)
        throw config_error("scheme.lambda",
                           "lambda/n >= 1 at n=" + std::to_string(n) + "; the terms are not Bernoulli");
    }
  }
  if (cfg.scheme.name == "custom") {
    for (std::int64_t n : cfg.n_grid) {
      if (!cfg.scheme.rows.count(n))
        throw config_error("scheme.rows", "no row listed for n=" + std::to_string(n));
    }
  }
  return cfg;
}

inline experiment_config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("$", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace cfgdetail {

inline void emit_distribution(json_writer& w, const dist_spec& d) {
  w.open_object();
  if (d.is_lattice) {
    w.key("lattice");
    w.open_object();
    w.field("step", d.step.str());
    w.field("offset", d.offset.str());
    w.key("probs");
    w.open_object();
    for (const auto& a : d.atoms) w.field(std::to_string(a.index), a.prob);
    w.close_object();
    w.close_object();
  } else {
    w.key("continuous");
    w.open_object();
    switch (d.family) {
      case cont_family::gaussian:
        w.field("family", "gaussian");
        w.field("sigma2", d.param);
        break;
      case cont_family::uniform:
        w.field("family", "uniform");
        w.field("half_width", d.param);
        break;
      case cont_family::exponential:
        w.field("family", "exponential");
        w.field("rate", d.param);
        break;
    }
    w.close_object();
  }
  w.close_object();
}

}  // namespace cfgdetail

// Canonical re-emission of the parsed config (fixed key order, 17 digits).
inline void emit_config(json_writer& w, const experiment_config& cfg) {
  w.open_object();
  w.key("scheme");
  w.open_object();
  w.field("name", cfg.scheme.name);
  if (cfg.scheme.base) {
    w.key("base");
    cfgdetail::emit_distribution(w, *cfg.scheme.base);
  }
  if (cfg.scheme.lambda) w.field("lambda", cfg.scheme.lambda->str());
  if (!cfg.scheme.rows.empty()) {
    w.key("rows");
    w.open_object();
    for (const auto& [n, members] : cfg.scheme.rows) {
      w.key(std::to_string(n));
      w.open_array();
      for (const auto& m : members) cfgdetail::emit_distribution(w, m);
      w.close_array();
    }
    w.close_object();
  }
  w.close_object();
  w.key("n_grid");
  w.open_array();
  for (auto n : cfg.n_grid) w.value(n);
  w.close_array();
  w.key("eps_grid");
  w.open_array();
  for (auto e : cfg.eps_grid) w.value(e);
  w.close_array();
  w.key("c_grid");
  w.open_array();
  for (auto c : cfg.c_grid) w.value(c);
  w.close_array();
  w.field("mode", run_mode_name(cfg.mode));
  w.field("reps", cfg.reps);
  w.field("seed", cfg.seed);
  w.field("alpha", cfg.alpha);
  w.field("support_cap", cfg.support_cap);
  w.key("verdict");
  w.open_object();
  w.field("tau_neg", cfg.verdict.tau_neg);
  w.field("tau_ui", cfg.verdict.tau_ui);
  w.field("tau_ks", cfg.verdict.tau_ks);
  w.field("tau_sigma", cfg.verdict.tau_sigma);
  w.close_object();
  w.field("dump_pmf", cfg.dump_pmf);
  w.field("dump_samples", cfg.dump_samples);
  w.close_object();
}

inline std::string emit_config_json(const experiment_config& cfg) {
  json_writer w;
  emit_config(w, cfg);
  return w.str();
}

}  // namespace cltlab
