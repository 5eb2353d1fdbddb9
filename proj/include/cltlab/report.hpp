#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "cltlab/config.hpp"
#include "cltlab/diagnostics.hpp"
#include "cltlab/gaussfit.hpp"
#include "cltlab/json_writer.hpp"
#include "cltlab/rng.hpp"
#include "cltlab/scheme.hpp"
#include "cltlab/version.hpp"

namespace cltlab {

namespace repdetail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace repdetail

// Everything measured for a single row of the array.
struct row_report {
  row_meta meta;
  std::string engine;  // "exact" or "mc"
  row_diagnostics diag;
  double mean = 0.0;
  double second_moment = 0.0;
  double ks_std = 0.0;
  fit_result fit;
  // exact engine
  std::uint64_t support_size = 0;
  double clamped_mass = 0.0;
  // mc engine
  std::uint64_t reps = 0;
  double dkw = 0.0;
  std::string fallback_reason;  // non-empty when auto mode fell back to mc
};

struct report {
  std::string artifact = artifact_name;
  std::string version = artifact_version;
  std::string rng_id = rng_algorithm_id;
  experiment_config config;
  std::vector<row_report> rows;
  verdict final_verdict;
};

// Timings are deliberately kept out of the main report so that report.json
// and report.csv are byte-identical across runs and thread counts.
struct run_timing {
  double total_seconds = 0.0;
  std::vector<double> row_seconds;
  std::string started_utc;
  unsigned threads = 1;
};

inline void emit_row(json_writer& w, const row_report& r) {
  w.open_object();
  w.field("n", r.meta.n);
  w.field("k", r.meta.k);
  w.field("ds", r.meta.ds);
  w.field("lattice_compatible", r.meta.lattice_compatible);
  if (r.meta.lattice_compatible) {
    w.field("common_step", r.meta.common_step->str());
    w.field("sum_offset", r.meta.sum_offset->str());
  }
  w.field("engine", r.engine);
  if (!r.fallback_reason.empty()) w.field("fallback_reason", r.fallback_reason);

  w.key("diagnostics");
  w.open_object();
  auto grid = [&](const char* name, const std::vector<grid_value>& g) {
    w.key(name);
    w.open_object();
    for (const auto& e : g) w.field(repdetail::fmt_double(e.key), e.value);
    w.close_object();
  };
  grid("lindeberg", r.diag.lindeberg);
  grid("lindeberg_ge", r.diag.lindeberg_ge);
  grid("neg_individual_min", r.diag.neg_individual_min);
  grid("neg_individual_max", r.diag.neg_individual_max);
  grid("neg_joint", r.diag.neg_joint);
  grid("sum_tail_probs", r.diag.sum_tail_probs);
  w.key("chebyshev");
  w.open_array();
  for (const auto& c : r.diag.chebyshev) {
    w.open_object();
    w.field("eps", c.eps);
    w.field("lhs", c.lhs);
    w.field("mid", c.mid);
    w.field("rhs", c.rhs);
    w.close_object();
  }
  w.close_array();
  grid("ui_tail", r.diag.ui_tail);
  w.close_object();

  w.key("law");
  w.open_object();
  w.field("mean", r.mean);
  w.field("second_moment", r.second_moment);
  w.field("ks_std", r.ks_std);
  w.key("fit");
  w.open_object();
  w.field("ok", r.fit.ok);
  if (r.fit.ok) {
    w.field("sigma2", r.fit.sigma2);
    w.field("ks", r.fit.ks);
    w.field("seed_sigma2", r.fit.seed_sigma2);
  }
  w.close_object();
  w.close_object();

  if (r.engine == "exact") {
    w.key("exact");
    w.open_object();
    w.field("support_size", r.support_size);
    w.field("clamped_mass", r.clamped_mass);
    w.close_object();
  } else {
    w.key("mc");
    w.open_object();
    w.field("reps", r.reps);
    w.field("dkw_band", r.dkw);
    w.close_object();
  }
  w.close_object();
}

inline void emit_verdict(json_writer& w, const verdict& v) {
  w.open_object();
  w.field("tag", verdict_tag_name(v.tag));
  if (v.sigma2) w.field("sigma2", *v.sigma2);
  w.key("thresholds");
  w.open_object();
  w.field("tau_neg", v.thresholds.tau_neg);
  w.field("tau_ui", v.thresholds.tau_ui);
  w.field("tau_ks", v.thresholds.tau_ks);
  w.field("tau_sigma", v.thresholds.tau_sigma);
  w.close_object();
  w.key("evidence");
  w.open_array();
  for (const auto& e : v.evidence) {
    w.open_object();
    w.field("n", e.n);
    w.field("neg_joint", e.neg_joint);
    w.field("ui_tail", e.ui_tail);
    w.field("ks_std", e.ks_std);
    w.field("fit_ok", e.fit_ok);
    if (e.fit_ok) {
      w.field("sigma2_fit", e.sigma2_fit);
      w.field("ks_fit", e.ks_fit);
    }
    w.field("mc", e.mc);
    if (e.mc) w.field("dkw", e.dkw);
    w.close_object();
  }
  w.close_array();
  w.close_object();
}

inline std::string emit_report_json(const report& r) {
  json_writer w;
  w.open_object();
  w.key("artifact");
  w.open_object();
  w.field("name", r.artifact);
  w.field("version", r.version);
  w.close_object();
  w.key("rng");
  w.open_object();
  w.field("algorithm", r.rng_id);
  w.field("seed", r.config.seed);
  w.close_object();
  w.key("config");
  emit_config(w, r.config);
  w.key("rows");
  w.open_array();
  for (const auto& row : r.rows) emit_row(w, row);
  w.close_array();
  w.key("verdict");
  emit_verdict(w, r.final_verdict);
  w.close_object();
  std::string out = w.str();
  out += '\n';
  return out;
}

namespace repdetail {

inline void csv_line(std::string& out, const std::string& scheme, std::int64_t n,
                     const std::string& metric, const std::string& param, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += scheme;
  out += ',';
  out += std::to_string(n);
  out += ',';
  out += metric;
  out += ',';
  out += param;
  out += ',';
  out += buf;
  out += '\n';
}

}  // namespace repdetail

// Flat long-format table: scheme,n,metric,param,value.
inline std::string emit_report_csv(const report& r) {
  std::string out = "scheme,n,metric,param,value\n";
  const std::string& s = r.config.scheme.name;
  for (const auto& row : r.rows) {
    const std::int64_t n = row.meta.n;
    repdetail::csv_line(out, s, n, "ds", "", row.meta.ds);
    auto grid = [&](const char* metric, const std::vector<grid_value>& g) {
      for (const auto& e : g)
        repdetail::csv_line(out, s, n, metric, repdetail::fmt_double(e.key), e.value);
    };
    grid("lindeberg", row.diag.lindeberg);
    grid("lindeberg_ge", row.diag.lindeberg_ge);
    grid("neg_individual_min", row.diag.neg_individual_min);
    grid("neg_individual_max", row.diag.neg_individual_max);
    grid("neg_joint", row.diag.neg_joint);
    grid("sum_tail_probs", row.diag.sum_tail_probs);
    for (const auto& c : row.diag.chebyshev) {
      std::string key = repdetail::fmt_double(c.eps);
      repdetail::csv_line(out, s, n, "chebyshev_lhs", key, c.lhs);
      repdetail::csv_line(out, s, n, "chebyshev_mid", key, c.mid);
      repdetail::csv_line(out, s, n, "chebyshev_rhs", key, c.rhs);
    }
    grid("ui_tail", row.diag.ui_tail);
    repdetail::csv_line(out, s, n, "mean", "", row.mean);
    repdetail::csv_line(out, s, n, "second_moment", "", row.second_moment);
    repdetail::csv_line(out, s, n, "ks_std", "", row.ks_std);
    if (row.fit.ok) {
      repdetail::csv_line(out, s, n, "fit_sigma2", "", row.fit.sigma2);
      repdetail::csv_line(out, s, n, "fit_ks", "", row.fit.ks);
    }
    if (row.engine == "exact") {
      repdetail::csv_line(out, s, n, "support_size", "", double(row.support_size));
      repdetail::csv_line(out, s, n, "clamped_mass", "", row.clamped_mass);
    } else {
      repdetail::csv_line(out, s, n, "reps", "", double(row.reps));
      repdetail::csv_line(out, s, n, "dkw_band", "", row.dkw);
    }
  }
  return out;
}

inline std::string emit_meta_json(const run_timing& t) {
  json_writer w;
  w.open_object();
  w.field("started_utc", t.started_utc);
  w.field("threads", std::uint64_t(t.threads));
  w.field("total_seconds", t.total_seconds);
  w.key("row_seconds");
  w.open_array();
  for (double s : t.row_seconds) w.value(s);
  w.close_array();
  w.close_object();
  std::string out = w.str();
  out += '\n';
  return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw engine_error("cannot write " + path.string());
  out << content;
}

}  // namespace cltlab
