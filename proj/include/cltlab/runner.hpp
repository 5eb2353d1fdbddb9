#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "cltlab/config.hpp"
#include "cltlab/diagnostics.hpp"
#include "cltlab/exact_engine.hpp"
#include "cltlab/gaussfit.hpp"
#include "cltlab/mc_engine.hpp"
#include "cltlab/report.hpp"

namespace cltlab {

inline unsigned worker_threads() {
  if (const char* env = std::getenv("CLT_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return unsigned(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

struct run_result {
  report rep;
  run_timing timing;
};

namespace rundetail {

inline std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace rundetail

// Executes the full experiment: diagnostics for every row, the exact or
// Monte Carlo law of the normalized sum, the Gaussian fit, and the verdict.
// When out_dir is non-empty, per-row pmf/sample dumps requested by the
// config are written there as a side effect.
inline run_result run(const experiment_config& cfg, const std::string& out_dir = "") {
  const auto t_start = std::chrono::steady_clock::now();
  run_result res;
  res.rep.config = cfg;
  res.timing.started_utc = rundetail::utc_now();
  res.timing.threads = worker_threads();

  if (!out_dir.empty() && (cfg.dump_pmf || cfg.dump_samples))
    std::filesystem::create_directories(out_dir);

  scheme s = cfg.scheme.build();
  std::vector<n_evidence> evidence;

  for (std::int64_t n : cfg.n_grid) {
    const auto t_row = std::chrono::steady_clock::now();
    row_report row;
    const std::vector<distribution> members = s.row(n);
    row.meta = scheme::meta_for(n, members);
    row.diag = compute_row_diagnostics(row.meta, members, cfg.eps_grid);

    bool use_exact = false;
    switch (cfg.mode) {
      case run_mode::exact:
        use_exact = true;
        break;
      case run_mode::mc:
        use_exact = false;
        break;
      case run_mode::auto_mode:
        use_exact = row.meta.lattice_compatible;
        if (!use_exact) row.fallback_reason = "row is not lattice-compatible";
        break;
    }

    normalized_pmf pmf;
    sample_batch batch;
    step_cdf cdf;
    if (use_exact) {
      try {
        pmf = convolve_row(row.meta, members, cfg.support_cap);
      } catch (const support_cap_error& e) {
        if (cfg.mode != run_mode::auto_mode) throw;
        use_exact = false;
        row.fallback_reason = e.what();
      }
    }
    if (use_exact) {
      row.engine = "exact";
      row.support_size = pmf.size();
      row.clamped_mass = pmf.clamped_mass;
      row.mean = mean(pmf);
      row.second_moment = second_moment(pmf);
      for (double c : cfg.c_grid) row.diag.ui_tail.push_back({c, ui_tail_exact(pmf, c)});
      cdf = to_step_cdf(pmf);
    } else {
      row.engine = "mc";
      batch = sample_sums(s, n, cfg.reps, cfg.seed, res.timing.threads);
      row.reps = batch.reps;
      row.dkw = dkw_band(batch.reps, cfg.alpha);
      row.mean = batch_mean(batch);
      row.second_moment = batch_second_moment(batch);
      for (double c : cfg.c_grid) row.diag.ui_tail.push_back({c, empirical_ui_tail(batch, c)});
      cdf = to_step_cdf(batch);
    }

    row.ks_std = ks_against_gaussian(cdf, gaussian_params{});
    row.fit = fit_sigma2(cdf);

    n_evidence ev;
    ev.n = n;
    ev.neg_joint = row.diag.neg_joint.front().value;  // smallest epsilon
    ev.ui_tail = row.diag.ui_tail.back().value;       // largest C
    ev.ks_std = row.ks_std;
    ev.fit_ok = row.fit.ok;
    ev.sigma2_fit = row.fit.sigma2;
    ev.ks_fit = row.fit.ks;
    ev.mc = !use_exact;
    ev.dkw = row.dkw;
    evidence.push_back(ev);

    if (!out_dir.empty()) {
      namespace fs = std::filesystem;
      if (use_exact && cfg.dump_pmf) {
        std::ofstream out(fs::path(out_dir) / ("pmf_n" + std::to_string(n) + ".csv"),
                          std::ios::binary);
        dump_pmf_csv(pmf, out);
      }
      if (!use_exact && cfg.dump_samples) {
        std::ofstream out(fs::path(out_dir) / ("samples_n" + std::to_string(n) + ".csv"),
                          std::ios::binary);
        dump_samples_csv(batch, out);
      }
    }

    res.rep.rows.push_back(std::move(row));
    res.timing.row_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_row).count());
  }

  res.rep.final_verdict = classify(std::move(evidence), cfg.verdict);
  res.timing.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

struct written_files {
  std::string report_json;
  std::string report_csv;
  std::string meta_json;
};

inline written_files write_report_files(const run_result& res, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  written_files files;
  files.report_json = (fs::path(out_dir) / "report.json").string();
  files.report_csv = (fs::path(out_dir) / "report.csv").string();
  files.meta_json = (fs::path(out_dir) / "meta.json").string();
  write_text_file(files.report_json, emit_report_json(res.rep));
  write_text_file(files.report_csv, emit_report_csv(res.rep));
  write_text_file(files.meta_json, emit_meta_json(res.timing));
  return files;
}

}  // namespace cltlab
