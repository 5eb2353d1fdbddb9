#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cltlab/step_cdf.hpp"

namespace cltlab {

struct fit_result {
  bool ok = false;           // false on zero interquartile range
  double sigma2 = 0.0;       // KS-minimizing variance
  double ks = 0.0;           // KS at the fitted variance
  double seed_sigma2 = 0.0;  // quantile-matching seed
  std::vector<std::pair<double, double>> scan;  // coarse (sigma2, ks) grid
};

// Fit sigma^2 to a normalized-sum law: seed from the interquartile range,
// scan a geometric grid over [seed/4, 4*seed], then refine the best bracket
// by golden-section minimization of the KS distance to Phi_{0,sigma2}.
inline fit_result fit_sigma2(const step_cdf& cdf) {
  fit_result r;
  if (cdf.empty()) return r;
  const double q25 = step_quantile(cdf, 0.25);
  const double q75 = step_quantile(cdf, 0.75);
  const double iqr = q75 - q25;
  if (!(iqr > 0.0)) return r;
  const double sd = iqr / (2.0 * normal_quantile_075);
  r.seed_sigma2 = sd * sd;

  auto ks_at = [&cdf](double s2) { return ks_against_gaussian(cdf, {0.0, s2}); };

  constexpr int scan_points = 33;
  const double lo = r.seed_sigma2 / 4.0;
  int best = 0;
  double best_ks = HUGE_VAL;
  for (int i = 0; i < scan_points; ++i) {
    double s2 = lo * std::pow(16.0, static_cast<double>(i) / (scan_points - 1));
    double v = ks_at(s2);
    r.scan.emplace_back(s2, v);
    if (v < best_ks) {
      best_ks = v;
      best = i;
    }
  }

  double a = r.scan[static_cast<std::size_t>(std::max(0, best - 1))].first;
  double b = r.scan[static_cast<std::size_t>(std::min(scan_points - 1, best + 1))].first;
  constexpr double golden = 0.6180339887498949;
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  double f1 = ks_at(x1);
  double f2 = ks_at(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = ks_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = ks_at(x2);
    }
  }
  r.ok = true;
  if (f1 <= f2) {
    r.sigma2 = x1;
    r.ks = f1;
  } else {
    r.sigma2 = x2;
    r.ks = f2;
  }
  if (best_ks < r.ks) {
    r.sigma2 = r.scan[static_cast<std::size_t>(best)].first;
    r.ks = best_ks;
  }
  return r;
}

enum class verdict_tag { clt, gaussian_non_standard, non_gaussian, inconclusive };

inline const char* verdict_tag_name(verdict_tag t) {
  switch (t) {
    case verdict_tag::clt: return "CLT";
    case verdict_tag::gaussian_non_standard: return "GaussianNonStandard";
    case verdict_tag::non_gaussian: return "NonGaussian";
    case verdict_tag::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct verdict_thresholds {
  double tau_neg = 0.02;
  double tau_ui = 0.02;
  double tau_ks = 0.02;
  double tau_sigma = 0.02;
};

// Per-n summary consumed by the classifier: joint negligibility at the
// smallest epsilon, UI tail at the largest C, and the two KS readings.
struct n_evidence {
  std::int64_t n = 0;
  double neg_joint = 0.0;
  double ui_tail = 0.0;
  double ks_std = 0.0;
  bool fit_ok = false;
  double sigma2_fit = 0.0;
  double ks_fit = 0.0;
  bool mc = false;
  double dkw = 0.0;
};

struct verdict {
  verdict_tag tag = verdict_tag::inconclusive;
  std::optional<double> sigma2;
  verdict_thresholds thresholds;
  std::vector<n_evidence> evidence;  // ascending n
};

// Trichotomy classifier, decided at the largest n with the full evidence
// trail recorded. For Monte Carlo evidence the KS threshold widens to at
// least twice the DKW band.
inline verdict classify(std::vector<n_evidence> evidence, verdict_thresholds th = {}) {
  verdict v;
  v.thresholds = th;
  v.evidence = std::move(evidence);
  if (v.evidence.empty()) return v;
  const n_evidence& e = v.evidence.back();
  const double tau_ks = e.mc ? std::max(th.tau_ks, 2.0 * e.dkw) : th.tau_ks;
  const bool neg_ok = e.neg_joint >= 1.0 - th.tau_neg;
  if (neg_ok && e.ui_tail <= th.tau_ui && e.ks_std <= tau_ks) {
    v.tag = verdict_tag::clt;
    return v;
  }
  if (neg_ok && e.fit_ok && e.ks_fit <= tau_ks && std::fabs(e.sigma2_fit - 1.0) > 3.0 * th.tau_sigma) {
    v.tag = verdict_tag::gaussian_non_standard;
    v.sigma2 = e.sigma2_fit;
    return v;
  }
  if (e.fit_ok && e.ks_fit > tau_ks) {
    v.tag = verdict_tag::non_gaussian;
    return v;
  }
  return v;
}

}  // namespace cltlab
