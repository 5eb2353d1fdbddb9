#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <thread>
#include <vector>

#include "cltlab/errors.hpp"
#include "cltlab/exact_engine.hpp"
#include "cltlab/rng.hpp"
#include "cltlab/scheme.hpp"
#include "cltlab/step_cdf.hpp"

namespace cltlab {

struct sample_batch {
  std::int64_t n = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // sorted realizations of S_n / sqrt(DS_n)
};

// reps independent realizations of the normalized row sum. Replicate r draws
// from its own rng stream (seed, r), so the result is bit-identical for any
// thread count; threads fill disjoint slices and the values are then sorted.
inline sample_batch sample_sums(const scheme& s, std::int64_t n, std::uint64_t reps,
                                std::uint64_t seed, unsigned threads = 1) {
  if (reps < 1) throw engine_error("reps must be >= 1");
  const std::vector<distribution> members = s.row(n);
  const row_meta meta = scheme::meta_for(n, members);
  if (!(meta.ds > 0.0)) throw engine_error("degenerate row: DS_n is zero");
  const double root_ds = std::sqrt(meta.ds);

  sample_batch batch;
  batch.n = n;
  batch.reps = reps;
  batch.seed = seed;
  batch.values.resize(reps);

  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t r = begin; r < end; ++r) {
      xoshiro256 rng(seed, r);
      double sum = 0.0;
      for (const auto& member : members) sum += member.sample(rng);
      batch.values[r] = sum / root_ds;
    }
  };

  if (threads <= 1 || reps < 2 * threads) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    const std::uint64_t chunk = reps / threads;
    std::uint64_t begin = 0;
    for (unsigned t = 0; t + 1 < threads; ++t) {
      pool.emplace_back(worker, begin, begin + chunk);
      begin += chunk;
    }
    worker(begin, reps);
    for (auto& th : pool) th.join();
  }

  std::sort(batch.values.begin(), batch.values.end());
  return batch;
}

inline double batch_mean(const sample_batch& b) {
  long double acc = 0.0L;
  for (double v : b.values) acc += v;
  return static_cast<double>(acc / static_cast<long double>(b.values.size()));
}

inline double batch_second_moment(const sample_batch& b) {
  long double acc = 0.0L;
  for (double v : b.values) acc += static_cast<long double>(v) * v;
  return static_cast<double>(acc / static_cast<long double>(b.values.size()));
}

inline double batch_fourth_moment(const sample_batch& b) {
  long double acc = 0.0L;
  for (double v : b.values) {
    long double v2 = static_cast<long double>(v) * v;
    acc += v2 * v2;
  }
  return static_cast<double>(acc / static_cast<long double>(b.values.size()));
}

// Monte Carlo estimate of T_n(C) = E[X^2 1{X^2 > C}].
inline double empirical_ui_tail(const sample_batch& b, double c) {
  long double acc = 0.0L;
  for (double v : b.values) {
    double v2 = v * v;
    if (v2 > c) acc += v2;
  }
  return static_cast<double>(acc / static_cast<long double>(b.values.size()));
}

inline step_cdf to_step_cdf(const sample_batch& b) {
  step_cdf s;
  const double n = static_cast<double>(b.values.size());
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    if (i + 1 < b.values.size() && b.values[i + 1] == b.values[i]) continue;
    s.xs.push_back(b.values[i]);
    s.f.push_back(static_cast<double>(i + 1) / n);
  }
  return s;
}

inline double dkw_band(std::uint64_t reps, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(reps)));
}

struct ks_result {
  double ks = 0.0;
  double dkw = 0.0;
};

// One-sample KS statistic of the batch against Phi_{a,sigma2}, plus the
// distribution-free DKW confidence radius at level alpha.
inline ks_result empirical_ks(const sample_batch& b, gaussian_params g, double alpha = 1e-3) {
  ks_result r;
  r.ks = ks_against_gaussian(to_step_cdf(b), g);
  r.dkw = dkw_band(b.reps, alpha);
  return r;
}

// Two-CDF sup distance between the batch and an exact lattice law, evaluated
// on the exact atom grid. Samples are matched to atoms by half-step binning,
// which absorbs the few-ulp rounding differences between the two pipelines.
inline double ks_vs_pmf(const sample_batch& b, const normalized_pmf& p) {
  step_cdf cdf = to_step_cdf(p);
  const double tol = std::fabs(p.scale) * 0.5;
  const double n = static_cast<double>(b.values.size());
  double d = 0.0;
  std::size_t si = 0;
  for (std::size_t i = 0; i < cdf.xs.size(); ++i) {
    const double hi = cdf.xs[i] + tol;
    while (si < b.values.size() && b.values[si] <= hi) ++si;
    d = std::max(d, std::fabs(static_cast<double>(si) / n - cdf.f[i]));
  }
  return d;
}

// CSV dump, one sorted value per line.
inline void dump_samples_csv(const sample_batch& b, std::ostream& out) {
  out << "value\n";
  char buf[48];
  for (double v : b.values) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
}

}  // namespace cltlab
