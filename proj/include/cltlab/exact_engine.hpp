#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "cltlab/errors.hpp"
#include "cltlab/scheme.hpp"
#include "cltlab/step_cdf.hpp"

namespace cltlab {

// Exact law of S_n / sqrt(DS_n) on the lattice {(base + i) * scale + offset}.
struct normalized_pmf {
  double scale = 1.0;   // common lattice step / sqrt(DS_n)
  double offset = 0.0;  // exact row-sum offset / sqrt(DS_n)
  std::int64_t base = 0;
  std::vector<double> probs;  // dense over [base, base + size)
  std::int64_t n = 0;
  double ds = 0.0;
  double clamped_mass = 0.0;  // total probability zeroed by underflow clamping

  std::size_t size() const { return probs.size(); }
  double x(std::size_t i) const {
    return (static_cast<double>(base) + static_cast<double>(i)) * scale + offset;
  }
};

inline constexpr std::size_t default_support_cap = std::size_t(1) << 24;

// Probabilities below this are clamped to zero after each fold, with the
// removed mass accumulated into the audit field.
inline constexpr double underflow_clamp = 1e-300;

// Sequential convolution of the row members on the common lattice, then
// rescaling by 1/sqrt(DS_n). Every materialized array is bounded by the cap.
inline normalized_pmf convolve_row(const row_meta& meta, const std::vector<distribution>& members,
                                   std::size_t support_cap = default_support_cap) {
  if (members.empty()) throw engine_error("cannot convolve an empty row");
  if (!meta.lattice_compatible || !meta.common_step || !meta.sum_offset)
    throw engine_error("row is not lattice-compatible; run in mc mode");
  if (!(meta.ds > 0.0)) throw engine_error("degenerate row: DS_n is zero");
  const rational g = *meta.common_step;

  std::vector<double> cur{1.0};
  std::int64_t lo = 0;
  double clamped = 0.0;
  std::vector<double> next;

  for (const auto& member : members) {
    const lattice_dist& ld = member.lattice();
    auto ratio = ld.step().div(g);
    if (!ratio || !ratio->is_integer())
      throw engine_error("member step is not an integer multiple of the common step");
    const std::int64_t mult = ratio->num();
    const auto& atoms = ld.atoms();
    const std::int64_t amin = atoms.front().index * mult;
    const std::int64_t amax = atoms.back().index * mult;
    const std::size_t nsize = cur.size() + static_cast<std::size_t>(amax - amin);
    if (nsize > support_cap)
      throw support_cap_error("support size " + std::to_string(nsize) + " exceeds cap " +
                              std::to_string(support_cap) + "; run in mc mode");
    next.assign(nsize, 0.0);
    for (const auto& atom : atoms) {
      const std::size_t shift = static_cast<std::size_t>(atom.index * mult - amin);
      const double p = atom.prob;
      double* dst = next.data() + shift;
      const double* src = cur.data();
      const std::size_t sz = cur.size();
      for (std::size_t t = 0; t < sz; ++t) dst[t] += p * src[t];
    }
    std::size_t first = 0;
    std::size_t last = next.size();
    for (double& v : next) {
      if (v != 0.0 && v < underflow_clamp) {
        clamped += v;
        v = 0.0;
      }
    }
    while (first < last && next[first] == 0.0) ++first;
    while (last > first && next[last - 1] == 0.0) --last;
    if (first == last) throw engine_error("convolution lost all probability mass");
    cur.assign(next.begin() + static_cast<std::ptrdiff_t>(first),
               next.begin() + static_cast<std::ptrdiff_t>(last));
    lo = lo + amin + static_cast<std::int64_t>(first);
  }

  normalized_pmf out;
  const double root_ds = std::sqrt(meta.ds);
  out.scale = g.to_double() / root_ds;
  out.offset = meta.sum_offset->to_double() / root_ds;
  out.base = lo;
  out.probs = std::move(cur);
  out.n = meta.n;
  out.ds = meta.ds;
  out.clamped_mass = clamped;
  return out;
}

inline double total_mass(const normalized_pmf& p) {
  long double acc = 0.0L;
  for (double v : p.probs) acc += v;
  return static_cast<double>(acc);
}

inline double mean(const normalized_pmf& p) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i)
    acc += static_cast<long double>(p.probs[i]) * p.x(i);
  return static_cast<double>(acc);
}

// E[X^2]; equals 1 for every convolved normalized row (the exact identity).
inline double second_moment(const normalized_pmf& p) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double x = p.x(i);
    acc += static_cast<long double>(p.probs[i]) * x * x;
  }
  return static_cast<double>(acc);
}

// T_n(C) = E[X^2 1{X^2 > C}], exact over the lattice atoms.
inline double ui_tail_exact(const normalized_pmf& p, double c) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double x = p.x(i);
    if (x * x > c) acc += static_cast<long double>(p.probs[i]) * x * x;
  }
  return static_cast<double>(acc);
}

inline step_cdf to_step_cdf(const normalized_pmf& p) {
  step_cdf s;
  s.xs.reserve(p.size());
  s.f.reserve(p.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.probs[i] == 0.0) continue;
    acc += p.probs[i];
    s.xs.push_back(p.x(i));
    s.f.push_back(static_cast<double>(acc));
  }
  return s;
}

inline double ks_distance(const normalized_pmf& p, gaussian_params g) {
  return ks_against_gaussian(to_step_cdf(p), g);
}

// CSV dump with columns x,pmf,cdf in ascending x order.
inline void dump_pmf_csv(const normalized_pmf& p, std::ostream& out) {
  out << "x,pmf,cdf\n";
  long double acc = 0.0L;
  char buf[96];
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.probs[i] == 0.0) continue;
    acc += p.probs[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.x(i), p.probs[i],
                  static_cast<double>(acc));
    out << buf;
  }
}

}  // namespace cltlab
