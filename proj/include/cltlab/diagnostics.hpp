#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cltlab/errors.hpp"
#include "cltlab/scheme.hpp"

namespace cltlab {

struct grid_value {
  double key;    // epsilon or C
  double value;
};

struct chain_values {
  double eps;
  double lhs;  // P(max_j |xi| >= eps sqrt(DS))
  double mid;  // sum_j P(|xi| >= eps sqrt(DS))
  double rhs;  // L_n(eps, ">=") / eps^2
};

// Per-row record of the diagnostic functionals; ui_tail is filled by the
// exact or Monte Carlo engine downstream.
struct row_diagnostics {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double ds = 0.0;
  std::vector<grid_value> lindeberg;            // strict ">" threshold
  std::vector<grid_value> lindeberg_ge;         // ">=" threshold
  std::vector<grid_value> neg_individual_min;
  std::vector<grid_value> neg_individual_max;
  std::vector<grid_value> neg_joint;
  std::vector<grid_value> sum_tail_probs;       // ">=" convention
  std::vector<chain_values> chebyshev;
  std::vector<grid_value> ui_tail;
};

namespace detail {

inline void require_positive_ds(double ds) {
  if (!(ds > 0.0)) throw engine_error("degenerate row: DS_n is zero");
}

}  // namespace detail

// L_n(eps) = (1/DS_n) sum_j E[xi^2 1{|xi| beyond eps sqrt(DS_n)}].
inline double lindeberg_sum(const std::vector<distribution>& members, double ds, double eps,
                            boundary b = boundary::gt) {
  detail::require_positive_ds(ds);
  double t = eps * std::sqrt(ds);
  double total = 0.0;
  for (const auto& d : members) total += d.truncated_second_moment(t, b);
  return total / ds;
}

// min_j P(|xi_j| < eps sqrt(DS_n)).
inline double negligibility_individual_min(const std::vector<distribution>& members, double ds,
                                           double eps) {
  detail::require_positive_ds(ds);
  double t = eps * std::sqrt(ds);
  double best = 1.0;
  for (const auto& d : members) best = std::min(best, 1.0 - d.tail_prob(t, boundary::ge));
  return best;
}

inline double negligibility_individual_max(const std::vector<distribution>& members, double ds,
                                           double eps) {
  detail::require_positive_ds(ds);
  double t = eps * std::sqrt(ds);
  double worst = 0.0;
  for (const auto& d : members) worst = std::max(worst, 1.0 - d.tail_prob(t, boundary::ge));
  return worst;
}

// P(max_j |xi_j| < eps sqrt(DS_n)) as the exact product over the row.
inline double negligibility_joint(const std::vector<distribution>& members, double ds, double eps) {
  detail::require_positive_ds(ds);
  double t = eps * std::sqrt(ds);
  double prod = 1.0;
  for (const auto& d : members) prod *= 1.0 - d.tail_prob(t, boundary::ge);
  return prod;
}

inline double sum_tail_probs(const std::vector<distribution>& members, double ds, double eps) {
  detail::require_positive_ds(ds);
  double t = eps * std::sqrt(ds);
  double total = 0.0;
  for (const auto& d : members) total += d.tail_prob(t, boundary::ge);
  return total;
}

// P(max >= t) <= sum_j P(|xi_j| >= t) <= L_n(eps, ">=") / eps^2, with the
// ">=" convention used on every link so the inequality is valid when atoms
// sit exactly on the threshold.
inline chain_values chebyshev_chain(const std::vector<distribution>& members, double ds, double eps) {
  chain_values c;
  c.eps = eps;
  c.lhs = 1.0 - negligibility_joint(members, ds, eps);
  c.mid = sum_tail_probs(members, ds, eps);
  c.rhs = lindeberg_sum(members, ds, eps, boundary::ge) / (eps * eps);
  return c;
}

// Convenience forms matching the scheme-level call signatures.
inline double lindeberg_sum(const scheme& s, std::int64_t n, double eps) {
  auto members = s.row(n);
  return lindeberg_sum(members, scheme::meta_for(n, members).ds, eps);
}

inline double negligibility_individual(const scheme& s, std::int64_t n, double eps) {
  auto members = s.row(n);
  return negligibility_individual_min(members, scheme::meta_for(n, members).ds, eps);
}

inline double negligibility_joint(const scheme& s, std::int64_t n, double eps) {
  auto members = s.row(n);
  return negligibility_joint(members, scheme::meta_for(n, members).ds, eps);
}

inline chain_values chebyshev_chain_check(const scheme& s, std::int64_t n, double eps) {
  auto members = s.row(n);
  return chebyshev_chain(members, scheme::meta_for(n, members).ds, eps);
}

inline row_diagnostics compute_row_diagnostics(const row_meta& meta,
                                               const std::vector<distribution>& members,
                                               const std::vector<double>& eps_grid) {
  row_diagnostics d;
  d.n = meta.n;
  d.k = meta.k;
  d.ds = meta.ds;
  for (double eps : eps_grid) {
    d.lindeberg.push_back({eps, lindeberg_sum(members, meta.ds, eps, boundary::gt)});
    d.lindeberg_ge.push_back({eps, lindeberg_sum(members, meta.ds, eps, boundary::ge)});
    d.neg_individual_min.push_back({eps, negligibility_individual_min(members, meta.ds, eps)});
    d.neg_individual_max.push_back({eps, negligibility_individual_max(members, meta.ds, eps)});
    d.neg_joint.push_back({eps, negligibility_joint(members, meta.ds, eps)});
    d.sum_tail_probs.push_back({eps, sum_tail_probs(members, meta.ds, eps)});
    d.chebyshev.push_back(chebyshev_chain(members, meta.ds, eps));
  }
  return d;
}

}  // namespace cltlab
