#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cltlab/gaussian.hpp"

namespace cltlab {

// Right-continuous step CDF: jump points xs (strictly ascending) with
// F(xs[i]) = f[i]; the left limit at xs[i] is f[i-1] (0 before the support).
struct step_cdf {
  std::vector<double> xs;
  std::vector<double> f;

  double left(std::size_t i) const { return i == 0 ? 0.0 : f[i - 1]; }
  bool empty() const { return xs.empty(); }
};

// sup_x |F(x) - Phi_{a,sigma2}(x)|, realized over jump points and left limits
// since F is a step function and Phi is continuous and monotone.
inline double ks_against_gaussian(const step_cdf& s, gaussian_params g) {
  double sigma = std::sqrt(g.sigma2);
  double d = 0.0;
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    double phi = std_normal_cdf((s.xs[i] - g.a) / sigma);
    d = std::max(d, std::fabs(s.f[i] - phi));
    d = std::max(d, std::fabs(s.left(i) - phi));
  }
  return d;
}

// Smallest jump point x with F(x) >= p.
inline double step_quantile(const step_cdf& s, double p) {
  auto it = std::lower_bound(s.f.begin(), s.f.end(), p);
  if (it == s.f.end()) return s.xs.back();
  return s.xs[static_cast<std::size_t>(it - s.f.begin())];
}

}  // namespace cltlab
