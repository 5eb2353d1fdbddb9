#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cltlab/distribution.hpp"
#include "cltlab/errors.hpp"

namespace cltlab {

struct row_meta {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double ds = 0.0;
  bool lattice_compatible = false;
  std::optional<rational> common_step;  // gcd of member steps when lattice
  std::optional<rational> sum_offset;   // exact sum of member offsets when lattice
};

// Triangular array: n -> row of k(n) independent centered distributions.
class scheme {
 public:
  using k_fn = std::function<std::int64_t(std::int64_t)>;
  using row_fn = std::function<std::vector<distribution>(std::int64_t)>;

  scheme(std::string name, k_fn k, row_fn rows)
      : name_(std::move(name)), k_(std::move(k)), rows_(std::move(rows)) {}

  const std::string& name() const { return name_; }

  std::int64_t k(std::int64_t n) const { return k_(n); }

  std::vector<distribution> row(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("row index n must be >= 1");
    return rows_(n);
  }

  row_meta meta(std::int64_t n) const { return meta_for(n, row(n)); }

  // DS_n as the member-order sum of variances; lattice compatibility via the
  // rational gcd of member steps plus an exactly representable offset sum.
  static row_meta meta_for(std::int64_t n, const std::vector<distribution>& members) {
    row_meta m;
    m.n = n;
    m.k = static_cast<std::int64_t>(members.size());
    bool lattice = !members.empty();
    std::optional<rational> step;
    std::optional<rational> offset = rational(0);
    for (const auto& d : members) {
      m.ds += d.variance();
      if (!d.is_lattice()) {
        lattice = false;
        continue;
      }
      if (!lattice) continue;
      const lattice_dist& ld = d.lattice();
      step = step ? rational_gcd(*step, ld.step()) : std::optional<rational>(ld.step());
      if (offset) offset = offset->add(ld.offset());
      if (!step || !offset) lattice = false;
    }
    if (lattice && step && offset) {
      m.lattice_compatible = true;
      m.common_step = step;
      m.sum_offset = offset;
    }
    return m;
  }

 private:
  std::string name_;
  k_fn k_;
  row_fn rows_;
};

// (a) iid copies of a base distribution, k_n = n.
inline scheme make_iid(distribution base) {
  return scheme(
      "iid", [](std::int64_t n) { return n; },
      [base = std::move(base)](std::int64_t n) {
        return std::vector<distribution>(static_cast<std::size_t>(n), base);
      });
}

// (b) centered Bernoulli(lambda/n) terms, k_n = n.
inline scheme make_poisson_bernoulli(rational lambda) {
  if (!lambda.positive()) throw std::invalid_argument("lambda must be positive");
  return scheme(
      "poisson-bernoulli", [](std::int64_t n) { return n; },
      [lambda](std::int64_t n) {
        if (lambda.order(rational(n)) >= 0)
          throw std::invalid_argument("poisson-bernoulli requires lambda/n < 1 at n=" + std::to_string(n));
        auto p = lambda.div(rational(n));
        if (!p)
          throw std::invalid_argument(
              "lambda/n is not representable as an int64 rational at n=" + std::to_string(n) +
              "; pass lambda in p/q form with a small denominator");
        distribution member(lattice_dist::centered_bernoulli(*p));
        return std::vector<distribution>(static_cast<std::size_t>(n), member);
      });
}

// (c) atoms {-n, -1, +1, +n} with P(+-n) = 1/(2 n^2), k_n = n; the variance
// escaping to the +-n atoms approaches 1/2 of DS_n.
inline scheme make_variance_escape() {
  return scheme(
      "variance-escape", [](std::int64_t n) { return n; },
      [](std::int64_t n) {
        double delta = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
        double p_big = 0.5 * delta;
        double p_small = 0.5 - p_big;
        distribution member(lattice_dist::make(
            rational(1), rational(0),
            {{-n, p_big}, {-1, p_small}, {1, p_small}, {n, p_big}}));
        return std::vector<distribution>(static_cast<std::size_t>(n), member);
      });
}

// (d) one Rademacher(+-1) plus n-1 Rademacher(+-1/n) terms, k_n = n.
inline scheme make_dominant_term() {
  return scheme(
      "dominant-term", [](std::int64_t n) { return n; },
      [](std::int64_t n) {
        std::vector<distribution> row;
        row.reserve(static_cast<std::size_t>(n));
        row.emplace_back(lattice_dist::rademacher());
        if (n > 1) {
          auto small = rational::make(1, n);
          if (!small) throw std::invalid_argument("1/n is not representable at n=" + std::to_string(n));
          distribution member(lattice_dist::scaled_rademacher(*small));
          for (std::int64_t j = 1; j < n; ++j) row.push_back(member);
        }
        return row;
      });
}

// (e) rows listed explicitly per n.
inline scheme make_custom(std::map<std::int64_t, std::vector<distribution>> rows) {
  auto shared = std::make_shared<std::map<std::int64_t, std::vector<distribution>>>(std::move(rows));
  return scheme(
      "custom",
      [shared](std::int64_t n) {
        auto it = shared->find(n);
        if (it == shared->end())
          throw std::invalid_argument("custom scheme has no row for n=" + std::to_string(n));
        return static_cast<std::int64_t>(it->second.size());
      },
      [shared](std::int64_t n) {
        auto it = shared->find(n);
        if (it == shared->end())
          throw std::invalid_argument("custom scheme has no row for n=" + std::to_string(n));
        return it->second;
      });
}

inline const std::vector<std::string>& builtin_scheme_names() {
  static const std::vector<std::string> names = {"iid", "poisson-bernoulli", "variance-escape",
                                                 "dominant-term", "custom"};
  return names;
}

}  // namespace cltlab
