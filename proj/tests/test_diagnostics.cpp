#include <catch_amalgamated.hpp>

#include <cmath>

#include "cltlab/diagnostics.hpp"

using namespace cltlab;

TEST_CASE("variance-escape at n=10, eps=0.5") {
  scheme s = make_variance_escape();
  // Only the +-10 atoms lie beyond t = 0.5 sqrt(19.9); each member
  // contributes 2 * (1/200) * 100 = 1, so L = 10 / 19.9.
  CHECK(lindeberg_sum(s, 10, 0.5) == Catch::Approx(10.0 / 19.9).epsilon(1e-12));
  CHECK(negligibility_joint(s, 10, 0.5) == Catch::Approx(std::pow(0.99, 10)).epsilon(1e-12));
  auto c = chebyshev_chain_check(s, 10, 0.5);
  CHECK(c.lhs == Catch::Approx(1.0 - 0.9043821).margin(1e-7));
  CHECK(c.mid == Catch::Approx(0.1).epsilon(1e-12));
  CHECK(c.rhs == Catch::Approx(2.0100503).margin(1e-7));
}

TEST_CASE("poisson-bernoulli at n=100, eps=0.5") {
  scheme s = make_poisson_bernoulli(rational(1));
  CHECK(lindeberg_sum(s, 100, 0.5) == Catch::Approx(0.99).epsilon(1e-12));
  CHECK(negligibility_individual(s, 100, 0.5) == Catch::Approx(0.99).epsilon(1e-12));

  // Joint negligibility equals the exact product formula.
  double joint = negligibility_joint(s, 100, 0.5);
  double prod = 1.0;
  for (int j = 0; j < 100; ++j) prod *= 0.99;
  CHECK(joint == Catch::Approx(prod).epsilon(1e-14));
  CHECK(joint == Catch::Approx(0.3660323).margin(1e-7));

  auto c = chebyshev_chain_check(s, 100, 0.5);
  CHECK(c.lhs == Catch::Approx(1.0 - joint).epsilon(1e-12));
  CHECK(c.mid == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(c.rhs == Catch::Approx(3.96).epsilon(1e-12));
  CHECK(c.lhs <= c.mid);
  CHECK(c.mid <= c.rhs + 1e-12);
}

TEST_CASE("dominant-term at n=10") {
  scheme s = make_dominant_term();
  auto members = s.row(10);
  double ds = scheme::meta_for(10, members).ds;
  CHECK(ds == Catch::Approx(1.09).epsilon(1e-15));
  // The Rademacher term is never negligible: min over j is 0.
  CHECK(negligibility_individual_min(members, ds, 0.5) == 0.0);
  CHECK(negligibility_individual_max(members, ds, 0.5) == 1.0);
  CHECK(negligibility_joint(members, ds, 0.5) == 0.0);
}

TEST_CASE("boundary convention splits atoms sitting exactly on the threshold") {
  // 16 members at +-1/2; DS = 4 and t = 0.25 * 2 = 0.5 lands on the atoms.
  scheme s = make_iid(distribution(lattice_dist::scaled_rademacher(*rational::make(1, 2))));
  auto members = s.row(16);
  double ds = scheme::meta_for(16, members).ds;
  REQUIRE(ds == 4.0);
  CHECK(lindeberg_sum(members, ds, 0.25, boundary::gt) == 0.0);
  CHECK(lindeberg_sum(members, ds, 0.25, boundary::ge) == 1.0);
  CHECK(sum_tail_probs(members, ds, 0.25) == 16.0);
  CHECK(negligibility_joint(members, ds, 0.25) == 0.0);
  // The chain stays ordered because every link uses ">=".
  auto c = chebyshev_chain(members, ds, 0.25);
  CHECK(c.lhs <= c.mid);
  CHECK(c.mid <= c.rhs + 1e-12);
  CHECK(c.rhs == Catch::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("chain inequality across builtins and grids") {
  std::vector<scheme> schemes;
  schemes.push_back(make_iid(distribution(lattice_dist::rademacher())));
  schemes.push_back(make_iid(distribution(continuous_dist::gaussian(1.0))));
  schemes.push_back(make_iid(distribution(continuous_dist::exponential(1.5))));
  schemes.push_back(make_poisson_bernoulli(*rational::make(3, 2)));
  schemes.push_back(make_variance_escape());
  schemes.push_back(make_dominant_term());
  for (const auto& s : schemes) {
    for (std::int64_t n : {2, 5, 17, 64, 333}) {
      auto members = s.row(n);
      double ds = scheme::meta_for(n, members).ds;
      for (double eps : {0.05, 0.1, 0.2, 0.5, 1.0, 3.0}) {
        auto c = chebyshev_chain(members, ds, eps);
        INFO(s.name() << " n=" << n << " eps=" << eps);
        CHECK(c.lhs <= c.mid + 1e-15);
        CHECK(c.mid <= c.rhs + 1e-12);
        CHECK(c.lhs >= 0.0);
        CHECK(c.lhs <= 1.0);
      }
    }
  }
}

TEST_CASE("full row diagnostics") {
  scheme s = make_poisson_bernoulli(rational(1));
  auto members = s.row(100);
  auto meta = scheme::meta_for(100, members);
  auto d = compute_row_diagnostics(meta, members, {0.2, 0.5});
  CHECK(d.n == 100);
  CHECK(d.k == 100);
  REQUIRE(d.lindeberg.size() == 2);
  REQUIRE(d.chebyshev.size() == 2);
  CHECK(d.lindeberg[1].key == 0.5);
  CHECK(d.lindeberg[1].value == Catch::Approx(0.99).epsilon(1e-12));
  CHECK(d.neg_joint[1].value == Catch::Approx(0.3660323).margin(1e-7));
  CHECK(d.sum_tail_probs[1].value == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(d.ui_tail.empty());  // engines fill this downstream

  // Monotonicity over eps: smaller eps gives larger Lindeberg sum and
  // smaller joint negligibility.
  CHECK(d.lindeberg[0].value >= d.lindeberg[1].value);
  CHECK(d.neg_joint[0].value <= d.neg_joint[1].value);
}

TEST_CASE("degenerate rows are rejected") {
  std::map<std::int64_t, std::vector<distribution>> rows;
  rows.emplace(1, std::vector<distribution>{distribution(lattice_dist::degenerate())});
  scheme s = make_custom(std::move(rows));
  auto members = s.row(1);
  double ds = scheme::meta_for(1, members).ds;
  CHECK(ds == 0.0);
  CHECK_THROWS_AS(lindeberg_sum(members, ds, 0.5, boundary::gt), engine_error);
  CHECK_THROWS_AS(negligibility_joint(members, ds, 0.5), engine_error);
}
