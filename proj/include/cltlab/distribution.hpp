#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cltlab/gaussian.hpp"
#include "cltlab/rational.hpp"
#include "cltlab/rng.hpp"

namespace cltlab {

// Threshold convention for |x| versus t.
enum class boundary { ge, gt };

struct lattice_atom {
  std::int64_t index;
  double prob;
};

// Finite-support centered law on the lattice {step * i + offset : i integer}.
// Atom positions are exact rationals; probabilities are doubles.
class lattice_dist {
 public:
  static lattice_dist make(rational step, rational offset, std::vector<lattice_atom> atoms) {
    if (!step.positive()) throw std::invalid_argument("lattice step must be positive");
    std::erase_if(atoms, [](const lattice_atom& a) { return a.prob == 0.0; });
    if (atoms.empty()) throw std::invalid_argument("lattice distribution needs at least one atom");
    std::sort(atoms.begin(), atoms.end(),
              [](const lattice_atom& a, const lattice_atom& b) { return a.index < b.index; });
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
      if (atoms[i].index == atoms[i + 1].index)
        throw std::invalid_argument("duplicate lattice index " + std::to_string(atoms[i].index));
    }
    lattice_dist d;
    d.step_ = step;
    d.offset_ = offset;
    d.atoms_ = std::move(atoms);
    d.finish();
    double total = 0.0;
    for (const auto& a : d.atoms_) {
      if (a.prob < 0.0) throw std::invalid_argument("negative probability");
      total += a.prob;
    }
    if (std::fabs(total - 1.0) > 1e-12)
      throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
    if (std::fabs(d.mean()) > 1e-12)
      throw std::invalid_argument("distribution is not centered (mean " + std::to_string(d.mean()) + ")");
    if (!(d.variance() > 0.0))
      throw std::invalid_argument("variance must be positive (use degenerate() for the point mass at 0)");
    return d;
  }

  // Point mass at 0; the only zero-variance law allowed, for sparse rows.
  static lattice_dist degenerate() {
    lattice_dist d;
    d.step_ = rational(1);
    d.offset_ = rational(0);
    d.atoms_ = {{0, 1.0}};
    d.finish();
    return d;
  }

  static lattice_dist rademacher() { return scaled_rademacher(rational(1)); }

  // +/- v with probability 1/2 each.
  static lattice_dist scaled_rademacher(rational v) {
    if (!v.positive()) throw std::invalid_argument("rademacher scale must be positive");
    return make(v, rational(0), {{-1, 0.5}, {1, 0.5}});
  }

  // -p with probability 1-p, 1-p with probability p; p in (0, 1).
  static lattice_dist centered_bernoulli(rational p) {
    if (!p.positive() || p.order(rational(1)) >= 0)
      throw std::invalid_argument("bernoulli parameter must lie in (0, 1)");
    auto offset = rational(0).sub(p);
    double pd = p.to_double();
    return make(rational(1), *offset, {{0, 1.0 - pd}, {1, pd}});
  }

  const rational& step() const { return step_; }
  const rational& offset() const { return offset_; }
  const std::vector<lattice_atom>& atoms() const { return atoms_; }
  const std::vector<double>& values() const { return values_; }

  double value(std::int64_t index) const {
    if (auto s = step_.mul(rational(index))) {
      if (auto v = s->add(offset_)) return v->to_double();
    }
    return step_.to_double() * static_cast<double>(index) + offset_.to_double();
  }

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) m += atoms_[i].prob * values_[i];
    return m;
  }

  double variance() const {
    double v = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) v += atoms_[i].prob * values_[i] * values_[i];
    return v;
  }

  double tail_prob(double t, boundary b) const {
    double p = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      double av = std::fabs(values_[i]);
      if (av > t || (b == boundary::ge && av == t)) p += atoms_[i].prob;
    }
    return p;
  }

  double truncated_second_moment(double t, boundary b) const {
    double m = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      double av = std::fabs(values_[i]);
      if (av > t || (b == boundary::ge && av == t)) m += atoms_[i].prob * values_[i] * values_[i];
    }
    return m;
  }

  double mass_at_abs(double t) const {
    double p = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (std::fabs(values_[i]) == t) p += atoms_[i].prob;
    return p;
  }

  double sample(xoshiro256& rng) const {
    double u = rng.uniform01();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    std::size_t idx = it == cum_.end() ? cum_.size() - 1 : static_cast<std::size_t>(it - cum_.begin());
    return values_[idx];
  }

 private:
  void finish() {
    values_.resize(atoms_.size());
    cum_.resize(atoms_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      values_[i] = value(atoms_[i].index);
      run += atoms_[i].prob;
      cum_[i] = run;
    }
  }

  rational step_{1};
  rational offset_{0};
  std::vector<lattice_atom> atoms_;
  std::vector<double> values_;
  std::vector<double> cum_;
};

enum class cont_family { gaussian, uniform, exponential };

// Centered continuous laws with closed-form tails: gaussian(sigma2),
// uniform on [-half_width, half_width], exponential(rate) shifted to mean 0.
class continuous_dist {
 public:
  static continuous_dist gaussian(double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    return {cont_family::gaussian, sigma2};
  }
  static continuous_dist uniform(double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("half_width must be positive");
    return {cont_family::uniform, half_width};
  }
  static continuous_dist exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
    return {cont_family::exponential, rate};
  }

  cont_family family() const { return family_; }
  double param() const { return param_; }

  double mean() const { return 0.0; }

  double variance() const {
    switch (family_) {
      case cont_family::gaussian: return param_;
      case cont_family::uniform: return param_ * param_ / 3.0;
      case cont_family::exponential: return 1.0 / (param_ * param_);
    }
    return 0.0;
  }

  // P(|X| >= t); the boundary carries no mass for continuous laws.
  double tail_prob(double t, boundary) const {
    switch (family_) {
      case cont_family::gaussian: {
        double sigma = std::sqrt(param_);
        return erfc_cody(t / (sigma * 1.4142135623730950488));
      }
      case cont_family::uniform:
        return t >= param_ ? 0.0 : (param_ - t) / param_;
      case cont_family::exponential: {
        double lambda = param_;
        double right = std::exp(-(1.0 + lambda * t));
        double left = lambda * t < 1.0 ? 1.0 - std::exp(-(1.0 - lambda * t)) : 0.0;
        return right + left;
      }
    }
    return 0.0;
  }

  // E[X^2 1{|X| > t}], closed form per family.
  double truncated_second_moment(double t, boundary) const {
    switch (family_) {
      case cont_family::gaussian: {
        double sigma = std::sqrt(param_);
        double u = t / sigma;
        double upper = 0.5 * erfc_cody(u * 0.70710678118654752440);
        return param_ * 2.0 * (u * std_normal_pdf(u) + upper);
      }
      case cont_family::uniform: {
        double h = param_;
        return t >= h ? 0.0 : (h * h * h - t * t * t) / (3.0 * h);
      }
      case cont_family::exponential: {
        double lambda = param_;
        double u = 1.0 + lambda * t;
        double right = std::exp(-u) * (u * u + 1.0);
        double left = 0.0;
        if (lambda * t < 1.0) {
          double v = 1.0 - lambda * t;
          left = 1.0 - std::exp(-v) * (v * v + 1.0);
        }
        return (right + left) / (lambda * lambda);
      }
    }
    return 0.0;
  }

  double sample(xoshiro256& rng) const {
    switch (family_) {
      case cont_family::gaussian:
        return std::sqrt(param_) * rng.gaussian();
      case cont_family::uniform:
        return (2.0 * rng.uniform01() - 1.0) * param_;
      case cont_family::exponential:
        return -std::log(rng.uniform01_pos()) / param_ - 1.0 / param_;
    }
    return 0.0;
  }

 private:
  continuous_dist(cont_family f, double p) : family_(f), param_(p) {}

  cont_family family_;
  double param_;
};

// Tagged union over the two families.
class distribution {
 public:
  distribution(lattice_dist d) : v_(std::move(d)) {}
  distribution(continuous_dist d) : v_(std::move(d)) {}

  bool is_lattice() const { return std::holds_alternative<lattice_dist>(v_); }
  const lattice_dist& lattice() const { return std::get<lattice_dist>(v_); }
  const continuous_dist& continuous() const { return std::get<continuous_dist>(v_); }

  double mean() const {
    return std::visit([](const auto& d) { return d.mean(); }, v_);
  }
  double variance() const {
    return std::visit([](const auto& d) { return d.variance(); }, v_);
  }
  double tail_prob(double t, boundary b) const {
    return std::visit([&](const auto& d) { return d.tail_prob(t, b); }, v_);
  }
  double truncated_second_moment(double t, boundary b = boundary::gt) const {
    return std::visit([&](const auto& d) { return d.truncated_second_moment(t, b); }, v_);
  }
  double sample(xoshiro256& rng) const {
    return std::visit([&](const auto& d) { return d.sample(rng); }, v_);
  }

 private:
  std::variant<lattice_dist, continuous_dist> v_;
};

}  // namespace cltlab
