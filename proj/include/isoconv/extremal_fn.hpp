#pragma once

#include "isoconv/rational.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoconv {

// Absolute tolerance for real comparisons in this module.
inline constexpr double kEvalTol = 1e-12;

struct FValue {
  double value = 0.0;
  unsigned argmin_k = 1;
};

// Values of a function on the uniform grid {i/N : 0 <= i <= N}. `exact`, when
// present, holds the same values as rationals and enables exact checks.
class GridFunction {
 public:
  GridFunction(int n, std::vector<double> values, std::string label = {});
  GridFunction(int n, std::vector<Rational> exact, std::string label = {});

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double x(std::size_t i) const { return static_cast<double>(i) / n_; }
  std::span<const double> values() const { return values_; }
  const std::optional<std::vector<Rational>>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  int n_;
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
  std::string label_;
};

// Tabulates fn(i/N) for i = 0..N.
GridFunction tabulate(int n, const std::function<double(double)>& fn, std::string label = {});

// Breakpoint: 1/2 for k = 0, (k/(k+1))^(k(k+1)) for k >= 1.
Rational beta(unsigned k);

// Smallest k with beta(k) < 2^-64.
unsigned default_k_cap();

// F(x) = min over 1 <= k <= k_cap of k * ||x||^(1 - 1/k), ||x|| = min(x, 1-x).
// argmin_k is the smallest minimizing k; F(0) = F(1) = 0 with argmin_k = 2.
// Throws std::domain_error outside [0, 1].
FValue eval_F(double x, unsigned k_cap = default_k_cap());

// Same, with the minimizing k selected by exact comparison against beta(k).
FValue eval_F(const Rational& x, unsigned k_cap = default_k_cap());

// 4x(1-x).
double parabola(double x);

// c (v-u) F((x-u)/(v-u)): the largest function on [u,v] satisfying the
// c-relaxed convexity inequality and non-positive at u and v.
double rescale_to_interval(double u, double v, double c, double x);

struct SupEstimate {
  GridFunction grid;
  int iterations = 0;
  double last_decrease = 0.0;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, SupEstimate last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const SupEstimate& last_iterate() const { return last_; }

 private:
  SupEstimate last_;
};

// Called after every sweep with the 1-based sweep number and current iterate.
using SweepObserver = std::function<void(int, std::span<const double>)>;

// Pointwise-largest grid function g with g[0] <= 0, g[N] <= 0 and
//   g[b] <= lambda g[a] + (1 - lambda) g[c] + ((c - a)/N)^p,  lambda = (c-b)/(c-a)
// for all a < b < c, by downward Gauss-Seidel sweeps from the constant upper
// bound max(1, 2^p). Stops once a sweep lowers no value by tol or more.
// Throws NonConvergenceError after max_iters sweeps.
SupEstimate estimate_sup(double p, int n, double tol = 1e-9, int max_iters = 100000,
                         unsigned threads = 1, const SweepObserver& observer = {});

}  // namespace isoconv
