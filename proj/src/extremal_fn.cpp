#include "isoconv/extremal_fn.hpp"

#include "isoconv/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace isoconv {

namespace {

constexpr unsigned kTableSize = 64;

struct BreakpointTable {
  std::vector<Rational> exact;
  std::vector<double> approx;

  BreakpointTable() {
    exact.reserve(kTableSize + 1);
    for (unsigned k = 0; k <= kTableSize; ++k) exact.push_back(beta(k));
    for (const auto& b : exact) approx.push_back(to_double(b));
  }
};

const BreakpointTable& breakpoints() {
  static const BreakpointTable table;
  return table;
}

double beta_approx(unsigned k) {
  if (k <= kTableSize) return breakpoints().approx[k];
  double r = static_cast<double>(k) / (k + 1);
  return std::pow(r, static_cast<double>(k) * (k + 1));
}

double term(unsigned k, double t) { return k * std::pow(t, 1.0 - 1.0 / k); }

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "argument " << x << " outside [0, 1]";
    throw std::domain_error(os.str());
  }
}

}  // namespace

GridFunction::GridFunction(int n, std::vector<double> values, std::string label)
    : n_(n), values_(std::move(values)), label_(std::move(label)) {
  if (n_ < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (values_.size() != static_cast<std::size_t>(n_) + 1)
    throw std::invalid_argument("grid function needs N+1 values");
}

GridFunction::GridFunction(int n, std::vector<Rational> exact, std::string label)
    : n_(n), label_(std::move(label)) {
  if (n_ < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (exact.size() != static_cast<std::size_t>(n_) + 1)
    throw std::invalid_argument("grid function needs N+1 values");
  values_.reserve(exact.size());
  for (const auto& q : exact) values_.push_back(to_double(q));
  exact_ = std::move(exact);
}

GridFunction tabulate(int n, const std::function<double(double)>& fn, std::string label) {
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2");
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[i] = fn(static_cast<double>(i) / n);
  return GridFunction(n, std::move(v), std::move(label));
}

Rational beta(unsigned k) {
  if (k == 0) return make_rational(1, 2);
  return pow(make_rational(k, k + 1), k * (k + 1));
}

unsigned default_k_cap() {
  static const unsigned cap = [] {
    const Rational threshold = Rational(1) / Rational(BigInt(1) << 64);
    unsigned k = 1;
    while (!(beta(k) < threshold)) ++k;
    return k;
  }();
  return cap;
}

FValue eval_F(double x, unsigned k_cap) {
  check_unit(x);
  if (k_cap == 0) throw std::invalid_argument("k_cap must be positive");
  const double t = std::min(x, 1.0 - x);
  if (t == 0.0) return {0.0, 2};
  unsigned k = 1;
  while (k < k_cap && beta_approx(k) > t) ++k;
  return {term(k, t), k};
}

FValue eval_F(const Rational& x, unsigned k_cap) {
  if (x < 0 || x > 1) {
    throw std::domain_error("argument " + to_string(x) + " outside [0, 1]");
  }
  if (k_cap == 0) throw std::invalid_argument("k_cap must be positive");
  const Rational t = std::min(x, Rational(1) - x);
  if (t == 0) return {0.0, 2};
  unsigned k = 1;
  while (k < k_cap && (k <= kTableSize ? breakpoints().exact[k] : beta(k)) > t) ++k;
  return {term(k, to_double(t)), k};
}

double parabola(double x) {
  check_unit(x);
  return 4.0 * x * (1.0 - x);
}

double rescale_to_interval(double u, double v, double c, double x) {
  if (!(u < v)) throw std::invalid_argument("interval needs u < v");
  if (!(c > 0)) throw std::invalid_argument("scale c must be positive");
  if (!(x >= u && x <= v)) {
    std::ostringstream os;
    os << "argument " << x << " outside [" << u << ", " << v << "]";
    throw std::domain_error(os.str());
  }
  const double len = v - u;
  return c * len * eval_F(std::clamp((x - u) / len, 0.0, 1.0)).value;
}

SupEstimate estimate_sup(double p, int n, double tol, int max_iters, unsigned threads,
                         const SweepObserver& observer) {
  if (!(p > 0)) throw std::invalid_argument("exponent p must be positive");
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");

  const std::size_t size = static_cast<std::size_t>(n) + 1;
  std::vector<double> spread(size), inv(size, 0.0);
  for (int d = 1; d <= n; ++d) {
    spread[d] = std::pow(static_cast<double>(d) / n, p);
    inv[d] = 1.0 / d;
  }

  std::vector<double> g(size, std::max(1.0, std::pow(2.0, p)));
  g.front() = 0.0;
  g.back() = 0.0;

  // Best bound on g[b] from triples with left end a.
  auto bound_from = [&](int a, int b) {
    double best = std::numeric_limits<double>::infinity();
    const double ga = g[a];
    for (int c = b + 1; c <= n; ++c) {
      const double w = (b - a) * inv[c - a];
      best = std::min(best, ga + w * (g[c] - ga) + spread[c - a]);
    }
    return best;
  };

  threads = resolve_threads(threads);
  std::vector<double> partial(size);
  int iter = 0;
  double decrease = 0.0;
  while (iter < max_iters) {
    ++iter;
    decrease = 0.0;
    for (int b = 1; b < n; ++b) {
      double best = g[b];
      if (threads > 1) {
        parallel_for(static_cast<std::size_t>(b), threads,
                     [&](std::size_t a) { partial[a] = bound_from(static_cast<int>(a), b); });
        for (int a = 0; a < b; ++a) best = std::min(best, partial[a]);
      } else {
        for (int a = 0; a < b; ++a) best = std::min(best, bound_from(a, b));
      }
      decrease = std::max(decrease, g[b] - best);
      g[b] = best;
    }
    if (observer) observer(iter, g);
    if (decrease < tol) {
      return {GridFunction(n, std::move(g), "sup_p"), iter, decrease};
    }
  }
  std::ostringstream os;
  os << "estimate_sup did not converge in " << max_iters << " sweeps (last decrease " << decrease
     << ")";
  throw NonConvergenceError(os.str(), SupEstimate{GridFunction(n, std::move(g), "sup_p"), iter, decrease});
}

}  // namespace isoconv
