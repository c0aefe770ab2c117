#include "isoconv/convexity_lab.hpp"

#include "isoconv/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace isoconv {

namespace {

struct TripleEval {
  double lhs;
  double rhs;
  double slack;
  bool violated;
};

struct AllTriples {
  bool operator()(int, int, int) const { return true; }
};

// Runs `eval` over every triple a < b < c accepted by `keep`, one task per b.
template <typename Eval, typename Keep = AllTriples>
ScanResult scan_triples(const GridFunction& f, unsigned threads, bool exact, Eval eval,
                        Keep keep = {}) {
  const int n = f.n();
  struct Row {
    std::vector<Violation> violations;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t checked = 0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n) + 1);
  parallel_for(static_cast<std::size_t>(n - 1), threads, [&](std::size_t idx) {
    const int b = static_cast<int>(idx) + 1;
    Row& row = rows[b];
    for (int a = 0; a < b; ++a) {
      for (int c = b + 1; c <= n; ++c) {
        if (!keep(a, b, c)) continue;
        const TripleEval e = eval(a, b, c);
        ++row.checked;
        row.worst = std::min(row.worst, e.slack);
        if (e.violated) row.violations.push_back({a, b, c, e.lhs, e.rhs, e.slack});
      }
    }
  });

  ScanResult out;
  out.exact = exact;
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (auto& row : rows) {
    out.checked += row.checked;
    out.worst_slack = std::min(out.worst_slack, row.worst);
    out.violations.insert(out.violations.end(), row.violations.begin(), row.violations.end());
  }
  if (out.checked == 0) out.worst_slack = 0.0;
  std::sort(out.violations.begin(), out.violations.end(), [](const Violation& x, const Violation& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  });
  return out;
}

template <typename Keep = AllTriples>
ScanResult scan_relaxed(const GridFunction& f, double scale, double p, unsigned threads,
                        Keep keep = {}) {
  if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
  if (!(p > 0)) throw std::invalid_argument("exponent p must be positive");
  const int n = f.n();

  if (f.is_exact() && p == 1.0) {
    const auto& q = *f.exact();
    const Rational scale_q = rational_from_double(scale);
    const Rational inv_n = make_rational(1, n);
    return scan_triples(
        f, threads, true,
        [&](int a, int b, int c) {
          const Rational width(c - a);
          const Rational lhs = q[b] * width;
          const Rational rhs = (c - b) * q[a] + (b - a) * q[c] + scale_q * width * width * inv_n;
          const double l = to_double(q[b]);
          const double r = to_double(rhs / width);
          return TripleEval{l, r, r - l, lhs > rhs};
        },
        keep);
  }

  std::vector<double> spread(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) spread[d] = scale * std::pow(static_cast<double>(d) / n, p);
  return scan_triples(
      f, threads, false,
      [&](int a, int b, int c) {
        const double lhs = f[b];
        const double rhs = ((c - b) * f[a] + (b - a) * f[c]) / (c - a) + spread[c - a];
        const double slack = rhs - lhs;
        return TripleEval{lhs, rhs, slack, slack < -kSlackTol};
      },
      keep);
}

void add_boundary_violations(const GridFunction& f, ScanResult& scan) {
  const int n = f.n();
  auto positive = [&](int i) {
    if (f.is_exact()) return (*f.exact())[i] > 0;
    return f[i] > kSlackTol;
  };
  std::vector<Violation> boundary;
  for (int i : {0, n}) {
    if (positive(i)) boundary.push_back({i, i, i, f[i], 0.0, -f[i]});
    scan.worst_slack = std::min(scan.worst_slack, -f[i]);
  }
  // (0,0,0) sorts first and (N,N,N) last.
  if (!boundary.empty() && boundary.front().a == 0)
    scan.violations.insert(scan.violations.begin(), boundary.front());
  if (!boundary.empty() && boundary.back().a == n) scan.violations.push_back(boundary.back());
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ScanResult scan_class_F(const GridFunction& f, double scale, double p, unsigned threads) {
  return scan_relaxed(f, scale, p, threads);
}

std::vector<Violation> check_class_F(const GridFunction& f, double scale, double p,
                                     unsigned threads) {
  return scan_class_F(f, scale, p, threads).violations;
}

ScanResult scan_class_F0(const GridFunction& f, unsigned threads) {
  ScanResult scan = scan_relaxed(f, 1.0, 1.0, threads);
  add_boundary_violations(f, scan);
  return scan;
}

std::vector<Violation> check_class_F0(const GridFunction& f, unsigned threads) {
  return scan_class_F0(f, threads).violations;
}

std::vector<TupleViolation> check_class_Fm(const GridFunction& f, int m, std::size_t samples,
                                           std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  const int n = f.n();
  std::vector<TupleViolation> out;

  auto test = [&](std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    const long long sum = std::accumulate(xs.begin(), xs.end(), 0LL);
    const int mean = static_cast<int>(sum / m);
    const int spread = xs.back() - xs.front();
    if (f.is_exact()) {
      const auto& q = *f.exact();
      Rational total = 0;
      for (int i : xs) total += q[i];
      const Rational rhs = total / m + make_rational(spread, n);
      if (q[mean] > rhs) out.push_back({std::move(xs), to_double(q[mean]), to_double(rhs), false});
      return;
    }
    double total = 0.0;
    for (int i : xs) total += f[i];
    const double rhs = total / m + static_cast<double>(spread) / n;
    if (f[mean] - rhs > kSlackTol) out.push_back({std::move(xs), f[mean], rhs, true});
  };

  if (m == 2) {
    for (int i = 0; i <= n; ++i)
      for (int j = i + 2; j <= n; j += 2) test({i, j});
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n);
  std::vector<int> xs(static_cast<std::size_t>(m));
  for (std::size_t accepted = 0; accepted < samples;) {
    long long sum = 0;
    for (auto& x : xs) {
      x = pick(rng);
      sum += x;
    }
    if (sum % m != 0) continue;
    ++accepted;
    test(xs);
  }
  return out;
}

ScanResult scan_strong(const GridFunction& f, unsigned threads) {
  const int n = f.n();
  // factor[w][d] = F(d / w)
  std::vector<std::vector<double>> factor(static_cast<std::size_t>(n) + 1);
  for (int w = 1; w <= n; ++w) {
    factor[w].resize(static_cast<std::size_t>(w) + 1);
    for (int d = 0; d <= w; ++d) factor[w][d] = eval_F(make_rational(d, w)).value;
  }
  return scan_triples(f, threads, false, [&](int a, int b, int c) {
    const int w = c - a;
    const double lhs = f[b];
    const double rhs = ((c - b) * f[a] + (b - a) * f[c]) / w +
                       factor[w][c - b] * static_cast<double>(w) / n;
    const double slack = rhs - lhs;
    return TripleEval{lhs, rhs, slack, slack < -kSlackTol};
  });
}

std::vector<Violation> check_strong(const GridFunction& f, unsigned threads) {
  return scan_strong(f, threads).violations;
}

GridFunction make_tent(const Rational& x0, const Rational& h0, int n) {
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (!(x0 > 0 && x0 < 1)) throw std::invalid_argument("tent apex must lie in (0, 1)");
  if (!(h0 > 0)) throw std::invalid_argument("tent height must be positive");
  const Rational apex = x0 * n;
  if (denominator(apex) != 1)
    throw std::invalid_argument("tent apex " + to_string(x0) + " is not on the grid 1/" +
                                std::to_string(n));
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const Rational x = make_rational(i, n);
    v[i] = x <= x0 ? h0 * x / x0 : h0 * (1 - x) / (1 - x0);
  }
  return GridFunction(n, std::move(v), "tent:" + to_string(x0) + "," + to_string(h0));
}

GridFunction make_tent(const Rational& x0, double h0, int n) {
  if (!(h0 > 0) || !std::isfinite(h0)) throw std::invalid_argument("tent height must be positive");
  return make_tent(x0, rational_from_double(h0), n);
}

bool is_concave(const GridFunction& f, double tol) {
  for (int i = 1; i < f.n(); ++i)
    if (f[i - 1] - 2 * f[i] + f[i + 1] > tol) return false;
  return true;
}

bool check_flat(const GridFunction& f) {
  if (!is_concave(f)) throw std::invalid_argument("check_flat requires a concave function");
  if (std::abs(f[0]) > kConcavityTol || std::abs(f[f.n()]) > kConcavityTol)
    throw std::invalid_argument("check_flat requires f(0) = f(1) = 0");
  for (int i = 0; i <= f.n(); ++i)
    if (f[i] > parabola(f.x(i)) + kSlackTol) return false;
  return true;
}

EndpointReduction check_endpoint_reduction(const GridFunction& f) {
  if (!is_concave(f)) throw std::invalid_argument("endpoint reduction requires a concave function");
  const int n = f.n();
  const auto endpoint = scan_relaxed(f, 1.0, 1.0, 1, [n](int a, int, int c) { return a == 0 || c == n; });
  return {endpoint.violations.empty(), check_class_F(f).empty()};
}

GridFunction sample_concave(int n, std::uint64_t seed, const GridFunction* cap) {
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (cap && cap->n() != n) throw std::invalid_argument("cap grid resolution mismatch");
  std::mt19937_64 rng(seed);

  // Split the n unit steps into `pieces` runs and give each run one slope.
  const int pieces = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  std::vector<int> cuts{0, n};
  for (int k = 1; k < pieces; ++k) cuts.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1)));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> levels(cuts.size() - 1);
  for (auto& s : levels) s = unit_double(rng);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  const double amplitude = 4.0 * unit_double(rng);

  std::vector<double> slope(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r + 1 < cuts.size(); ++r)
    for (int j = cuts[r]; j < cuts[r + 1]; ++j) slope[j] = levels[r];
  const double mean = std::accumulate(slope.begin(), slope.end(), 0.0) / n;

  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j < n; ++j) v[j + 1] = v[j] + amplitude * (slope[j] - mean) / n;
  v[n] = 0.0;
  for (int i = 1; i < n; ++i) v[i] = std::max(v[i], 0.0);

  if (cap) {
    double mult = 1.0;
    for (int i = 1; i < n; ++i)
      if (v[i] > 0) mult = std::min(mult, (*cap)[i] / v[i]);
    mult = std::max(mult, 0.0);
    for (auto& x : v) x *= mult;
  }
  return GridFunction(n, std::move(v), "concave:" + std::to_string(seed));
}

}  // namespace isoconv
