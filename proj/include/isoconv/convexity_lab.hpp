#pragma once

#include "isoconv/extremal_fn.hpp"

#include <cstdint>
#include <vector>

namespace isoconv {

// Floating-point checks flag a triple only when its slack drops below -kSlackTol.
inline constexpr double kSlackTol = 1e-9;
inline constexpr double kConcavityTol = 1e-12;

// Failure of the relaxed convexity inequality at x1 = a/N, x = b/N, x2 = c/N.
// A boundary failure of f(0) <= 0 (or f(1) <= 0) is recorded with a = b = c = 0 (or N).
struct Violation {
  int a = 0;
  int b = 0;
  int c = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct TupleViolation {
  std::vector<int> xs;  // sorted grid indices
  double lhs = 0.0;
  double rhs = 0.0;
  bool real_arithmetic = true;
};

struct ScanResult {
  std::vector<Violation> violations;  // sorted by (a, b, c)
  double worst_slack = 0.0;           // smallest slack over all scanned triples
  std::size_t checked = 0;
  bool exact = false;
};

// Scans every grid triple a < b < c for
//   f[b] <= ((c-b) f[a] + (b-a) f[c]) / (c-a) + scale ((c-a)/N)^p.
// Rational arithmetic when f carries exact values and p == 1.
ScanResult scan_class_F(const GridFunction& f, double scale = 1.0, double p = 1.0,
                        unsigned threads = 1);
std::vector<Violation> check_class_F(const GridFunction& f, double scale = 1.0, double p = 1.0,
                                     unsigned threads = 1);

// Class F scan plus the boundary condition max(f(0), f(1)) <= 0.
ScanResult scan_class_F0(const GridFunction& f, unsigned threads = 1);
std::vector<Violation> check_class_F0(const GridFunction& f, unsigned threads = 1);

// m-point mean inequality
//   f(mean x_i) <= mean f(x_i) + (max x_i - min x_i)
// over grid tuples whose mean is a grid point. m = 2 is exhaustive; m >= 3
// draws `samples` tuples by rejection sampling from a generator seeded with `seed`.
std::vector<TupleViolation> check_class_Fm(const GridFunction& f, int m, std::size_t samples,
                                           std::uint64_t seed);

// Strengthened inequality with additive term F(lambda) |x2 - x1|,
// lambda = (c-b)/(c-a) being the weight on x1.
ScanResult scan_strong(const GridFunction& f, unsigned threads = 1);
std::vector<Violation> check_strong(const GridFunction& f, unsigned threads = 1);

// Piecewise-linear tent through (0,0), (x0,h0), (1,0) with exact values.
// Throws std::invalid_argument unless x0 in (0,1), x0 N integral, h0 > 0.
GridFunction make_tent(const Rational& x0, const Rational& h0, int n);
GridFunction make_tent(const Rational& x0, double h0, int n);

// Discrete second differences f[i-1] - 2 f[i] + f[i+1] <= tol.
bool is_concave(const GridFunction& f, double tol = kConcavityTol);

// True iff f[i] <= 4x(1-x) + kSlackTol everywhere. Requires f concave with
// zero endpoints (std::invalid_argument otherwise).
bool check_flat(const GridFunction& f);

struct EndpointReduction {
  bool endpoint_ok = false;  // all triples with a == 0 or c == N hold
  bool full_ok = false;      // all triples hold
};

// Requires f concave (std::invalid_argument otherwise).
EndpointReduction check_endpoint_reduction(const GridFunction& f);

// Random concave grid function with f[0] = f[N] = 0 built from a random number
// of linear pieces with non-increasing slopes. When `cap` is given the result
// is scaled by min(1, min_i cap[i]/f[i]) so that it stays below the cap.
GridFunction sample_concave(int n, std::uint64_t seed, const GridFunction* cap = nullptr);

}  // namespace isoconv
