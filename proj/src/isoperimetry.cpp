#include "isoconv/isoperimetry.hpp"

#include "isoconv/extremal_fn.hpp"
#include "isoconv/parallel.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

namespace isoconv {

namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 15;

struct Binomials {
  std::uint64_t c[kMaxGroupOrder + 1][kMaxGroupOrder + 1] = {};
  Binomials() {
    for (int n = 0; n <= kMaxGroupOrder; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
  std::uint64_t operator()(int n, int k) const { return (k < 0 || k > n) ? 0 : c[n][k]; }
};

const Binomials& binom() {
  static const Binomials b;
  return b;
}

// k-subset of {0..width-1} with the given colex rank (= rank in increasing mask order).
std::uint64_t unrank_colex(std::uint64_t rank, int k, int width) {
  std::uint64_t mask = 0;
  int top = width - 1;
  for (int i = k; i >= 1; --i) {
    while (binom()(top, i) > rank) --top;
    mask |= std::uint64_t{1} << top;
    rank -= binom()(top, i);
    --top;
  }
  return mask;
}

std::uint64_t next_combination(std::uint64_t x) {
  const std::uint64_t low = x & (~x + 1);
  const std::uint64_t ripple = x + low;
  return ripple | (((x ^ ripple) >> 2) / low);
}

struct ChunkTask {
  int n;
  std::uint64_t start;
  std::uint64_t count;
};

struct ChunkResult {
  int boundary = std::numeric_limits<int>::max();
  std::uint64_t mask = 0;
};

ChunkResult scan_chunk(const CayleyDigraph& d, const ChunkTask& t) {
  ChunkResult best;
  const int k = t.n - 1;
  std::uint64_t combo = unrank_colex(t.start, k, d.group().order() - 1);
  for (std::uint64_t i = 0; i < t.count; ++i) {
    const std::uint64_t a = (combo << 1) | 1u;
    const int b = d.boundary(a);
    if (b < best.boundary) {
      best.boundary = b;
      best.mask = a;
    }
    if (k > 0 && i + 1 < t.count) combo = next_combination(combo);
  }
  return best;
}

std::vector<ChunkTask> plan(int order, int n) {
  std::vector<ChunkTask> tasks;
  if (n <= 0 || n >= order) return tasks;
  const std::uint64_t total = binom()(order - 1, n - 1);
  for (std::uint64_t s = 0; s < total; s += kChunk) tasks.push_back({n, s, std::min(kChunk, total - s)});
  return tasks;
}

// Chunks are scanned in mask order, so a strict-improvement reduction in task
// order yields the smallest minimizing mask.
MinBoundary reduce(const CayleyDigraph& d, int n, const std::vector<ChunkTask>& tasks,
                   const std::vector<ChunkResult>& results, std::size_t begin, std::size_t end) {
  const int order = d.group().order();
  if (n == 0) return {0, VertexSet{0, order}, 1};
  if (n == order) return {0, VertexSet::full(order), 1};
  MinBoundary out{std::numeric_limits<int>::max(), VertexSet{0, order}, 0};
  for (std::size_t i = begin; i < end; ++i) {
    out.enumerated += tasks[i].count;
    if (results[i].boundary < out.boundary) {
      out.boundary = results[i].boundary;
      out.witness.bits = results[i].mask;
    }
  }
  return out;
}

void check_cardinality(const AbelianGroup& g, int n) {
  if (n < 0 || n > g.order())
    throw std::out_of_range("cardinality " + std::to_string(n) + " outside [0, " +
                            std::to_string(g.order()) + "]");
}

}  // namespace

MinBoundary min_boundary(const CayleyDigraph& d, int n, unsigned threads) {
  check_cardinality(d.group(), n);
  const auto tasks = plan(d.group().order(), n);
  std::vector<ChunkResult> results(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) { results[i] = scan_chunk(d, tasks[i]); });
  return reduce(d, n, tasks, results, 0, tasks.size());
}

MinBoundary min_boundary(const AbelianGroup& g, const ConnectionSet& s, int n, unsigned threads) {
  return min_boundary(CayleyDigraph(g, s), n, threads);
}

double isoperimetric_bound(const AbelianGroup& g, const ConnectionSet& s, int n, std::optional<int> m_override) {
  check_cardinality(g, n);
  const int least = max_order(g, s);
  int m = least;
  if (m_override) {
    if (*m_override < least)
      throw std::invalid_argument("m = " + std::to_string(*m_override) +
                                  " is below the largest element order " + std::to_string(least) +
                                  " of S");
    m = *m_override;
  }
  const Rational x = make_rational(n, g.order());
  return static_cast<double>(g.order()) * eval_F(x).value / m;
}

ProfileReport profile(const AbelianGroup& g, const ConnectionSet& s, std::optional<int> m_override,
                      unsigned threads, int cap) {
  if (g.order() > cap)
    throw std::invalid_argument("group order " + std::to_string(g.order()) +
                                " exceeds the exhaustive cap " + std::to_string(cap));
  const auto t0 = std::chrono::steady_clock::now();

  ProfileReport report;
  report.group = g.to_string();
  report.connection_set = format_connection_set(g, s);
  report.m = m_override.value_or(max_order(g, s));
  (void)isoperimetric_bound(g, s, 0, m_override);  // validates m_override
  report.generating = is_generating(g, s);
  if (!report.generating)
    report.warnings.push_back("S does not generate " + report.group +
                              "; the bound's hypothesis is unmet and shortfalls are not violations");
  if (s.contains_identity())
    report.warnings.push_back("S contains the identity, which contributes no boundary edges");

  const CayleyDigraph d(g, s);
  const int order = g.order();

  // One flat task list over all cardinalities, reduced per cardinality.
  std::vector<ChunkTask> tasks;
  std::vector<std::size_t> first(static_cast<std::size_t>(order) + 2, 0);
  for (int n = 0; n <= order; ++n) {
    first[n] = tasks.size();
    auto more = plan(order, n);
    tasks.insert(tasks.end(), more.begin(), more.end());
  }
  first[order + 1] = tasks.size();
  std::vector<ChunkResult> results(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) { results[i] = scan_chunk(d, tasks[i]); });

  for (int n = 0; n <= order; ++n) {
    const MinBoundary mb = reduce(d, n, tasks, results, first[n], first[n + 1]);
    ProfileEntry e;
    e.n = n;
    e.min_boundary = mb.boundary;
    e.witness = mb.witness;
    e.bound = isoperimetric_bound(g, s, n, report.m);
    e.ratio = e.bound > 0 ? e.min_boundary / e.bound : std::numeric_limits<double>::infinity();
    if (e.min_boundary < e.bound - kBoundTol) report.below_bound.push_back(n);
    report.stats.enumerated += mb.enumerated;
    report.stats.pruned += binom()(order, n) - mb.enumerated;
    report.entries.push_back(e);
  }
  report.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

ProfileReport profile_generic(const GenericDigraph& d, int m, std::string name, int cap) {
  if (d.n < 1 || d.n > cap)
    throw std::invalid_argument("digraph with " + std::to_string(d.n) + " vertices exceeds the cap " +
                                std::to_string(cap));
  if (m < 1) throw std::invalid_argument("m must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  ProfileReport report;
  report.group = std::move(name);
  report.connection_set = "explicit arcs";
  report.m = m;
  report.generating = false;
  report.warnings.push_back("not an abelian Cayley graph; shortfalls below the bound are expected");

  const std::uint64_t limit = std::uint64_t{1} << d.n;
  std::vector<ProfileEntry> best(static_cast<std::size_t>(d.n) + 1);
  for (auto& e : best) e.min_boundary = std::numeric_limits<int>::max();
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    const VertexSet a{bits, d.n};
    const int k = a.count();
    const int b = boundary_generic(d, a);
    if (b < best[k].min_boundary) {
      best[k].min_boundary = b;
      best[k].witness = a;
    }
  }
  for (int k = 0; k <= d.n; ++k) {
    ProfileEntry e = best[k];
    e.n = k;
    e.bound = static_cast<double>(d.n) * eval_F(make_rational(k, d.n)).value / m;
    e.ratio = e.bound > 0 ? e.min_boundary / e.bound : std::numeric_limits<double>::infinity();
    if (e.min_boundary < e.bound - kBoundTol) report.below_bound.push_back(k);
    report.entries.push_back(e);
  }
  report.stats.enumerated = limit;
  report.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

GenericDigraph s3_cayley_digraph() {
  // Vertices are S3 words alternating the involutions s and t:
  //   0 = e, 1 = s, 2 = st, 3 = sts, 4 = ts, 5 = t
  // and right multiplication by s or t moves one step around the hexagon.
  GenericDigraph d{6, {}};
  for (int v = 0; v < 6; ++v) {
    d.arcs.emplace_back(v, (v + 1) % 6);
    d.arcs.emplace_back(v, (v + 5) % 6);
  }
  return d;
}

CounterexampleResult counterexample_s3(int path_length) {
  if (path_length < 1 || path_length > 5) throw std::out_of_range("path length must be in 1..5");
  const GenericDigraph d = s3_cayley_digraph();
  VertexSet a{0, d.n};
  for (int v = 0; v < path_length; ++v) a.bits |= std::uint64_t{1} << v;
  const int boundary = boundary_generic(d, a);
  const double bound = 0.5 * d.n * eval_F(make_rational(path_length, d.n)).value;
  return {boundary, bound, path_length};
}

}  // namespace isoconv
