#include "isoconv/cayley.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace isoconv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("expected an integer in '" + std::string(context) + "'");
  return v;
}

int mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
  long long order = 1;
  for (int f : factors_) {
    if (f < 2) throw std::invalid_argument("cyclic factor orders must be at least 2");
    order *= f;
    if (order > kMaxGroupOrder)
      throw std::invalid_argument("group order exceeds " + std::to_string(kMaxGroupOrder));
  }
  order_ = static_cast<int>(order);
  strides_.assign(factors_.size(), 1);
  for (int i = rank() - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * factors_[i + 1];
}

int AbelianGroup::encode(const std::vector<int>& coords) const {
  if (coords.size() != factors_.size())
    throw std::invalid_argument("element has " + std::to_string(coords.size()) +
                                " coordinates, group " + to_string() + " has rank " +
                                std::to_string(rank()));
  int g = 0;
  for (int i = 0; i < rank(); ++i) g += mod(coords[i], factors_[i]) * strides_[i];
  return g;
}

std::vector<int> AbelianGroup::decode(int g) const {
  if (g < 0 || g >= order_) throw std::out_of_range("element index out of range");
  std::vector<int> coords(factors_.size());
  for (int i = 0; i < rank(); ++i) coords[i] = (g / strides_[i]) % factors_[i];
  return coords;
}

int AbelianGroup::add(int g, int h) const {
  if (g < 0 || g >= order_ || h < 0 || h >= order_) throw std::out_of_range("element index out of range");
  int out = 0;
  for (int i = 0; i < rank(); ++i) {
    const int x = (g / strides_[i]) % factors_[i];
    const int y = (h / strides_[i]) % factors_[i];
    out += ((x + y) % factors_[i]) * strides_[i];
  }
  return out;
}

int AbelianGroup::negate(int g) const {
  auto c = decode(g);
  for (int i = 0; i < rank(); ++i) c[i] = mod(-c[i], factors_[i]);
  return encode(c);
}

std::string AbelianGroup::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += 'x';
    s += 'Z' + std::to_string(factors_[i]);
  }
  return s;
}

std::string AbelianGroup::element_to_string(int g) const {
  const auto c = decode(g);
  if (rank() == 1) return std::to_string(c[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

AbelianGroup parse_group(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  std::vector<int> factors;
  bool dangling = false;
  while (!text.empty() || dangling) {
    const auto cut = text.find_first_of("xX*");
    std::string_view tok = trim(text.substr(0, cut));
    dangling = cut != std::string_view::npos;
    text = dangling ? text.substr(cut + 1) : std::string_view{};
    if (tok.size() < 2 || (tok[0] != 'Z' && tok[0] != 'z'))
      throw std::invalid_argument("bad group factor in '" + std::string(whole) + "' (expected e.g. Z4xZ2)");
    tok.remove_prefix(1);
    int reps = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      reps = parse_int(tok.substr(caret + 1), whole);
      tok = tok.substr(0, caret);
      if (reps < 1) throw std::invalid_argument("bad exponent in '" + std::string(whole) + "'");
    }
    const int n = parse_int(tok, whole);
    for (int r = 0; r < reps; ++r) factors.push_back(n);
  }
  if (factors.empty()) throw std::invalid_argument("empty group description");
  return AbelianGroup(std::move(factors));
}

ConnectionSet::ConnectionSet(const AbelianGroup& g, std::vector<int> elements)
    : elements_(std::move(elements)) {
  for (int e : elements_)
    if (e < 0 || e >= g.order()) throw std::out_of_range("connection set element out of range");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

ConnectionSet standard_basis(const AbelianGroup& g) {
  std::vector<int> elems;
  for (int i = 0; i < g.rank(); ++i) {
    std::vector<int> c(static_cast<std::size_t>(g.rank()), 0);
    c[i] = 1;
    elems.push_back(g.encode(c));
  }
  return ConnectionSet(g, std::move(elems));
}

ConnectionSet parse_connection_set(const AbelianGroup& g, std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text == "basis") return standard_basis(g);
  std::vector<int> elems;
  while (!text.empty()) {
    if (text.front() == '(') {
      const auto close = text.find(')');
      if (close == std::string_view::npos)
        throw std::invalid_argument("unbalanced parenthesis in '" + std::string(whole) + "'");
      std::string_view body = text.substr(1, close - 1);
      std::vector<int> coords;
      while (true) {
        const auto comma = body.find(',');
        coords.push_back(parse_int(body.substr(0, comma), whole));
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
      }
      elems.push_back(g.encode(coords));
      text = trim(text.substr(close + 1));
    } else {
      if (g.rank() != 1)
        throw std::invalid_argument("elements of " + g.to_string() + " must be written as tuples, e.g. (1,0)");
      const auto comma = text.find(',');
      elems.push_back(g.encode({parse_int(text.substr(0, comma), whole)}));
      text = comma == std::string_view::npos ? std::string_view{} : trim(text.substr(comma));
    }
    if (!text.empty()) {
      if (text.front() != ',') throw std::invalid_argument("expected ',' in '" + std::string(whole) + "'");
      text = trim(text.substr(1));
      if (text.empty()) throw std::invalid_argument("trailing ',' in '" + std::string(whole) + "'");
    }
  }
  if (elems.empty()) throw std::invalid_argument("empty connection set");
  return ConnectionSet(g, std::move(elems));
}

std::string format_connection_set(const AbelianGroup& g, const ConnectionSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += g.element_to_string(s.elements()[i]);
  }
  return out;
}

VertexSet VertexSet::of(int universe, std::initializer_list<int> members) {
  if (universe < 0 || universe > kMaxGroupOrder) throw std::invalid_argument("vertex universe too large");
  VertexSet a{0, universe};
  for (int v : members) {
    if (v < 0 || v >= universe) throw std::out_of_range("vertex out of range");
    a.bits |= std::uint64_t{1} << v;
  }
  return a;
}

VertexSet VertexSet::full(int universe) {
  if (universe < 0 || universe > kMaxGroupOrder) throw std::invalid_argument("vertex universe too large");
  return {universe == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe) - 1, universe};
}

std::string to_hex(const VertexSet& a) {
  std::ostringstream os;
  os << "0x" << std::hex << a.bits;
  return os.str();
}

int element_order(const AbelianGroup& g, int element) {
  if (element < 0 || element >= g.order()) throw std::out_of_range("element index out of range");
  const auto c = g.decode(element);
  int order = 1;
  for (int i = 0; i < g.rank(); ++i) {
    const int n = g.factors()[i];
    order = std::lcm(order, n / std::gcd(c[i], n));
  }
  return order;
}

bool is_generating(const AbelianGroup& g, const ConnectionSet& s) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::vector<int> frontier{AbelianGroup::identity()};
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int x = frontier.back();
    frontier.pop_back();
    for (int e : s.elements()) {
      const int y = g.add(x, e);
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        frontier.push_back(y);
      }
    }
  }
  return reached == g.order();
}

int max_order(const AbelianGroup& g, const ConnectionSet& s) {
  if (s.empty()) throw std::invalid_argument("max_order of an empty connection set");
  int m = 1;
  for (int e : s.elements()) m = std::max(m, element_order(g, e));
  return m;
}

CayleyDigraph::CayleyDigraph(AbelianGroup g, ConnectionSet s)
    : group_(std::move(g)), s_(std::move(s)), chunks_((group_.order() + 7) / 8) {
  tables_.resize(s_.size());
  for (std::size_t k = 0; k < s_.size(); ++k) {
    std::vector<int> image(static_cast<std::size_t>(group_.order()));
    for (int a = 0; a < group_.order(); ++a) image[a] = group_.add(a, s_.elements()[k]);
    auto& per_chunk = tables_[k];
    per_chunk.resize(static_cast<std::size_t>(chunks_));
    for (int c = 0; c < chunks_; ++c) {
      for (int byte = 0; byte < 256; ++byte) {
        std::uint64_t out = 0;
        for (int bit = 0; bit < 8; ++bit) {
          const int v = 8 * c + bit;
          if (v < group_.order() && ((byte >> bit) & 1)) out |= std::uint64_t{1} << image[v];
        }
        per_chunk[c][byte] = out;
      }
    }
  }
}

std::uint64_t CayleyDigraph::translate(std::uint64_t bits, std::size_t generator) const {
  const auto& t = tables_[generator];
  std::uint64_t out = 0;
  for (int c = 0; c < chunks_; ++c) out |= t[c][(bits >> (8 * c)) & 0xFF];
  return out;
}

int CayleyDigraph::boundary(const VertexSet& a) const {
  if (a.universe != group_.order())
    throw std::invalid_argument("vertex set universe does not match group order");
  return boundary(a.bits);
}

int edge_boundary(const AbelianGroup& g, const ConnectionSet& s, const VertexSet& a) {
  return CayleyDigraph(g, s).boundary(a);
}

int boundary_generic(const GenericDigraph& d, const VertexSet& a) {
  if (a.universe != d.n) throw std::invalid_argument("vertex set universe does not match digraph size");
  int count = 0;
  for (auto [u, v] : d.arcs) {
    if (u < 0 || v < 0 || u >= d.n || v >= d.n) throw std::out_of_range("arc endpoint out of range");
    if (a.contains(u) && !a.contains(v)) ++count;
  }
  return count;
}

}  // namespace isoconv
