#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isobound/errors.hpp"

namespace isobound {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Graph families with a known isoperimetric profile.
enum class Family { complete, path, cycle };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::complete: return "complete";
    case Family::path: return "path";
    case Family::cycle: return "cycle";
  }
  return "?";
}

inline std::optional<Family> family_from_name(std::string_view s) {
  if (s == "complete") return Family::complete;
  if (s == "path") return Family::path;
  if (s == "cycle") return Family::cycle;
  return std::nullopt;
}

/// Subset of [0, m), stored as a dense bit pattern.
///
/// Hex encoding: bit v of the pattern is vertex v; the pattern is written as
/// one big-endian hex integer padded to ceil(m/4) digits.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (std::size_t v = 0; v < universe; ++v) s.insert(static_cast<Vertex>(v));
    return s;
  }

  static VertexSet from_members(std::size_t universe, std::span<const Vertex> members) {
    VertexSet s(universe);
    for (Vertex v : members) {
      if (v >= universe) throw InvalidParameter("vertex " + std::to_string(v) + " outside universe");
      s.insert(v);
    }
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool contains(Vertex v) const noexcept { return v < universe_ && ((words_[v / 64] >> (v % 64)) & 1U); }

  void insert(Vertex v) {
    if (!contains(v)) {
      words_[v / 64] |= std::uint64_t{1} << (v % 64);
      ++size_;
    }
  }

  void erase(Vertex v) {
    if (contains(v)) {
      words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      --size_;
    }
  }

  VertexSet complement() const {
    VertexSet c(universe_);
    for (std::size_t v = 0; v < universe_; ++v)
      if (!contains(static_cast<Vertex>(v))) c.insert(static_cast<Vertex>(v));
    return c;
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(size_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t n = std::max<std::size_t>(1, (universe_ + 3) / 4);
    std::string out(n, '0');
    for (std::size_t d = 0; d < n; ++d) {
      unsigned nibble = 0;
      for (unsigned b = 0; b < 4; ++b)
        if (contains(static_cast<Vertex>(d * 4 + b))) nibble |= 1U << b;
      out[n - 1 - d] = digits[nibble];
    }
    return out;
  }

  static VertexSet from_hex(std::size_t universe, std::string_view hex) {
    VertexSet s(universe);
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char c = hex[hex.size() - 1 - i];
      unsigned nibble = 0;
      if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') nibble = static_cast<unsigned>(c - 'A' + 10);
      else throw InvalidParameter("bad hex digit in vertex set");
      for (unsigned b = 0; b < 4; ++b) {
        if (!((nibble >> b) & 1U)) continue;
        const std::size_t v = i * 4 + b;
        if (v >= universe) throw InvalidParameter("hex vertex set exceeds universe");
        s.insert(static_cast<Vertex>(v));
      }
    }
    return s;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Finite simple undirected graph with sorted adjacency lists. Immutable.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list; repeated edges collapse, self-loops and
  /// out-of-range endpoints are rejected.
  Graph(std::size_t vertex_count, std::span<const Edge> edges, std::string label = {})
      : adjacency_(vertex_count), label_(std::move(label)) {
    if (vertex_count == 0) throw InvalidParameter("graph needs at least one vertex");
    for (auto [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count)
        throw InvalidParameter("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
      if (u == v) throw InvalidParameter("self-loop at vertex " + std::to_string(u));
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    finish();
  }

  /// Builds from adjacency lists. Lists are sorted and deduplicated; the
  /// relation must already be symmetric.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adjacency, std::string label = {}) {
    if (adjacency.empty()) throw InvalidParameter("graph needs at least one vertex");
    Graph g;
    g.adjacency_ = std::move(adjacency);
    g.label_ = std::move(label);
    const std::size_t m = g.adjacency_.size();
    for (std::size_t v = 0; v < m; ++v)
      for (Vertex u : g.adjacency_[v]) {
        if (u >= m) throw InvalidParameter("neighbor index out of range");
        if (u == v) throw InvalidParameter("self-loop at vertex " + std::to_string(v));
      }
    g.finish();
    for (std::size_t v = 0; v < m; ++v)
      for (Vertex u : g.adjacency_[v])
        if (!std::binary_search(g.adjacency_[u].begin(), g.adjacency_[u].end(), static_cast<Vertex>(v)))
          throw InvalidParameter("adjacency is not symmetric");
    return g;
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  const std::string& label() const noexcept { return label_; }

  /// Set for graphs built by the family generators.
  std::optional<Family> family() const noexcept { return family_; }

  std::size_t min_degree() const noexcept {
    std::size_t d = std::numeric_limits<std::size_t>::max();
    for (const auto& a : adjacency_) d = std::min(d, a.size());
    return d;
  }
  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& a : adjacency_) d = std::max(d, a.size());
    return d;
  }

  std::optional<std::size_t> regular_degree() const noexcept {
    const std::size_t d = min_degree();
    if (d != max_degree()) return std::nullopt;
    return d;
  }

  bool is_connected() const {
    std::vector<char> seen(vertex_count(), 0);
    std::queue<Vertex> q;
    q.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (Vertex u : adjacency_[v])
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          q.push(u);
        }
    }
    return reached == vertex_count();
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t v = 0; v < adjacency_.size(); ++v)
      for (Vertex u : adjacency_[v])
        if (u > v) out.emplace_back(static_cast<Vertex>(v), u);
    return out;
  }

  Graph with_family(Family f) const {
    Graph g = *this;
    g.family_ = f;
    return g;
  }

 private:
  void finish() {
    edge_count_ = 0;
    for (auto& a : adjacency_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      edge_count_ += a.size();
    }
    edge_count_ /= 2;
  }

  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
  std::string label_;
  std::optional<Family> family_;
};

/// Complete graph, path or cycle on m vertices, numbered along the structure.
inline Graph generate(Family family, std::size_t m) {
  if (m == 0) throw InvalidParameter("graph size must be positive");
  std::vector<Edge> edges;
  switch (family) {
    case Family::complete:
      for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v) edges.emplace_back(u, v);
      break;
    case Family::path:
      for (std::size_t v = 0; v + 1 < m; ++v) edges.emplace_back(v, v + 1);
      break;
    case Family::cycle:
      if (m < 3) throw InvalidParameter("cycle needs at least 3 vertices, got " + std::to_string(m));
      for (std::size_t v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
      break;
  }
  return Graph(m, edges, std::string(family_name(family)) + ":" + std::to_string(m)).with_family(family);
}

/// Petersen graph: outer 5-cycle 0..4, spokes v -- v+5, inner pentagram.
inline Graph petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, edges, "petersen");
}

/// Parses the text graph format: first nonblank line is the vertex count,
/// then one "u v" edge per line. '#' lines are comments.
inline Graph parse_graph(std::string_view text, std::string label = {}) {
  std::size_t line_no = 0;
  std::optional<std::size_t> m;
  std::vector<Edge> edges;
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream in(line);
    std::string extra;
    if (!m) {
      long long count = 0;
      if (!(in >> count) || (in >> extra)) throw ParseError(line_no, "expected vertex count");
      if (count <= 0) throw ParseError(line_no, "vertex count must be positive");
      m = static_cast<std::size_t>(count);
      continue;
    }
    long long u = 0, v = 0;
    if (!(in >> u >> v) || (in >> extra)) throw ParseError(line_no, "expected \"u v\"");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= *m || static_cast<std::size_t>(v) >= *m)
      throw ParseError(line_no, "vertex index out of range");
    if (u == v) throw ParseError(line_no, "self-loop");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!m) throw ParseError(line_no, "missing vertex count");
  return Graph(*m, edges, std::move(label));
}

/// Ordered factor list of a Cartesian product.
struct ProductSpec {
  std::vector<Graph> factors;

  std::size_t dimension() const noexcept { return factors.size(); }

  /// Product vertex count, or nullopt when it overflows 64 bits.
  std::optional<std::uint64_t> vertex_count() const noexcept {
    std::uint64_t n = 1;
    for (const auto& g : factors) {
      const std::uint64_t m = g.vertex_count();
      if (n > std::numeric_limits<std::uint64_t>::max() / m) return std::nullopt;
      n *= m;
    }
    return n;
  }

  double log_vertex_count() const {
    double s = 0;
    for (const auto& g : factors) s += std::log(static_cast<double>(g.vertex_count()));
    return s;
  }

  /// Factor labels joined by " x "; runs of one labelled graph become "label^K".
  std::string description() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size();) {
      const std::string& label = factors[i].label();
      std::size_t j = i + 1;
      while (!label.empty() && j < factors.size() && factors[j].label() == label) ++j;
      if (i) out += " x ";
      out += label.empty() ? "graph:" + std::to_string(factors[i].vertex_count()) : label;
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }
};

inline constexpr std::uint64_t default_materialization_cap = std::uint64_t{1} << 20;

namespace detail {

inline std::vector<std::uint64_t> strides(const ProductSpec& spec) {
  std::vector<std::uint64_t> s(spec.factors.size(), 1);
  for (std::size_t i = spec.factors.size(); i-- > 1;) s[i - 1] = s[i] * spec.factors[i].vertex_count();
  return s;
}

inline std::uint64_t checked_product_size(const ProductSpec& spec, std::uint64_t cap) {
  if (spec.factors.empty()) throw InvalidParameter("product needs at least one factor");
  const auto n = spec.vertex_count();
  if (!n || *n > cap)
    throw CapExceeded("product too large to materialize", n.value_or(std::numeric_limits<std::uint64_t>::max()), cap);
  return *n;
}

}  // namespace detail

/// Explicit Cartesian product. Vertex index is the mixed-radix encoding of
/// the coordinate tuple with factor 1 most significant.
inline Graph cartesian_product(const ProductSpec& spec, std::uint64_t cap = default_materialization_cap) {
  const std::uint64_t total = detail::checked_product_size(spec, cap);
  if (spec.factors.size() == 1) return spec.factors.front();
  const auto stride = detail::strides(spec);
  std::vector<std::vector<Vertex>> adj(total);
  for (std::uint64_t v = 0; v < total; ++v) {
    std::size_t deg = 0;
    for (std::size_t i = 0; i < spec.factors.size(); ++i)
      deg += spec.factors[i].degree(static_cast<Vertex>((v / stride[i]) % spec.factors[i].vertex_count()));
    adj[v].reserve(deg);
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
      const auto c = static_cast<Vertex>((v / stride[i]) % spec.factors[i].vertex_count());
      for (Vertex w : spec.factors[i].neighbors(c))
        adj[v].push_back(static_cast<Vertex>(v - c * stride[i] + w * stride[i]));
    }
  }
  return Graph::from_adjacency(std::move(adj), spec.description());
}

/// Membership of A_1 x ... x A_n inside the materialized product.
inline VertexSet product_set(const ProductSpec& spec, std::span<const VertexSet> parts,
                             std::uint64_t cap = default_materialization_cap) {
  const std::uint64_t total = detail::checked_product_size(spec, cap);
  if (parts.size() != spec.factors.size()) throw InvalidParameter("one vertex set per factor required");
  const auto stride = detail::strides(spec);
  std::vector<std::uint64_t> frontier{0};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].universe() != spec.factors[i].vertex_count())
      throw InvalidParameter("vertex set universe does not match factor " + std::to_string(i));
    std::vector<std::uint64_t> next;
    for (std::uint64_t base : frontier)
      for (Vertex c : parts[i].members()) next.push_back(base + c * stride[i]);
    frontier = std::move(next);
  }
  VertexSet out(total);
  for (std::uint64_t v : frontier) out.insert(static_cast<Vertex>(v));
  return out;
}

/// Number of edges with exactly one endpoint in `a`.
inline std::uint64_t edge_boundary(const Graph& g, const VertexSet& a) {
  if (a.universe() != g.vertex_count()) throw InvalidParameter("vertex set does not belong to this graph");
  std::uint64_t crossing = 0;
  for (Vertex v : a.members())
    for (Vertex u : g.neighbors(v))
      if (!a.contains(u)) ++crossing;
  return crossing;
}

}  // namespace isobound
