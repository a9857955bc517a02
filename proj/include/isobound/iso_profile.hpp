#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "isobound/errors.hpp"
#include "isobound/graph.hpp"

namespace isobound {

/// Nonnegative rational kept in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den == 0) throw InvalidParameter("zero denominator");
    const std::uint64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num_) * b.den_ <=> static_cast<unsigned __int128>(b.num_) * a.den_;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

struct ProfileEntry {
  std::size_t k = 0;
  std::uint64_t min_boundary = 0;
  VertexSet witness;

  Rational i_k() const { return Rational(min_boundary, k); }
};

/// Exact i_k(G) for every k in [1, m], each with one minimizing set.
class IsoProfile {
 public:
  IsoProfile() = default;
  IsoProfile(std::size_t graph_size, std::vector<ProfileEntry> entries)
      : graph_size_(graph_size), entries_(std::move(entries)) {
    if (entries_.size() != graph_size_) throw InvalidParameter("profile needs one entry per size");
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].k != i + 1 || entries_[i].witness.size() != i + 1)
        throw InvalidParameter("profile entry " + std::to_string(i + 1) + " is malformed");
  }

  std::size_t graph_size() const noexcept { return graph_size_; }
  const std::vector<ProfileEntry>& entries() const noexcept { return entries_; }

  const ProfileEntry& at(std::size_t k) const {
    if (k < 1 || k > graph_size_) throw DomainError("size " + std::to_string(k) + " outside [1, m]");
    return entries_[k - 1];
  }
  Rational i_k(std::size_t k) const { return at(k).i_k(); }
  double value(std::size_t k) const { return at(k).i_k().to_double(); }

 private:
  std::size_t graph_size_ = 0;
  std::vector<ProfileEntry> entries_;
};

struct SearchOptions {
  bool prune = true;
  std::size_t exhaustive_cap = 20;  // vertex limit without pruning
  std::size_t pruned_cap = 30;      // vertex limit with branch-and-bound
  std::uint64_t node_budget = 0;    // 0 = unlimited
  unsigned threads = 1;
};

struct MinBoundary {
  std::uint64_t value = 0;
  VertexSet witness;
};

namespace detail {

// Depth-first search over k-subsets, deciding vertices 0, 1, ... in order and
// trying "include" before "exclude". Leaves are therefore reached in
// lexicographic order of the sorted member list, and only strict improvements
// replace the incumbent, so the reported witness is the lexicographically
// smallest minimizer.
//
// Bound at a node with chosen set S, excluded set X and undecided U, needing
// r more members: every final set has boundary
//   e(S,X) + e(S,U) + sum_{u chosen} (|N(u) & X| - |N(u) & S|) + e_U(chosen, rest)
// and the last term is nonnegative, so summing the r smallest keys
// |N(u) & X| - |N(u) & S| over U gives a valid lower bound.
class BoundarySearch {
 public:
  BoundarySearch(const Graph& g, std::size_t k, const SearchOptions& opts)
      : g_(g),
        k_(k),
        opts_(opts),
        m_(g.vertex_count()),
        offset_(static_cast<int>(g.max_degree())),
        state_(m_, undecided),
        to_in_(m_, 0),
        to_out_(m_, 0),
        histogram_(2 * g.max_degree() + 1, 0) {
    histogram_[static_cast<std::size_t>(offset_)] = m_;
  }

  MinBoundary run() {
    chosen_.reserve(k_);
    visit(0);
    MinBoundary out;
    out.value = best_;
    out.witness = VertexSet::from_members(m_, best_members_);
    return out;
  }

 private:
  static constexpr char undecided = 0, in = 1, out = 2;

  int key(Vertex u) const { return to_out_[u] - to_in_[u] + offset_; }

  std::uint64_t lower_bound(std::size_t need) const {
    std::int64_t acc = static_cast<std::int64_t>(fixed_ + in_to_undecided_);
    for (std::size_t b = 0; b < histogram_.size() && need > 0; ++b) {
      const std::size_t take = std::min(need, histogram_[b]);
      acc += static_cast<std::int64_t>(take) * (static_cast<int>(b) - offset_);
      need -= take;
    }
    return static_cast<std::uint64_t>(std::max<std::int64_t>(acc, 0));
  }

  void decide(Vertex v, char side) {
    --histogram_[static_cast<std::size_t>(key(v))];
    state_[v] = side;
    in_to_undecided_ -= static_cast<std::uint64_t>(to_in_[v]);
    fixed_ += static_cast<std::uint64_t>(side == in ? to_out_[v] : to_in_[v]);
    for (Vertex u : g_.neighbors(v)) {
      if (state_[u] != undecided) continue;
      --histogram_[static_cast<std::size_t>(key(u))];
      if (side == in) {
        ++to_in_[u];
        ++in_to_undecided_;
      } else {
        ++to_out_[u];
      }
      ++histogram_[static_cast<std::size_t>(key(u))];
    }
    if (side == in) chosen_.push_back(v);
  }

  void undo(Vertex v) {
    const char side = state_[v];
    if (side == in) chosen_.pop_back();
    for (Vertex u : g_.neighbors(v)) {
      if (state_[u] != undecided) continue;
      --histogram_[static_cast<std::size_t>(key(u))];
      if (side == in) {
        --to_in_[u];
        --in_to_undecided_;
      } else {
        --to_out_[u];
      }
      ++histogram_[static_cast<std::size_t>(key(u))];
    }
    fixed_ -= static_cast<std::uint64_t>(side == in ? to_out_[v] : to_in_[v]);
    in_to_undecided_ += static_cast<std::uint64_t>(to_in_[v]);
    state_[v] = undecided;
    ++histogram_[static_cast<std::size_t>(key(v))];
  }

  void record(std::uint64_t value, std::size_t from) {
    if (value >= best_) return;
    best_ = value;
    best_members_ = chosen_;
    for (std::size_t u = from; best_members_.size() < k_; ++u) best_members_.push_back(static_cast<Vertex>(u));
  }

  void visit(std::size_t v) {
    if (opts_.node_budget && ++nodes_ > opts_.node_budget)
      throw SearchFailure("boundary search exceeded its node budget of " + std::to_string(opts_.node_budget));
    const std::size_t need = k_ - chosen_.size();
    const std::size_t left = m_ - v;
    if (need == 0) {
      record(fixed_ + in_to_undecided_, v);
      return;
    }
    if (need == left) {
      // All remaining vertices join: the bound is exact here.
      record(lower_bound(need), v);
      return;
    }
    if (opts_.prune && best_ != unset && lower_bound(need) >= best_) return;
    const auto u = static_cast<Vertex>(v);
    decide(u, in);
    visit(v + 1);
    undo(u);
    decide(u, out);
    visit(v + 1);
    undo(u);
  }

  static constexpr std::uint64_t unset = std::numeric_limits<std::uint64_t>::max();

  const Graph& g_;
  std::size_t k_;
  SearchOptions opts_;
  std::size_t m_;
  int offset_;
  std::vector<char> state_;
  std::vector<int> to_in_, to_out_;
  std::vector<std::size_t> histogram_;
  std::uint64_t fixed_ = 0;
  std::uint64_t in_to_undecided_ = 0;
  std::vector<Vertex> chosen_;
  std::uint64_t best_ = unset;
  std::vector<Vertex> best_members_;
  std::uint64_t nodes_ = 0;
};

inline void check_search_cap(const Graph& g, const SearchOptions& opts) {
  const std::size_t cap = opts.prune ? opts.pruned_cap : opts.exhaustive_cap;
  if (g.vertex_count() > cap) throw CapExceeded("subset search refused", g.vertex_count(), cap);
}

}  // namespace detail

/// Exact minimum edge boundary over all k-subsets, with the lexicographically
/// smallest minimizing set (ordered by sorted member list).
inline MinBoundary min_boundary(const Graph& g, std::size_t k, const SearchOptions& opts = {}) {
  if (k < 1 || k > g.vertex_count())
    throw DomainError("size " + std::to_string(k) + " outside [1, " + std::to_string(g.vertex_count()) + "]");
  detail::check_search_cap(g, opts);
  return detail::BoundarySearch(g, k, opts).run();
}

inline IsoProfile profile_bruteforce(const Graph& g, const SearchOptions& opts = {}) {
  detail::check_search_cap(g, opts);
  const std::size_t m = g.vertex_count();
  std::vector<ProfileEntry> entries(m);
  auto solve = [&](std::size_t k) {
    auto r = detail::BoundarySearch(g, k, opts).run();
    entries[k - 1] = ProfileEntry{k, r.value, std::move(r.witness)};
  };
  const unsigned workers = std::min<unsigned>(std::max(1U, opts.threads), static_cast<unsigned>(m));
  if (workers <= 1) {
    for (std::size_t k = 1; k <= m; ++k) solve(k);
  } else {
    std::atomic<std::size_t> next{1};
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = next++; k <= m; k = next++) solve(k);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
    }
    for (auto& f : failures)
      if (f) std::rethrow_exception(f);
  }
  return IsoProfile(m, std::move(entries));
}

/// Known profiles: i_k(K_m) = m - k, i_k(P_m) = 1/k and i_k(C_m) = 2/k for k < m.
/// Witnesses are the first k vertices (a prefix of the path or an arc of the cycle).
inline IsoProfile profile_closed_form(Family family, std::size_t m) {
  if (m == 0) throw InvalidParameter("graph size must be positive");
  if (family == Family::cycle && m < 3)
    throw InvalidParameter("cycle needs at least 3 vertices, got " + std::to_string(m));
  std::vector<ProfileEntry> entries;
  entries.reserve(m);
  for (std::size_t k = 1; k <= m; ++k) {
    std::uint64_t b = 0;
    if (k < m) {
      switch (family) {
        case Family::complete: b = static_cast<std::uint64_t>(k) * (m - k); break;
        case Family::path: b = 1; break;
        case Family::cycle: b = 2; break;
      }
    }
    VertexSet w(m);
    for (std::size_t v = 0; v < k; ++v) w.insert(static_cast<Vertex>(v));
    entries.push_back(ProfileEntry{k, b, std::move(w)});
  }
  return IsoProfile(m, std::move(entries));
}

/// Closed form for generator-built family graphs, exhaustive search otherwise.
inline IsoProfile profile(const Graph& g, const SearchOptions& opts = {}) {
  if (auto f = g.family()) return profile_closed_form(*f, g.vertex_count());
  return profile_bruteforce(g, opts);
}

}  // namespace isobound
