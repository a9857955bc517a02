#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isobound/errors.hpp"
#include "isobound/graph.hpp"
#include "isobound/iso_profile.hpp"
#include "isobound/minorant.hpp"
#include "isobound/product_bound.hpp"

namespace isobound {

// ---------------------------------------------------------------------------
// Brute-force check of the product bound on explicit products.

struct SizeCheck {
  std::size_t k = 0;
  std::uint64_t true_min_boundary = 0;
  double theorem_bound_total = 0;
  double gap = 0;  // truth - bound
  bool tight = false;
  bool valid = false;  // gap >= -tol * max(truth, 1)
  VertexSet witness;
};

struct VerificationReport {
  std::string product;
  std::uint64_t vertex_count = 0;
  std::vector<SizeCheck> checks;

  bool all_valid() const {
    for (const auto& c : checks)
      if (!c.valid) return false;
    return true;
  }
};

struct VerifyOptions {
  std::optional<std::vector<std::size_t>> sizes;  // unset: every size (exhaustive mode)
  std::size_t exhaustive_vertex_cap = 20;
  std::uint64_t materialization_cap = default_materialization_cap;
  std::uint64_t sampled_node_budget = 200'000'000;
  SearchOptions factor_search;
  unsigned threads = 1;
  double tolerance = 1e-9;
};

inline VerificationReport verify_theorem(const ProductSpec& spec, const VerifyOptions& opts = {}) {
  if (spec.factors.empty()) throw InvalidParameter("product needs at least one factor");
  const auto count = spec.vertex_count();
  const std::uint64_t required = count.value_or(std::numeric_limits<std::uint64_t>::max());
  if (!opts.sizes && required > opts.exhaustive_vertex_cap)
    throw CapExceeded("exhaustive verification refused", required, opts.exhaustive_vertex_cap);
  const Graph product = cartesian_product(spec, opts.materialization_cap);

  std::vector<ConvexMinorant> minorants;
  for (const auto& f : spec.factors) minorants.push_back(build_minorant(profile(f, opts.factor_search)));

  VerificationReport rep;
  rep.product = spec.description();
  rep.vertex_count = product.vertex_count();

  std::vector<std::size_t> sizes;
  SearchOptions search;
  search.threads = opts.threads;
  if (opts.sizes) {
    sizes = *opts.sizes;
    search.pruned_cap = static_cast<std::size_t>(opts.materialization_cap);
    search.node_budget = opts.sampled_node_budget;
  } else {
    for (std::size_t k = 1; k <= product.vertex_count(); ++k) sizes.push_back(k);
    search.pruned_cap = opts.exhaustive_vertex_cap;
  }

  std::optional<IsoProfile> full;
  if (!opts.sizes) full = profile_bruteforce(product, search);
  for (std::size_t k : sizes) {
    SizeCheck c;
    c.k = k;
    MinBoundary mb = full ? MinBoundary{full->at(k).min_boundary, full->at(k).witness} : min_boundary(product, k, search);
    c.true_min_boundary = mb.value;
    c.witness = std::move(mb.witness);
    c.theorem_bound_total =
        static_cast<double>(k) * theorem_bound(minorants, std::log(static_cast<double>(k))).bound_per_vertex;
    const double truth = static_cast<double>(c.true_min_boundary);
    c.gap = truth - c.theorem_bound_total;
    const double slack = opts.tolerance * std::max(1.0, truth);
    c.valid = c.gap >= -slack;
    c.tight = std::abs(c.gap) <= slack;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// i_a(G^n) is not affine in log a whenever psi_G has two or more pieces.

struct NonlinearityWitness {
  std::string graph;
  std::size_t n = 0;
  std::size_t base_sizes[3] = {0, 0, 0};  // breakpoints k_a < k_b < k_c; a_j = k^n
  double log_sizes[3] = {0, 0, 0};
  double lower[3] = {0, 0, 0};  // product bound per vertex
  double upper[3] = {0, 0, 0};  // construction W_k^n per vertex: n i_k
  std::optional<std::uint64_t> explicit_boundary[3];  // counted on G^n when materializable
  double exact[3] = {0, 0, 0};
  double interpolation = 0;  // chord through (log a_0, exact_0), (log a_2, exact_2) at log a_1
  double residual = 0;       // interpolation - exact_1
};

inline NonlinearityWitness q71_witness(const Graph& g, const IsoProfile& p, const ConvexMinorant& psi, std::size_t n,
                                       std::uint64_t materialization_cap = default_materialization_cap) {
  if (n == 0) throw InvalidParameter("power must be positive");
  if (p.graph_size() != g.vertex_count() || psi.graph_size() != g.vertex_count())
    throw InvalidParameter("profile or minorant does not match graph");
  if (psi.segment_count() < 2) throw PreconditionError("psi is linear: no witness exists for this G");

  NonlinearityWitness w;
  w.graph = g.label();
  w.n = n;
  const auto& bp = psi.breakpoints();
  ProductSpec power;
  power.factors.assign(n, g);
  const auto power_size = power.vertex_count();
  const bool materialize = power_size && *power_size <= materialization_cap;
  std::optional<Graph> big;
  if (materialize) big = cartesian_product(power, materialization_cap);

  for (int j = 0; j < 3; ++j) {
    const std::size_t k = bp[static_cast<std::size_t>(j)].k;
    w.base_sizes[j] = k;
    w.log_sizes[j] = static_cast<double>(n) * std::log(static_cast<double>(k));
    w.lower[j] = homogeneous_bound(psi, n, w.log_sizes[j]);
    w.upper[j] = static_cast<double>(n) * p.value(k);
    if (!detail::close_relative(w.lower[j], w.upper[j], sharpness_tolerance))
      throw SearchFailure("lower and upper values disagree at breakpoint " + std::to_string(k));
    if (big) {
      std::vector<VertexSet> parts(n, p.at(k).witness);
      const auto a = product_set(power, parts, materialization_cap);
      w.explicit_boundary[j] = edge_boundary(*big, a);
    }
    w.exact[j] = w.upper[j];
  }
  const double t = (w.log_sizes[1] - w.log_sizes[0]) / (w.log_sizes[2] - w.log_sizes[0]);
  w.interpolation = (1 - t) * w.exact[0] + t * w.exact[2];
  w.residual = w.interpolation - w.exact[1];
  return w;
}

// ---------------------------------------------------------------------------
// Slabs B_t = {u}^t x V^{n-t} and the Dirichlet certificate showing they are
// beaten in high powers when y_G < d.

/// Per-vertex boundary of B_t in G^n: t d.
inline double b_t_boundary(std::size_t m, std::size_t d, std::size_t n, std::size_t t) {
  if (m < 2) throw InvalidParameter("graph needs at least two vertices");
  if (t < 1 || t > n) throw DomainError("slab codimension t must lie in [1, n]");
  return static_cast<double>(t) * static_cast<double>(d);
}

/// Thrown by q72_certificate when k* = 1: slabs are optimal and no
/// certificate can exist.
class SlabOptimal : public PreconditionError {
 public:
  explicit SlabOptimal(double y_g)
      : PreconditionError("y_G = d: B_t is optimal, no certificate"), y_g_(y_g) {}
  double y_g() const noexcept { return y_g_; }

 private:
  double y_g_;
};

struct DirichletCertificate {
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t k_star = 0;
  double y_g = 0;
  Rational i_k_star;
  VertexSet witness;  // S, a k*-set attaining i_{k*}
  double epsilon = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  double approximation_error = 0;  // |s log m - t log(m/k*)|
  double size_ratio = 0;           // |A| / m^t with A = S^t x V^s
  double a_boundary = 0;           // e(A, A^c) / m^t
  double a_boundary_cap = 0;       // (1 + eps)(s y_G + eps)
  double swap_cost = 0;            // eps (s + t) d
  double swap_cap = 0;             // eps s d (1 + (log m + eps/2) / log(m/k*))
  double lhs = 0;                  // a_boundary_cap + swap_cap
  double rhs = 0;                  // s d = e(B, B^c) / m^t
};

struct Q72Options {
  double eps_start = 0.1;
  std::uint64_t t_max = 1'000'000;
  double eps_min = 1e-12;
};

/// The inequalities a certificate records, each re-evaluated from its inputs.
struct DirichletChecks {
  bool approximation = false;  // |s log m - t log(m/k*)| <= eps/2
  bool size_bracket = false;   // (1 - eps) <= |A|/m^t <= (1 + eps)
  bool a_boundary = false;     // e(A)/m^t <= (1 + eps)(s y_G + eps)
  bool swap = false;           // eps (s+t) d <= eps s d (1 + ...)
  bool strict = false;         // lhs < rhs

  bool all() const { return approximation && size_bracket && a_boundary && swap && strict; }
};

namespace detail {

inline DirichletCertificate dirichlet_candidate(const RegularSummary& sum, double eps, std::uint64_t s,
                                                std::uint64_t t) {
  const double log_m = std::log(static_cast<double>(sum.m));
  const double log_ratio = log_m - std::log(static_cast<double>(sum.k_star));
  const double sd = static_cast<double>(s), td = static_cast<double>(t), dd = static_cast<double>(sum.degree);
  DirichletCertificate c;
  c.m = sum.m;
  c.d = sum.degree;
  c.k_star = sum.k_star;
  c.y_g = sum.y_g;
  c.i_k_star = sum.i_k_star;
  c.epsilon = eps;
  c.s = s;
  c.t = t;
  c.approximation_error = std::abs(sd * log_m - td * log_ratio);
  c.size_ratio = std::exp(sd * log_m - td * log_ratio);
  c.a_boundary = c.size_ratio * td * sum.i_k_star.to_double();
  c.a_boundary_cap = (1 + eps) * (sd * sum.y_g + eps);
  c.swap_cost = eps * (sd + td) * dd;
  c.swap_cap = eps * sd * dd * (1 + (log_m + eps / 2) / log_ratio);
  c.lhs = c.a_boundary_cap + c.swap_cap;
  c.rhs = sd * dd;
  return c;
}

}  // namespace detail

inline DirichletChecks check_dirichlet(const DirichletCertificate& c) {
  DirichletChecks k;
  const double eps = c.epsilon;
  k.approximation = c.approximation_error <= eps / 2;
  k.size_bracket = c.size_ratio >= 1 - eps && c.size_ratio <= 1 + eps;
  k.a_boundary = c.a_boundary <= c.a_boundary_cap;
  k.swap = c.swap_cost <= c.swap_cap * (1 + 1e-15);
  k.strict = c.lhs < c.rhs;
  return k;
}

/// Halves eps from eps_start; for each eps scans t = 1..t_max with
/// s = round(t log(m/k*) / log m) and keeps the first (s, t) within eps/2,
/// then accepts if every recorded inequality holds.
inline DirichletCertificate q72_certificate(const Graph& g, const RegularSummary& sum, const IsoProfile& p,
                                            const Q72Options& opts = {}) {
  if (!g.is_connected()) throw PreconditionError("graph is not connected");
  const auto d = g.regular_degree();
  if (!d || *d != sum.degree || sum.m != g.vertex_count()) throw PreconditionError("summary does not match graph");
  if (sum.k_star == 1) throw SlabOptimal(sum.y_g);
  if (!(opts.eps_start > 0)) throw InvalidParameter("eps_start must be positive");

  const double log_m = std::log(static_cast<double>(sum.m));
  const double alpha = (log_m - std::log(static_cast<double>(sum.k_star))) / log_m;
  for (double eps = opts.eps_start; eps >= opts.eps_min; eps /= 2) {
    for (std::uint64_t t = 1; t <= opts.t_max; ++t) {
      const double s_real = std::round(static_cast<double>(t) * alpha);
      if (s_real < 1) continue;
      auto c = detail::dirichlet_candidate(sum, eps, static_cast<std::uint64_t>(s_real), t);
      if (c.approximation_error > eps / 2) continue;
      if (check_dirichlet(c).all()) {
        c.witness = p.at(sum.k_star).witness;
        return c;
      }
      break;
    }
  }
  throw SearchFailure("no Dirichlet pair found down to eps = " + std::to_string(opts.eps_min) +
                      " with t <= " + std::to_string(opts.t_max));
}

}  // namespace isobound
