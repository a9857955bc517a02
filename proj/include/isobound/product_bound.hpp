#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isobound/errors.hpp"
#include "isobound/iso_profile.hpp"
#include "isobound/minorant.hpp"

namespace isobound {

struct AllocationResult {
  double target_log_size = 0;
  std::vector<double> allocation;   // h_i
  double bound_per_vertex = 0;      // sum_i psi_i(h_i)
  std::optional<double> bound_total;  // |A| * bound_per_vertex, when |A| is known exactly
};

namespace detail {

inline double total_log_volume(std::span<const ConvexMinorant> minorants) {
  double s = 0;
  for (const auto& psi : minorants) s += psi.domain_end();
  return s;
}

}  // namespace detail

/// min sum psi_i(h_i) over 0 <= h_i <= log m_i with sum h_i = log_size.
///
/// Every segment of every minorant is a (slope, width) pair; spending the
/// budget on segments in ascending slope order is optimal for a separable
/// convex objective, and because each minorant's own slopes are
/// non-decreasing the global order never skips ahead within one factor.
/// Equal slopes are ordered by (factor, segment) for a canonical allocation.
inline AllocationResult theorem_bound(std::span<const ConvexMinorant> minorants, double log_size) {
  if (minorants.empty()) throw InvalidParameter("at least one factor minorant required");
  const double volume = detail::total_log_volume(minorants);
  if (!(log_size >= -domain_tolerance && log_size <= volume + domain_tolerance))
    throw DomainError("log size " + std::to_string(log_size) + " outside [0, " + std::to_string(volume) + "]");
  log_size = std::clamp(log_size, 0.0, volume);

  struct Segment {
    double slope;
    double width;
    std::size_t factor;
    std::size_t index;
  };
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < minorants.size(); ++i)
    for (std::size_t j = 0; j < minorants[i].segment_count(); ++j) {
      const auto& bp = minorants[i].breakpoints();
      segments.push_back({minorants[i].slope(j), bp[j + 1].x - bp[j].x, i, j});
    }
  std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
    if (a.slope != b.slope) return a.slope < b.slope;
    if (a.factor != b.factor) return a.factor < b.factor;
    return a.index < b.index;
  });

  AllocationResult r;
  r.target_log_size = log_size;
  r.allocation.assign(minorants.size(), 0.0);
  double budget = log_size;
  for (const auto& s : segments) {
    if (budget <= 0) break;
    const double take = std::min(budget, s.width);
    r.allocation[s.factor] += take;
    budget -= take;
  }
  // Rounding can leave a sliver of budget; park it where there is room.
  for (std::size_t i = 0; budget > 0 && i < minorants.size(); ++i) {
    const double room = minorants[i].domain_end() - r.allocation[i];
    const double take = std::clamp(room, 0.0, budget);
    r.allocation[i] += take;
    budget -= take;
  }
  // |A| = |V| up to rounding of the logs: every factor is taken whole.
  if (volume - log_size <= domain_tolerance * std::max(1.0, volume))
    for (std::size_t i = 0; i < minorants.size(); ++i) r.allocation[i] = minorants[i].domain_end();
  double value = 0;
  for (std::size_t i = 0; i < minorants.size(); ++i) {
    r.allocation[i] = std::clamp(r.allocation[i], 0.0, minorants[i].domain_end());
    value += evaluate(minorants[i], r.allocation[i]);
  }
  r.bound_per_vertex = std::max(0.0, value);
  return r;
}

/// Same as theorem_bound with |A| given exactly, so the total is reported.
inline AllocationResult theorem_bound_for_size(std::span<const ConvexMinorant> minorants, std::uint64_t size) {
  if (size == 0) throw DomainError("set size must be positive");
  auto r = theorem_bound(minorants, std::log(static_cast<double>(size)));
  r.bound_total = static_cast<double>(size) * r.bound_per_vertex;
  return r;
}

/// n * psi(log_size / n): the bound for the n-th power of one graph.
inline double homogeneous_bound(const ConvexMinorant& psi, std::size_t n, double log_size) {
  if (n == 0) throw InvalidParameter("power must be positive");
  const double nd = static_cast<double>(n);
  if (!(log_size >= -domain_tolerance && log_size <= nd * psi.domain_end() + domain_tolerance))
    throw DomainError("log size " + std::to_string(log_size) + " outside [0, n log m]");
  return std::max(0.0, nd * evaluate(psi, std::clamp(log_size / nd, 0.0, psi.domain_end())));
}

/// Product set A_1 x ... x A_n from per-factor profile witnesses whose boundary
/// ratio meets the product bound.
struct SharpnessCertificate {
  struct Factor {
    std::size_t k = 0;
    VertexSet witness;
    Rational i_k;
    double left_derivative = 0;  // meaningful only when !left_is_neg_infinity
    bool left_is_neg_infinity = false;
    double right_derivative = 0;
  };
  std::vector<Factor> factors;
  double r = 0;
  double log_size = 0;
  double construction_value = 0;  // sum_i i_{k_i}, per vertex
  double bound_value = 0;         // theorem_bound at log_size, per vertex
  bool consistent = false;        // values agree within 1e-9 relative, r is in every subdifferential
};

inline constexpr double sharpness_tolerance = 1e-9;

namespace detail {

inline bool close_relative(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

inline SharpnessCertificate assemble_certificate(std::span<const IsoProfile> profiles,
                                                 std::span<const ConvexMinorant> minorants,
                                                 std::span<const std::size_t> sizes, double r) {
  SharpnessCertificate c;
  c.r = r;
  bool ok = true;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t k = sizes[i];
    const double x = std::log(static_cast<double>(k));
    const auto d = one_sided_derivatives(minorants[i], x);
    SharpnessCertificate::Factor f;
    f.k = k;
    f.witness = profiles[i].at(k).witness;
    f.i_k = profiles[i].i_k(k);
    f.left_is_neg_infinity = d.left.is_neg_infinity();
    f.left_derivative = f.left_is_neg_infinity ? 0.0 : d.left.value();
    f.right_derivative = d.right;
    ok = ok && d.left.at_most(r, 1e-12) && r <= d.right + 1e-12;
    ok = ok && close_relative(evaluate(minorants[i], x), f.i_k.to_double(), sharpness_tolerance);
    c.log_size += x;
    c.construction_value += f.i_k.to_double();
    c.factors.push_back(std::move(f));
  }
  c.bound_value = theorem_bound(minorants, c.log_size).bound_per_vertex;
  c.consistent = ok && close_relative(c.construction_value, c.bound_value, sharpness_tolerance);
  return c;
}

inline void check_factor_lists(std::span<const IsoProfile> profiles, std::span<const ConvexMinorant> minorants) {
  if (profiles.empty() || profiles.size() != minorants.size())
    throw InvalidParameter("need one profile and one minorant per factor");
  for (std::size_t i = 0; i < profiles.size(); ++i)
    if (profiles[i].graph_size() != minorants[i].graph_size())
      throw InvalidParameter("profile and minorant of factor " + std::to_string(i) + " disagree");
}

}  // namespace detail

/// For slope r <= 0, picks in every factor the smallest hull breakpoint whose
/// subdifferential contains r and certifies the resulting product set.
inline SharpnessCertificate sharpness_certificate(std::span<const IsoProfile> profiles,
                                                  std::span<const ConvexMinorant> minorants, double r) {
  detail::check_factor_lists(profiles, minorants);
  if (!(r <= 0)) throw DomainError("slope parameter r must be nonpositive");
  std::vector<std::size_t> sizes;
  for (const auto& psi : minorants) {
    const auto& bp = psi.breakpoints();
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < bp.size() && !pick; ++j) {
      const bool left_ok = j == 0 || psi.slope(j - 1) <= r + 1e-12;
      const bool right_ok = j == psi.segment_count() || r <= psi.slope(j) + 1e-12;
      if (left_ok && right_ok) pick = bp[j].k;
    }
    if (!pick) throw SearchFailure("no breakpoint brackets r");  // unreachable for r <= 0
    sizes.push_back(*pick);
  }
  return detail::assemble_certificate(profiles, minorants, sizes, r);
}

/// Certifies a caller-chosen size per factor. The common slope is the largest
/// left derivative; the certificate is consistent only if it fits under every
/// right derivative and each size sits on its minorant.
inline SharpnessCertificate certify_sizes(std::span<const IsoProfile> profiles,
                                          std::span<const ConvexMinorant> minorants,
                                          std::span<const std::size_t> sizes) {
  detail::check_factor_lists(profiles, minorants);
  if (sizes.size() != minorants.size()) throw InvalidParameter("need one size per factor");
  double r = -1e300;
  bool finite = false;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || sizes[i] > minorants[i].graph_size()) throw DomainError("size outside factor range");
    const auto d = one_sided_derivatives(minorants[i], std::log(static_cast<double>(sizes[i])));
    if (!d.left.is_neg_infinity()) {
      r = finite ? std::max(r, d.left.value()) : d.left.value();
      finite = true;
    }
  }
  if (!finite) {
    // Every factor sits at its singleton; any r up to the smallest right slope works.
    r = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      r = std::min(r, one_sided_derivatives(minorants[i], 0.0).right);
  }
  return detail::assemble_certificate(profiles, minorants, sizes, std::min(r, 0.0));
}

}  // namespace isobound
