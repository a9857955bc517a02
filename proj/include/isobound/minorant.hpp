#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "isobound/errors.hpp"
#include "isobound/graph.hpp"
#include "isobound/iso_profile.hpp"

namespace isobound {

struct Breakpoint {
  std::size_t k = 1;  // x = log k
  double x = 0;
  double y = 0;
};

/// Largest convex function on [0, log m] lying below every (log k, i_k):
/// a non-increasing piecewise-linear function stored as its hull vertices.
class ConvexMinorant {
 public:
  ConvexMinorant() = default;
  explicit ConvexMinorant(std::vector<Breakpoint> breakpoints) : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.empty()) throw InvalidParameter("minorant needs at least one breakpoint");
  }

  double domain_end() const noexcept { return breakpoints_.back().x; }
  std::size_t graph_size() const noexcept { return breakpoints_.back().k; }
  const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }
  std::size_t segment_count() const noexcept { return breakpoints_.size() - 1; }

  double slope(std::size_t segment) const {
    const auto& a = breakpoints_.at(segment);
    const auto& b = breakpoints_.at(segment + 1);
    return (b.y - a.y) / (b.x - a.x);
  }

 private:
  std::vector<Breakpoint> breakpoints_;
};

/// Left derivative value that may be the -infinity convention at x = 0.
/// Kept as a tag so no infinity enters arithmetic.
class LeftSlope {
 public:
  static LeftSlope neg_infinity() { return LeftSlope(true, 0.0); }
  static LeftSlope finite(double v) { return LeftSlope(false, v); }

  bool is_neg_infinity() const noexcept { return neg_inf_; }
  double value() const {
    if (neg_inf_) throw DomainError("left derivative is -infinity");
    return value_;
  }
  bool at_most(double r, double tol = 0.0) const noexcept { return neg_inf_ || value_ <= r + tol; }

 private:
  LeftSlope(bool n, double v) : neg_inf_(n), value_(v) {}
  bool neg_inf_;
  double value_;
};

struct OneSidedDerivatives {
  LeftSlope left = LeftSlope::neg_infinity();
  double right = 0.0;
};

inline constexpr double domain_tolerance = 1e-12;

/// Lower convex hull of {(log k, i_k)} by a monotone-chain sweep. Points
/// collinear with their hull neighbours (within tolerance) are dropped.
inline ConvexMinorant build_minorant(const IsoProfile& p) {
  std::vector<Breakpoint> hull;
  for (const auto& e : p.entries()) {
    const Breakpoint b{e.k, std::log(static_cast<double>(e.k)), e.i_k().to_double()};
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const double ax = a.x - o.x, ay = a.y - o.y, bx = b.x - o.x, by = b.y - o.y;
      const double cross = ax * by - ay * bx;
      const double scale = std::max(1.0, (std::abs(ax) + std::abs(bx)) * (std::abs(ay) + std::abs(by)));
      if (cross > 1e-12 * scale) break;
      hull.pop_back();
    }
    hull.push_back(b);
  }
  return ConvexMinorant(std::move(hull));
}

namespace detail {

inline double check_domain(const ConvexMinorant& psi, double x) {
  if (!(x >= -domain_tolerance && x <= psi.domain_end() + domain_tolerance))
    throw DomainError("x = " + std::to_string(x) + " outside [0, " + std::to_string(psi.domain_end()) + "]");
  return std::clamp(x, 0.0, psi.domain_end());
}

// Index of the segment containing x (segment j spans breakpoints j, j+1).
inline std::size_t segment_of(const ConvexMinorant& psi, double x) {
  const auto& bp = psi.breakpoints();
  const auto it = std::upper_bound(bp.begin(), bp.end(), x, [](double v, const Breakpoint& b) { return v < b.x; });
  const auto idx = static_cast<std::size_t>(it - bp.begin());
  return std::min(idx == 0 ? 0 : idx - 1, psi.segment_count() - 1);
}

}  // namespace detail

inline double evaluate(const ConvexMinorant& psi, double x) {
  x = detail::check_domain(psi, x);
  if (psi.segment_count() == 0) return psi.breakpoints().front().y;
  const auto& bp = psi.breakpoints();
  if (x >= psi.domain_end()) return bp.back().y;
  const std::size_t j = detail::segment_of(psi, x);
  const double t = (x - bp[j].x) / (bp[j + 1].x - bp[j].x);
  return bp[j].y + t * (bp[j + 1].y - bp[j].y);
}

/// Slopes to either side of x, with left = -infinity at 0 and right = 0 at log m.
inline OneSidedDerivatives one_sided_derivatives(const ConvexMinorant& psi, double x) {
  x = detail::check_domain(psi, x);
  const auto& bp = psi.breakpoints();
  const std::size_t segs = psi.segment_count();
  OneSidedDerivatives d;
  for (std::size_t j = 0; j < bp.size(); ++j) {
    if (std::abs(bp[j].x - x) > domain_tolerance) continue;
    d.left = j == 0 ? LeftSlope::neg_infinity() : LeftSlope::finite(psi.slope(j - 1));
    d.right = j == segs ? 0.0 : psi.slope(j);
    return d;
  }
  const double s = psi.slope(detail::segment_of(psi, x));
  d.left = LeftSlope::finite(s);
  d.right = s;
  return d;
}

/// Quantities of a connected regular graph built from the chords through
/// (log k, i_k) and (log m, 0).
struct RegularSummary {
  std::size_t m = 0;
  std::size_t degree = 0;
  std::size_t k_star = 1;
  Rational i_k_star;
  double y_g = 0;
  double slope_star = 0;
};

struct KStar {
  std::size_t k = 1;
  double slope = 0;  // -i_k / (log m - log k)
};

/// Smallest k in [1, m-1] maximizing -i_k / (log m - log k): the line through
/// (log k, i_k) and (log m, 0) with the least negative slope. Needs no
/// regularity, so it also serves paths.
inline KStar last_segment_start(const IsoProfile& p) {
  const std::size_t m = p.graph_size();
  if (m < 2) throw PreconditionError("graph needs at least two vertices");
  const double log_m = std::log(static_cast<double>(m));
  KStar best;
  for (std::size_t k = 1; k < m; ++k) {
    const double slope = -p.value(k) / (log_m - std::log(static_cast<double>(k)));
    // Ties keep the smaller k.
    if (k == 1 || slope > best.slope + 1e-12 * std::max(1.0, std::abs(best.slope))) best = {k, slope};
  }
  return best;
}

inline RegularSummary regular_summary(const Graph& g, const IsoProfile& p) {
  const auto d = g.regular_degree();
  if (!d) throw PreconditionError("graph is not regular");
  if (!g.is_connected()) throw PreconditionError("graph is not connected");
  const std::size_t m = g.vertex_count();
  if (m < 2) throw PreconditionError("graph needs at least two vertices");
  if (p.graph_size() != m) throw InvalidParameter("profile does not match graph");
  const double log_m = std::log(static_cast<double>(m));
  const auto ks = last_segment_start(p);
  RegularSummary s;
  s.m = m;
  s.degree = *d;
  s.k_star = ks.k;
  s.slope_star = ks.slope;
  s.i_k_star = p.i_k(s.k_star);
  s.y_g = s.i_k_star.to_double() * (log_m / (log_m - std::log(static_cast<double>(s.k_star))));
  return s;
}

}  // namespace isobound
