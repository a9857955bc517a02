#pragma once

// Per-vertex lower bounds for standard product families. Each value is the
// product bound evaluated with an explicit lower estimate of the factor
// minorant, clamped at zero.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isobound/errors.hpp"
#include "isobound/minorant.hpp"

namespace isobound {

enum class BoundFamily { hamming, grid, torus, regular_product, connected_regular_product, regular_power };

inline std::string_view bound_family_name(BoundFamily f) {
  switch (f) {
    case BoundFamily::hamming: return "hamming";
    case BoundFamily::grid: return "grid";
    case BoundFamily::torus: return "torus";
    case BoundFamily::regular_product: return "regular_product";
    case BoundFamily::connected_regular_product: return "connected_regular_product";
    case BoundFamily::regular_power: return "regular_power";
  }
  return "?";
}

struct BlComparison {
  double bl_bound_per_vertex = 0;
  double ratio = 0;  // bl / ours; unset (0) when ours is 0
};

struct BoundReport {
  BoundFamily family = BoundFamily::hamming;
  std::size_t n = 0;
  std::vector<std::size_t> sizes;    // m_i (one entry for powers)
  std::vector<std::size_t> degrees;  // d_i where relevant
  double log_size = 0;
  double bound_per_vertex = 0;
  std::optional<BlComparison> comparison;
};

namespace detail {

inline void check_log_size(double log_size, double volume) {
  if (!(log_size >= -domain_tolerance && log_size <= volume + domain_tolerance))
    throw DomainError("log size " + std::to_string(log_size) + " outside [0, " + std::to_string(volume) + "]");
}

inline double power_volume(std::size_t n, std::size_t m) {
  if (n == 0) throw InvalidParameter("power must be positive");
  if (m == 0) throw InvalidParameter("graph size must be positive");
  return static_cast<double>(n) * std::log(static_cast<double>(m));
}

}  // namespace detail

/// Hamming graph H(n, m): (m - 1)(n - log_m |A|).
inline double hamming_bound(std::size_t n, std::size_t m, double log_size) {
  const double vol = detail::power_volume(n, m);
  detail::check_log_size(log_size, vol);
  if (m < 2) return 0.0;
  return std::max(0.0, static_cast<double>(m - 1) * (static_cast<double>(n) - log_size / std::log(static_cast<double>(m))));
}

/// log |A| where the grid/torus bound switches from n e^{-x/n} to the linear
/// piece: |A| = (m/e)^n.
inline double grid_regime_threshold(std::size_t n, std::size_t m) {
  return static_cast<double>(n) * (std::log(static_cast<double>(m)) - 1.0);
}

/// Grid P_m^n.
inline double grid_bound(std::size_t n, std::size_t m, double log_size) {
  if (m < 3) throw InvalidParameter("grid bound needs m >= 3");
  const double vol = detail::power_volume(n, m);
  detail::check_log_size(log_size, vol);
  log_size = std::clamp(log_size, 0.0, vol);
  const double nd = static_cast<double>(n);
  if (log_size <= grid_regime_threshold(n, m)) return nd * std::exp(-log_size / nd);
  return std::max(0.0, std::numbers::e / static_cast<double>(m) * (vol - log_size));
}

/// Torus C_m^n: twice the grid value, since psi_{C_m} = 2 psi_{P_m}.
inline double torus_bound(std::size_t n, std::size_t m, double log_size) { return 2.0 * grid_bound(n, m, log_size); }

/// Bollobas-Leader grid/torus bound: (1/m) min_{r in [n]} c r (m^n/|A|)^{1/r},
/// c = 2 for the torus.
inline double bl_bound(std::size_t n, std::size_t m, double log_size, bool torus) {
  if (m < 3) throw InvalidParameter("grid bound needs m >= 3");
  const double vol = detail::power_volume(n, m);
  detail::check_log_size(log_size, vol);
  log_size = std::clamp(log_size, 0.0, vol);
  double best = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    const double rd = static_cast<double>(r);
    const double v = rd * std::exp((vol - log_size) / rd);
    best = r == 1 ? v : std::min(best, v);
  }
  return (torus ? 2.0 : 1.0) * best / static_cast<double>(m);
}

inline BoundReport compare_with_bl(std::size_t n, std::size_t m, double log_size, bool torus) {
  BoundReport rep;
  rep.family = torus ? BoundFamily::torus : BoundFamily::grid;
  rep.n = n;
  rep.sizes = {m};
  rep.degrees = {torus ? std::size_t{2} : std::size_t{1}};
  rep.log_size = log_size;
  rep.bound_per_vertex = torus ? torus_bound(n, m, log_size) : grid_bound(n, m, log_size);
  BlComparison c;
  c.bl_bound_per_vertex = bl_bound(n, m, log_size, torus);
  c.ratio = rep.bound_per_vertex > 0 ? c.bl_bound_per_vertex / rep.bound_per_vertex : 0.0;
  rep.comparison = c;
  return rep;
}

/// Products of d_i-regular graphs: d - D log_{D+1} |A| with d = sum d_i, D = max d_i.
inline double regular_product_bound(std::span<const std::size_t> degrees, std::span<const std::size_t> sizes,
                                    double log_size) {
  if (degrees.empty() || degrees.size() != sizes.size()) throw InvalidParameter("need one degree per factor size");
  double vol = 0;
  std::size_t d = 0, big_d = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) throw InvalidParameter("factor degrees must be at least 1");
    if (sizes[i] < degrees[i] + 1) throw InvalidParameter("a d-regular factor has at least d + 1 vertices");
    vol += std::log(static_cast<double>(sizes[i]));
    d += degrees[i];
    big_d = std::max(big_d, degrees[i]);
  }
  detail::check_log_size(log_size, vol);
  const double bd = static_cast<double>(big_d);
  return std::max(0.0, static_cast<double>(d) - bd * std::max(0.0, log_size) / std::log(bd + 1.0));
}

/// Products of connected graphs: (e/M) log(|V|/|A|), M = max m_i.
inline double connected_regular_bound(std::span<const std::size_t> sizes, double log_size, double total_log_volume) {
  if (sizes.empty()) throw InvalidParameter("at least one factor size required");
  const std::size_t big_m = *std::max_element(sizes.begin(), sizes.end());
  if (big_m == 0) throw InvalidParameter("graph size must be positive");
  detail::check_log_size(log_size, total_log_volume);
  return std::max(0.0, std::numbers::e / static_cast<double>(big_m) * (total_log_volume - log_size));
}

/// Powers G^n of a connected regular graph: y_G (n - log_m |A|).
inline double regular_power_bound(const RegularSummary& summary, std::size_t m, std::size_t n, double log_size) {
  if (summary.m != m) throw InvalidParameter("summary belongs to a graph of a different size");
  const double vol = detail::power_volume(n, m);
  detail::check_log_size(log_size, vol);
  return std::max(0.0, summary.y_g * (static_cast<double>(n) - log_size / std::log(static_cast<double>(m))));
}

}  // namespace isobound
