// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time limits are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "isobound/isobound.hpp"
#include "oracles.hpp"

using namespace isobound;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure message; later ones are counted only.
struct Tally {
  Outcome o;
  int failures = 0;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (failures++ == 0) o.detail = what;
    o.pass = false;
  }
  Outcome done(std::string summary) {
    if (o.pass) o.detail = std::move(summary);
    else if (failures > 1) o.detail += " (+" + std::to_string(failures - 1) + " more)";
    return o;
  }
};

std::string str(double v) {
  std::ostringstream s;
  s.precision(15);
  s << v;
  return s.str();
}

Graph unlabeled(const Graph& g) { return Graph(g.vertex_count(), g.edges()); }

Outcome profile_exactness() {
  Tally t;
  for (std::size_t m = 2; m <= 10; ++m)
    for (auto f : {Family::complete, Family::path, Family::cycle}) {
      if (f == Family::cycle && m < 3) continue;
      const auto p = profile_bruteforce(unlabeled(generate(f, m)));
      for (std::size_t k = 1; k <= m; ++k) {
        const std::uint64_t num = k == m ? 0 : f == Family::complete ? m - k : f == Family::path ? 1 : 2;
        const Rational want = f == Family::complete ? Rational(num, 1) : Rational(num, k);
        t.require(p.i_k(k) == want, std::string(family_name(f)) + ":" + std::to_string(m) + " k=" + std::to_string(k));
      }
    }
  return t.done("K_m, P_m, C_m for m = 2..10 match exactly");
}

Outcome hypercube_sharpness() {
  Tally t;
  const auto k2 = oracle::complete(2);
  const auto q4 = oracle::product(oracle::product(k2, k2), oracle::product(k2, k2));
  const auto truth = oracle::min_boundaries(q4);  // all 2^16 subsets
  const auto rep = verify_theorem(ProductSpec{std::vector<Graph>(4, generate(Family::complete, 2))});
  for (std::size_t tt = 0; tt <= 4; ++tt) {
    const std::size_t k = std::size_t{1} << tt;
    const int want = static_cast<int>(k * (4 - tt));
    t.require(truth[k] == want, "enumeration at 2^" + std::to_string(tt) + " gave " + std::to_string(truth[k]));
    const auto& c = rep.checks[k - 1];
    t.require(c.true_min_boundary == static_cast<std::uint64_t>(want), "search at 2^" + std::to_string(tt));
    t.require(std::abs(c.theorem_bound_total - want) <= 1e-9 * want && c.tight, "bound not tight at 2^" + std::to_string(tt));
  }
  return t.done("min boundary 2^t(4-t) and bound tight for t = 0..4");
}

Outcome desk_scale_validity() {
  Tally t;
  const auto p3 = generate(Family::path, 3), c4 = generate(Family::cycle, 4), k2 = generate(Family::complete, 2),
             k3 = generate(Family::complete, 3);
  const std::vector<ProductSpec> specs{ProductSpec{{p3, p3}}, ProductSpec{{p3, c4}}, ProductSpec{{k2, k2, k2, k2}},
                                       ProductSpec{{c4, c4}}, ProductSpec{{k3, k3}}};
  std::size_t checks = 0;
  for (const auto& s : specs) {
    const auto rep = verify_theorem(s);
    for (const auto& c : rep.checks) {
      ++checks;
      t.require(c.gap >= -1e-9 * static_cast<double>(c.true_min_boundary),
                rep.product + " k=" + std::to_string(c.k) + " gap " + str(c.gap));
    }
  }
  return t.done(std::to_string(checks) + " sizes over 5 products, no negative gap");
}

Outcome greedy_vs_oracle() {
  Tally t;
  std::mt19937_64 rng(20240601);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<ConvexMinorant> fs;
    std::vector<oracle::EnvelopeFn> env;
    double vol = 0;
    for (int i = 0; i < n; ++i) {
      const auto f = gen::random_factor(rng, 8);
      fs.push_back(build_minorant(profile_bruteforce(f.graph)));
      env.emplace_back(oracle::min_boundaries(f.plain));
      vol += fs.back().domain_end();
    }
    const double x = std::uniform_real_distribution<double>(0, vol)(rng);
    const double err = std::abs(theorem_bound(fs, x).bound_per_vertex - oracle::grid_minimum(env, x, 1e-4));
    worst = std::max(worst, err);
    t.require(err <= 1e-6, "instance " + std::to_string(trial) + " off by " + str(err));
  }
  return t.done("50 instances, max deviation " + str(worst));
}

Outcome k_star_paths() {
  Tally t;
  for (std::size_t m = 3; m <= 50; ++m) {
    // Exhaustive up to the pruned search cap, closed form beyond.
    const auto p = m <= 30 ? profile_bruteforce(unlabeled(generate(Family::path, m)))
                           : profile_closed_form(Family::path, m);
    const std::size_t k = last_segment_start(p).k;
    const double r = static_cast<double>(m) / std::numbers::e;
    t.require(k == static_cast<std::size_t>(std::floor(r)) || k == static_cast<std::size_t>(std::ceil(r)),
              "P_" + std::to_string(m) + " has k* = " + std::to_string(k));
    if (m == 3) t.require(k == 1, "k*(P_3) != 1");
    if (m == 5) t.require(k == 2, "k*(P_5) != 2");
  }
  return t.done("k*(P_m) in {floor(m/e), ceil(m/e)} for m = 3..50; k*(P_3) = 1, k*(P_5) = 2");
}

Outcome bl_comparison() {
  Tally t;
  double worst = 0;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{3, 5}, {4, 7}, {5, 10}})
    for (bool torus : {false, true}) {
      const double th = grid_regime_threshold(n, m);
      const double hi = static_cast<double>(n) * std::log(static_cast<double>(m)) - std::log(2.0);
      for (int s = 0; s < 100; ++s) {
        const auto small = compare_with_bl(n, m, th * s / 99.0, torus);
        t.require(std::abs(small.comparison->bl_bound_per_vertex - small.bound_per_vertex) <= 1e-12,
                  "small regime mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m));
        const auto large = compare_with_bl(n, m, th + (hi - th) * s / 99.0, torus);
        worst = std::max(worst, large.comparison->ratio);
        t.require(large.comparison->ratio <= 1.0615, "ratio " + str(large.comparison->ratio));
      }
    }
  return t.done("equal below (m/e)^n; max ratio " + str(worst) + " up to m^n/2");
}

Outcome torus_doubles_grid() {
  Tally t;
  for (std::size_t m = 3; m <= 20; ++m) {
    const auto c = build_minorant(profile_bruteforce(unlabeled(generate(Family::cycle, m))));
    const auto p = build_minorant(profile_bruteforce(unlabeled(generate(Family::path, m))));
    const auto &cb = c.breakpoints(), &pb = p.breakpoints();
    t.require(cb.size() == pb.size(), "breakpoint count differs for m=" + std::to_string(m));
    for (std::size_t j = 0; j < std::min(cb.size(), pb.size()); ++j) {
      t.require(cb[j].k == pb[j].k && std::abs(cb[j].x - pb[j].x) <= 1e-12, "x differs, m=" + std::to_string(m));
      t.require(std::abs(cb[j].y - 2 * pb[j].y) <= 1e-12, "y not doubled, m=" + std::to_string(m));
    }
  }
  return t.done("identical breakpoints with doubled values for m = 3..20");
}

Outcome q71() {
  Tally t;
  const Graph c5 = generate(Family::cycle, 5);
  const auto p = profile_bruteforce(unlabeled(c5));
  const auto w = q71_witness(c5, p, build_minorant(p), 2);
  // Pinned from the independent chord-envelope oracle.
  t.require(std::abs(w.residual - 0.277293767706428) <= 1e-9, "residual " + str(w.residual));
  t.require(w.residual > 0.2, "residual not above 0.2");
  for (int j = 0; j < 3; ++j) {
    t.require(std::abs(w.lower[j] - w.upper[j]) <= 1e-9, "bounds disagree at size " + std::to_string(j));
    const double count = std::pow(static_cast<double>(w.base_sizes[j]), 2.0);
    t.require(w.explicit_boundary[j] && std::abs(static_cast<double>(*w.explicit_boundary[j]) - count * w.exact[j]) <= 1e-9,
              "explicit construction disagrees at size " + std::to_string(j));
  }
  return t.done("residual " + str(w.residual) + " at |A| = 4 in C_5^2, both sides certified");
}

Outcome q72() {
  Tally t;
  const Graph c5 = generate(Family::cycle, 5);
  const auto p = profile_bruteforce(unlabeled(c5));
  const auto c = q72_certificate(c5, regular_summary(c5, p), p);
  // Independent re-evaluation in long double from (s, t, eps) alone.
  const long double lm = std::log(5.0L), lr = std::log(2.5L), eps = c.epsilon, s = c.s, tt = c.t, d = 2;
  const long double y = lm / lr;
  const long double ratio = std::exp(s * lm - tt * lr);
  t.require(std::fabs(s * lm - tt * lr) <= eps / 2, "approximation");
  t.require(ratio >= 1 - eps && ratio <= 1 + eps, "size bracket");
  t.require(ratio * tt * 1.0L <= (1 + eps) * (s * y + eps), "boundary of A");
  t.require(eps * (s + tt) * d <= eps * s * d * (1 + (lm + eps / 2) / lr) * (1 + 1e-15L), "swap cost");
  const long double lhs = (1 + eps) * (s * y + eps) + eps * s * d * (1 + (lm + eps / 2) / lr);
  t.require(lhs < s * d, "strict inequality");
  for (std::size_t m = 3; m <= 8; ++m) {
    const Graph g = generate(Family::complete, m);
    const auto pk = profile_bruteforce(unlabeled(g));
    bool slab = false;
    try {
      q72_certificate(g, regular_summary(g, pk), pk);
    } catch (const SlabOptimal&) {
      slab = true;
    }
    t.require(slab, "K_" + std::to_string(m) + " did not report y_G = d");
  }
  return t.done("C_5: s=" + std::to_string(c.s) + " t=" + std::to_string(c.t) + " eps=" + str(c.epsilon) +
                " re-verified; K_3..K_8 slab-optimal");
}

Outcome large_products_note() {
  Outcome o;
  o.detail = "m^n-vertex products with large n are not materialized; their bounds rest on criteria 4-7";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "profile exactness", 10, profile_exactness},
      {2, "hypercube sharpness", 30, hypercube_sharpness},
      {3, "theorem validity", 120, desk_scale_validity},
      {4, "greedy vs oracle", 60, greedy_vs_oracle},
      {5, "k* of paths", 60, k_star_paths},
      {6, "Bollobas-Leader comparison", 60, bl_comparison},
      {7, "torus is twice grid", 60, torus_doubles_grid},
      {8, "non-linear profile witness", 60, q71},
      {9, "Dirichlet certificate", 60, q72},
      {10, "large products", 1, large_products_note},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_seconds) o = {false, "took " + str(secs) + " s, limit " + str(c.limit_seconds) + " s"};
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %-28s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
