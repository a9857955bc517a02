#pragma once

// JSON and CSV exports. Vertex sets are written as hex membership patterns.

#include <ostream>
#include <string>

#include "json.hpp"

#include "isobound/closed_forms.hpp"
#include "isobound/iso_profile.hpp"
#include "isobound/minorant.hpp"
#include "isobound/product_bound.hpp"
#include "isobound/verify_certify.hpp"

namespace isobound {

using nlohmann::json;

inline void to_json(json& j, const Rational& r) { j = json{{"num", r.num()}, {"den", r.den()}}; }

inline void to_json(json& j, const IsoProfile& p) {
  j = json{{"graph_size", p.graph_size()}, {"entries", json::array()}};
  for (const auto& e : p.entries())
    j["entries"].push_back({{"k", e.k},
                            {"min_boundary", e.min_boundary},
                            {"i_k", e.i_k()},
                            {"witness", e.witness.to_hex()}});
}

/// Header: k,min_boundary,i_k_num,i_k_den,witness
inline void write_profile_csv(std::ostream& out, const IsoProfile& p) {
  out << "k,min_boundary,i_k_num,i_k_den,witness\n";
  for (const auto& e : p.entries()) {
    const auto r = e.i_k();
    out << e.k << ',' << e.min_boundary << ',' << r.num() << ',' << r.den() << ',' << e.witness.to_hex() << '\n';
  }
}

inline void to_json(json& j, const ConvexMinorant& psi) {
  j = json{{"domain_end", psi.domain_end()}, {"breakpoints", json::array()}};
  for (const auto& b : psi.breakpoints()) j["breakpoints"].push_back({{"k", b.k}, {"x", b.x}, {"y", b.y}});
}

inline void to_json(json& j, const RegularSummary& s) {
  j = json{{"m", s.m},           {"degree", s.degree}, {"k_star", s.k_star},
           {"i_k_star", s.i_k_star}, {"y_G", s.y_g},   {"slope_star", s.slope_star}};
}

inline void to_json(json& j, const AllocationResult& r) {
  j = json{{"target_log_size", r.target_log_size},
           {"allocation", r.allocation},
           {"bound_per_vertex", r.bound_per_vertex},
           {"bound_total", r.bound_total ? json(*r.bound_total) : json(nullptr)}};
}

inline void to_json(json& j, const SharpnessCertificate& c) {
  j = json{{"r", c.r},
           {"log_size", c.log_size},
           {"construction_value", c.construction_value},
           {"bound_value", c.bound_value},
           {"consistent", c.consistent},
           {"factors", json::array()}};
  for (const auto& f : c.factors)
    j["factors"].push_back({{"k", f.k},
                            {"witness", f.witness.to_hex()},
                            {"i_k", f.i_k},
                            {"left_derivative", f.left_is_neg_infinity ? json("-inf") : json(f.left_derivative)},
                            {"right_derivative", f.right_derivative}});
}

inline void to_json(json& j, const BoundReport& r) {
  j = json{{"family", bound_family_name(r.family)},
           {"n", r.n},
           {"sizes", r.sizes},
           {"degrees", r.degrees},
           {"log_size", r.log_size},
           {"bound_per_vertex", r.bound_per_vertex}};
  if (r.comparison)
    j["comparison"] = {{"bl_bound_per_vertex", r.comparison->bl_bound_per_vertex}, {"ratio", r.comparison->ratio}};
}

inline void to_json(json& j, const VerificationReport& r) {
  j = json{{"product", r.product}, {"vertex_count", r.vertex_count}, {"all_valid", r.all_valid()},
           {"checks", json::array()}};
  for (const auto& c : r.checks)
    j["checks"].push_back({{"k", c.k},
                           {"true_min_boundary", c.true_min_boundary},
                           {"theorem_bound_total", c.theorem_bound_total},
                           {"gap", c.gap},
                           {"tight", c.tight},
                           {"valid", c.valid},
                           {"witness", c.witness.to_hex()}});
}

inline void to_json(json& j, const NonlinearityWitness& w) {
  j = json{{"graph", w.graph}, {"n", w.n}, {"interpolation", w.interpolation}, {"residual", w.residual},
           {"sizes", json::array()}};
  for (int i = 0; i < 3; ++i)
    j["sizes"].push_back({{"base_size", w.base_sizes[i]},
                          {"log_size", w.log_sizes[i]},
                          {"lower", w.lower[i]},
                          {"upper", w.upper[i]},
                          {"exact", w.exact[i]},
                          {"explicit_boundary", w.explicit_boundary[i] ? json(*w.explicit_boundary[i]) : json(nullptr)}});
}

inline void to_json(json& j, const DirichletCertificate& c) {
  const auto checks = check_dirichlet(c);
  j = json{{"m", c.m},
           {"d", c.d},
           {"k_star", c.k_star},
           {"y_G", c.y_g},
           {"i_k_star", c.i_k_star},
           {"witness", c.witness.to_hex()},
           {"epsilon", c.epsilon},
           {"s", c.s},
           {"t", c.t},
           {"approximation_error", c.approximation_error},
           {"size_ratio", c.size_ratio},
           {"a_boundary", c.a_boundary},
           {"a_boundary_cap", c.a_boundary_cap},
           {"swap_cost", c.swap_cost},
           {"swap_cap", c.swap_cap},
           {"lhs", c.lhs},
           {"rhs", c.rhs},
           {"checks",
            {{"approximation", checks.approximation},
             {"size_bracket", checks.size_bracket},
             {"a_boundary", checks.a_boundary},
             {"swap", checks.swap},
             {"strict", checks.strict}}}};
}

}  // namespace isobound
