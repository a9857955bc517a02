#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isobound/isobound.hpp"

namespace isobound::cli {

enum class Output { human, json, csv };

struct CliConfig {
  std::string subcommand;
  std::vector<std::string> spec_words;
  Output output = Output::human;
  unsigned threads = 1;
  std::optional<std::uint64_t> max_vertices;
  std::optional<std::uint64_t> size;
  std::optional<std::string> log_size;
  std::size_t samples = 100;
  std::vector<std::size_t> sizes;
  std::size_t power = 2;
  double eps = 0.1;
  std::uint64_t t_max = 1'000'000;

  std::string spec() const {
    std::string s;
    for (const auto& w : spec_words) s += (s.empty() ? "" : " ") + w;
    return s;
  }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts a plain number or a product of factors, each a number or
/// log(number), e.g. "10*log(5)" or "log(7)".
inline double parse_log_size(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw UsageError("empty log size");
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || !std::isfinite(v)) throw UsageError("bad number '" + t + "' in log size");
    return v;
  };
  double value = 1;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto star = s.find('*', pos);
    const std::string term = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
    if (term.rfind("log(", 0) == 0 && term.back() == ')') {
      const double arg = number(term.substr(4, term.size() - 5));
      if (!(arg > 0)) throw UsageError("log argument must be positive");
      value *= std::log(arg);
    } else {
      value *= number(term);
    }
    if (star == std::string::npos) break;
    pos = star + 1;
  }
  return value;
}

namespace detail {

inline std::uint64_t materialization_cap(const CliConfig& cfg) {
  if (cfg.max_vertices) return *cfg.max_vertices;
  if (const char* env = std::getenv("ISOBOUND_MAX_VERTICES")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw UsageError("ISOBOUND_MAX_VERTICES must be a positive integer");
  }
  return default_materialization_cap;
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

struct Factors {
  ProductSpec spec;
  std::vector<IsoProfile> profiles;
  std::vector<ConvexMinorant> minorants;
};

// Repeated factors share a label; compute each distinct factor once.
inline Factors analyze_factors(const ProductSpec& spec, const SearchOptions& search) {
  Factors f;
  f.spec = spec;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& g = spec.factors[i];
    const std::string key = g.label() + "#" + std::to_string(g.vertex_count());
    if (auto it = seen.find(key); it != seen.end() && !g.label().empty()) {
      f.profiles.push_back(f.profiles[it->second]);
      f.minorants.push_back(f.minorants[it->second]);
      continue;
    }
    seen[key] = i;
    f.profiles.push_back(profile(g, search));
    f.minorants.push_back(build_minorant(f.profiles.back()));
  }
  return f;
}

inline bool identical_factors(const ProductSpec& spec) {
  for (const auto& g : spec.factors)
    if (g.label().empty() || g.label() != spec.factors.front().label()) return false;
  return true;
}

inline Graph single_graph(const ProductSpec& spec, std::uint64_t cap) {
  return spec.factors.size() == 1 ? spec.factors.front() : cartesian_product(spec, cap);
}

inline const Graph& require_single_factor(const ProductSpec& spec, const std::string& cmd) {
  if (spec.factors.size() != 1) throw UsageError(cmd + " expects a single graph, not a product");
  return spec.factors.front();
}

inline SearchOptions search_options(const CliConfig& cfg) {
  SearchOptions s;
  s.threads = cfg.threads;
  return s;
}

inline int cmd_profile(const CliConfig& cfg, const ProductSpec& spec, std::ostream& out) {
  const Graph g = single_graph(spec, materialization_cap(cfg));
  const IsoProfile p = profile(g, search_options(cfg));
  if (cfg.output == Output::json) {
    out << json(p).dump(2) << '\n';
  } else if (cfg.output == Output::csv) {
    write_profile_csv(out, p);
  } else {
    out << "profile of " << spec.description() << " (" << g.vertex_count() << " vertices)\n";
    for (const auto& e : p.entries())
      out << "  k=" << e.k << "  min_boundary=" << e.min_boundary << "  i_k=" << e.i_k().num() << '/'
          << e.i_k().den() << "  witness=" << e.witness.to_hex() << '\n';
  }
  return 0;
}

inline int cmd_minorant(const CliConfig& cfg, const ProductSpec& spec, std::ostream& out) {
  const Graph g = single_graph(spec, materialization_cap(cfg));
  const IsoProfile p = profile(g, search_options(cfg));
  const ConvexMinorant psi = build_minorant(p);
  std::optional<RegularSummary> summary;
  if (g.vertex_count() >= 2 && g.regular_degree() && g.is_connected()) summary = regular_summary(g, p);
  if (cfg.output == Output::json) {
    json j = psi;
    j["regular"] = summary ? json(*summary) : json(nullptr);
    out << j.dump(2) << '\n';
  } else if (cfg.output == Output::csv) {
    out << "k,x,y\n";
    for (const auto& b : psi.breakpoints()) out << b.k << ',' << fmt(b.x) << ',' << fmt(b.y) << '\n';
  } else {
    out << "minorant of " << spec.description() << " on [0, " << fmt(psi.domain_end()) << "]\n";
    for (const auto& b : psi.breakpoints())
      out << "  k=" << b.k << "  x=" << fmt(b.x) << "  y=" << fmt(b.y) << '\n';
    if (summary)
      out << "  regular: d=" << summary->degree << "  k*=" << summary->k_star << "  y_G=" << fmt(summary->y_g) << '\n';
  }
  return 0;
}

inline std::vector<BoundReport> applicable_closed_forms(const Factors& f, double log_size) {
  std::vector<BoundReport> reports;
  const auto& factors = f.spec.factors;
  const std::size_t n = factors.size();
  const bool same = identical_factors(f.spec);
  const auto fam = factors.front().family();
  const std::size_t m = factors.front().vertex_count();
  if (same && fam == Family::complete && m >= 2) {
    BoundReport r{BoundFamily::hamming, n, {m}, {m - 1}, log_size, hamming_bound(n, m, log_size), std::nullopt};
    reports.push_back(r);
  }
  if (same && (fam == Family::path || fam == Family::cycle) && m >= 3)
    reports.push_back(compare_with_bl(n, m, log_size, fam == Family::cycle));

  std::vector<std::size_t> sizes, degrees;
  bool regular = true, connected = true;
  for (const auto& g : factors) {
    sizes.push_back(g.vertex_count());
    const auto d = g.regular_degree();
    regular = regular && d && *d >= 1;
    degrees.push_back(d.value_or(0));
    connected = connected && g.is_connected();
  }
  if (regular) {
    reports.push_back({BoundFamily::regular_product, n, sizes, degrees, log_size,
                       regular_product_bound(degrees, sizes, log_size), std::nullopt});
    if (connected)
      reports.push_back({BoundFamily::connected_regular_product, n, sizes, degrees, log_size,
                         connected_regular_bound(sizes, log_size, f.spec.log_vertex_count()), std::nullopt});
    if (connected && same && m >= 2) {
      const auto s = regular_summary(factors.front(), f.profiles.front());
      reports.push_back({BoundFamily::regular_power, n, {m}, {s.degree}, log_size,
                         regular_power_bound(s, m, n, log_size), std::nullopt});
    }
  }
  return reports;
}

inline int cmd_bound(const CliConfig& cfg, const ProductSpec& spec, std::ostream& out) {
  if (cfg.size.has_value() == cfg.log_size.has_value()) throw UsageError("bound needs exactly one of --size, --log-size");
  const Factors f = analyze_factors(spec, search_options(cfg));
  const AllocationResult res = cfg.size ? theorem_bound_for_size(f.minorants, *cfg.size)
                                        : theorem_bound(f.minorants, parse_log_size(*cfg.log_size));
  std::optional<double> homogeneous;
  if (identical_factors(spec)) homogeneous = homogeneous_bound(f.minorants.front(), spec.factors.size(), res.target_log_size);
  const auto closed = applicable_closed_forms(f, res.target_log_size);

  if (cfg.output == Output::json) {
    json j{{"product", spec.description()}, {"theorem", res},
           {"homogeneous_bound_per_vertex", homogeneous ? json(*homogeneous) : json(nullptr)},
           {"closed_forms", closed}};
    out << j.dump(2) << '\n';
  } else if (cfg.output == Output::csv) {
    out << "bound,log_size,per_vertex,total\n";
    out << "theorem," << fmt(res.target_log_size) << ',' << fmt(res.bound_per_vertex) << ','
        << (res.bound_total ? fmt(*res.bound_total) : "") << '\n';
    for (const auto& c : closed)
      out << bound_family_name(c.family) << ',' << fmt(c.log_size) << ',' << fmt(c.bound_per_vertex) << ','
          << (cfg.size ? fmt(static_cast<double>(*cfg.size) * c.bound_per_vertex) : "") << '\n';
  } else {
    out << "product " << spec.description() << ", log|A| = " << fmt(res.target_log_size) << '\n';
    out << "  theorem bound per vertex: " << fmt(res.bound_per_vertex) << '\n';
    if (res.bound_total) out << "  theorem bound total:      " << fmt(*res.bound_total) << '\n';
    out << "  allocation:";
    for (double h : res.allocation) out << ' ' << fmt(h);
    out << '\n';
    for (const auto& c : closed) {
      out << "  " << bound_family_name(c.family) << ": " << fmt(c.bound_per_vertex);
      if (c.comparison) out << "  (bl " << fmt(c.comparison->bl_bound_per_vertex) << ", ratio " << fmt(c.comparison->ratio) << ')';
      out << '\n';
    }
  }
  return 0;
}

inline int cmd_compare(const CliConfig& cfg, const ProductSpec& spec, std::ostream& out) {
  const auto fam = spec.factors.front().family();
  if (!identical_factors(spec) || !(fam == Family::path || fam == Family::cycle))
    throw UsageError("compare needs a power of path:M or cycle:M");
  const std::size_t n = spec.factors.size();
  const std::size_t m = spec.factors.front().vertex_count();
  if (m < 3) throw UsageError("compare needs M >= 3");
  if (cfg.samples == 0) throw UsageError("--samples must be positive");
  // The comparison bound covers |A| <= m^n / 2.
  const double hi = static_cast<double>(n) * std::log(static_cast<double>(m)) - std::log(2.0);
  std::vector<BoundReport> rows;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const double ls = cfg.samples == 1 ? 0.0 : hi * static_cast<double>(i) / static_cast<double>(cfg.samples - 1);
    rows.push_back(compare_with_bl(n, m, ls, fam == Family::cycle));
  }
  if (cfg.output == Output::json) {
    out << json(rows).dump(2) << '\n';
  } else {
    out << "log_size,ours,bl,ratio\n";
    for (const auto& r : rows)
      out << fmt(r.log_size) << ',' << fmt(r.bound_per_vertex) << ',' << fmt(r.comparison->bl_bound_per_vertex) << ','
          << fmt(r.comparison->ratio) << '\n';
  }
  return 0;
}

inline int cmd_verify(const CliConfig& cfg, const ProductSpec& spec, std::ostream& out) {
  VerifyOptions opts;
  opts.threads = cfg.threads;
  opts.materialization_cap = materialization_cap(cfg);
  if (!cfg.sizes.empty()) opts.sizes = cfg.sizes;
  const auto rep = verify_theorem(spec, opts);
  if (cfg.output == Output::json) {
    out << json(rep).dump(2) << '\n';
  } else if (cfg.output == Output::csv) {
    out << "k,true_min_boundary,theorem_bound_total,gap,tight,valid\n";
    for (const auto& c : rep.checks)
      out << c.k << ',' << c.true_min_boundary << ',' << fmt(c.theorem_bound_total) << ',' << fmt(c.gap) << ','
          << (c.tight ? 1 : 0) << ',' << (c.valid ? 1 : 0) << '\n';
  } else {
    out << "verify " << rep.product << " (" << rep.vertex_count << " vertices)\n";
    for (const auto& c : rep.checks)
      out << "  k=" << c.k << "  truth=" << c.true_min_boundary << "  bound=" << fmt(c.theorem_bound_total)
          << "  gap=" << fmt(c.gap) << (c.tight ? "  tight" : "") << (c.valid ? "" : "  VIOLATION") << '\n';
    out << (rep.all_valid() ? "all sizes satisfy the bound\n" : "bound violated\n");
  }
  return rep.all_valid() ? 0 : 1;
}

inline int cmd_q71(const CliConfig& cfg, const ProductSpec& spec, std::ostream& out) {
  const Graph& g = require_single_factor(spec, "certify-q71");
  const IsoProfile p = profile(g, search_options(cfg));
  const auto w = q71_witness(g, p, build_minorant(p), cfg.power, materialization_cap(cfg));
  if (cfg.output == Output::json) {
    out << json(w).dump(2) << '\n';
  } else if (cfg.output == Output::csv) {
    out << "base_size,log_size,lower,upper,exact\n";
    for (int i = 0; i < 3; ++i)
      out << w.base_sizes[i] << ',' << fmt(w.log_sizes[i]) << ',' << fmt(w.lower[i]) << ',' << fmt(w.upper[i]) << ','
          << fmt(w.exact[i]) << '\n';
  } else {
    out << "i_a of " << g.label() << "^" << w.n << " is not affine in log a\n";
    for (int i = 0; i < 3; ++i)
      out << "  a=" << w.base_sizes[i] << "^" << w.n << "  exact per vertex " << fmt(w.exact[i]) << '\n';
    out << "  chord value " << fmt(w.interpolation) << ", residual " << fmt(w.residual) << '\n';
  }
  return 0;
}

inline int cmd_q72(const CliConfig& cfg, const ProductSpec& spec, std::ostream& out) {
  const Graph& g = require_single_factor(spec, "certify-q72");
  const IsoProfile p = profile(g, search_options(cfg));
  const auto summary = regular_summary(g, p);
  Q72Options opts;
  opts.eps_start = cfg.eps;
  opts.t_max = cfg.t_max;
  try {
    const auto c = q72_certificate(g, summary, p, opts);
    if (cfg.output == Output::json) {
      json j = c;
      j["status"] = "certificate";
      out << j.dump(2) << '\n';
    } else {
      out << "slabs are beaten in " << g.label() << "^" << (c.s + c.t) << ": s=" << c.s << " t=" << c.t
          << " eps=" << fmt(c.epsilon) << "  lhs=" << fmt(c.lhs) << " < rhs=" << fmt(c.rhs) << '\n';
    }
  } catch (const SlabOptimal& e) {
    if (cfg.output == Output::json) {
      out << json{{"status", "slab_optimal"}, {"y_G", e.y_g()}, {"d", summary.degree}, {"message", e.what()}}.dump(2)
          << '\n';
    } else {
      out << "y_G = d = " << summary.degree << ": slabs B_t are optimal, no certificate needed\n";
    }
  }
  return 0;
}

}  // namespace detail

/// Runs one CLI invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Edge-isoperimetric profiles and product-graph bounds", "isobound"};
  app.require_subcommand(1);
  std::string output = "human";
  app.add_option("--output,-o", output, "human | json | csv")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--threads", cfg.threads, "worker threads for subset searches")->check(CLI::PositiveNumber);
  app.add_option("--max-vertices", cfg.max_vertices, "materialization cap (overrides ISOBOUND_MAX_VERTICES)");

  auto spec_arg = [&](CLI::App* sub) { sub->add_option("spec", cfg.spec_words, "graph spec")->required(); };
  auto* profile = app.add_subcommand("profile", "exact isoperimetric profile");
  spec_arg(profile);
  auto* minorant = app.add_subcommand("minorant", "convex minorant breakpoints, k* and y_G for regular graphs");
  spec_arg(minorant);
  auto* bound = app.add_subcommand("bound", "product bound and applicable closed forms");
  spec_arg(bound);
  bound->add_option("--size", cfg.size, "set size |A|");
  bound->add_option("--log-size", cfg.log_size, "log|A|, e.g. 12*log(5)");
  auto* compare = app.add_subcommand("compare", "grid/torus bound against Bollobas-Leader, as CSV");
  spec_arg(compare);
  compare->add_option("--samples", cfg.samples, "number of log-size samples");
  auto* verify = app.add_subcommand("verify", "check the product bound against exhaustive search");
  spec_arg(verify);
  verify->add_option("--sizes", cfg.sizes, "only these set sizes")->delimiter(',');
  auto* q71 = app.add_subcommand("certify-q71", "witness that i_a of a power is not affine in log a");
  spec_arg(q71);
  q71->add_option("--power", cfg.power, "exponent n")->check(CLI::PositiveNumber);
  auto* q72 = app.add_subcommand("certify-q72", "Dirichlet certificate that slabs are not optimal");
  spec_arg(q72);
  q72->add_option("--eps", cfg.eps, "starting epsilon")->check(CLI::PositiveNumber);
  q72->add_option("--t-max", cfg.t_max, "largest t tried per epsilon")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  cfg.output = output == "json" ? Output::json : output == "csv" ? Output::csv : Output::human;
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    ProductSpec spec;
    try {
      spec = parse_graph_spec(cfg.spec());
    } catch (const std::exception& e) {
      err << "bad graph spec: " << e.what() << "\n  grammar: " << graph_spec_grammar << '\n';
      return 2;
    }
    if (cfg.subcommand == "profile") return detail::cmd_profile(cfg, spec, out);
    if (cfg.subcommand == "minorant") return detail::cmd_minorant(cfg, spec, out);
    if (cfg.subcommand == "bound") return detail::cmd_bound(cfg, spec, out);
    if (cfg.subcommand == "compare") return detail::cmd_compare(cfg, spec, out);
    if (cfg.subcommand == "verify") return detail::cmd_verify(cfg, spec, out);
    if (cfg.subcommand == "certify-q71") return detail::cmd_q71(cfg, spec, out);
    if (cfg.subcommand == "certify-q72") return detail::cmd_q72(cfg, spec, out);
  } catch (const SearchFailure& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace isobound::cli
