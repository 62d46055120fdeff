#pragma once

// Command-line front end. Needs the vendored CLI11.hpp and json.hpp on the
// include path (the chromest_vendor target in CMake).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chromest/errors.hpp"
#include "chromest/estimate.hpp"
#include "chromest/exact_oracle.hpp"
#include "chromest/exact_polynomial.hpp"
#include "chromest/graph.hpp"
#include "chromest/metrics.hpp"

namespace chromest::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, usage = 2, input_error = 3, cap_refusal = 4 };

/// Everything needed to repeat a run. Serialized into every report.
struct RunConfig {
  std::string command;
  // graph source: a file, or a generator spec
  std::string input;
  std::string family;
  int n = 0;
  double p = 0.5;
  std::string dims;
  std::uint64_t graph_seed = 1;
  // estimation
  std::string alg = "bc";
  std::string variant = "improved";
  std::string ordering = "peo";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double window = 0.1;
  double tolerance = 0.01;
  // output
  std::string format = "json";
  std::string out;
  std::string trace;
  // exact / compare
  std::string oracle;
  std::vector<double> x_grid{5, 10, 15, 20, 25, 30};
  OracleCaps caps;
};

inline Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  Json src;
  if (!c.input.empty()) {
    src["input"] = c.input;
  } else {
    src["family"] = c.family;
    if (c.n) src["n"] = c.n;
    if (c.family == "er") {
      src["p"] = c.p;
      src["graph_seed"] = c.graph_seed;
    }
    if (!c.dims.empty()) src["dims"] = c.dims;
  }
  j["graph"] = src;
  if (c.command == "estimate" || c.command == "compare") {
    j["alg"] = c.alg;
    j["variant"] = c.variant;
    j["ordering"] = c.ordering;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["window"] = c.window;
    j["tolerance"] = c.tolerance;
  }
  if (c.command == "exact" || c.command == "compare") {
    j["oracle"] = c.oracle;
    j["caps"] = {{"dc", c.caps.deletion_contraction},
                 {"interp", c.caps.interpolation},
                 {"nbc", c.caps.nbc},
                 {"partitions", c.caps.partitions}};
  }
  if (c.command == "exact" && c.oracle == "nbc") j["ordering"] = c.ordering;
  if (c.command == "compare") j["x_grid"] = c.x_grid;
  j["format"] = c.format;
  if (!c.trace.empty()) j["trace"] = c.trace;
  return j;
}

// ---------------------------------------------------------------------------
// helpers

namespace detail {

// Thrown for inputs that parse but make no sense (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<int> parse_dims(const std::string& dims) {
  std::vector<int> out;
  std::stringstream ss(dims);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || v < 1)
      throw UsageError("--dims expects AxBxC with positive integers, got '" + dims + "'");
    out.push_back(v);
  }
  if (out.size() != 3) throw UsageError("--dims expects AxBxC, got '" + dims + "'");
  return out;
}

inline Graph load_graph(const RunConfig& c, std::ostream& err) {
  if (!c.input.empty() && !c.family.empty()) throw UsageError("give either --input or --family, not both");
  if (!c.input.empty()) {
    ParsedGraph parsed = read_graph_file(c.input);
    if (parsed.duplicate_edges > 0)
      err << "warning: " << parsed.duplicate_edges << " repeated edge line(s) ignored\n";
    return std::move(parsed.graph);
  }
  if (c.family.empty()) throw UsageError("no graph: give --input PATH or --family NAME");
  if (c.family == "er") {
    if (c.n < 1) throw UsageError("--family er needs --n >= 1");
    return gen_er(c.n, c.p, c.graph_seed);
  }
  if (c.family == "kite") return gen_kite();
  if (c.family == "grid3d") {
    const auto d = parse_dims(c.dims);
    return gen_grid3d(d[0], d[1], d[2]);
  }
  const int sizes[1] = {c.n};
  return gen_named(c.family, sizes);
}

inline Json graph_json(const Graph& g) {
  return {{"n", g.vertex_count()}, {"m", g.edge_count()}, {"connected", is_connected(g)}};
}

/// Shortest round-trip fixed-notation decimal for |v| < 1e15, else nullopt.
inline std::optional<std::string> decimal_string(const LogNumber& v) {
  if (v.is_zero()) return "0";
  const double lg = v.log10_magnitude();
  if (lg >= 15.0 || lg < -300.0) return std::nullopt;
  // A double log carries about 15 significant digits; print no more.
  const int digits = std::clamp(14 - static_cast<int>(std::floor(lg)), 0, 330);
  char buf[400];
  const auto res = std::to_chars(buf, buf + sizeof buf, v.to_double(), std::chars_format::fixed, digits);
  std::string s(buf, res.ptr);
  if (s.find('.') != std::string::npos) {
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

inline Json log_value_json(const LogNumber& v) {
  Json j;
  j["sign"] = v.sign();
  j["log10_magnitude"] = v.is_zero() ? Json(nullptr) : Json(v.log10_magnitude());
  if (auto s = decimal_string(v)) j["decimal_string"] = *s;
  return j;
}

inline std::string csv_number(double d) {
  if (std::isnan(d)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

inline BcVariant parse_variant(const std::string& s) { return s == "plain" ? BcVariant::plain : BcVariant::improved; }

inline OrderingKind parse_ordering(const std::string& s) {
  if (s == "input") return OrderingKind::input;
  if (s == "random") return OrderingKind::random;
  return OrderingKind::peo;
}

inline EstimateOptions estimate_options(const RunConfig& c) {
  EstimateOptions o;
  o.samples = c.samples;
  o.seed = c.seed;
  o.workers = c.workers;
  o.variant = parse_variant(c.variant);
  o.ordering = parse_ordering(c.ordering);
  o.window_fraction = c.window;
  o.tolerance = c.tolerance;
  return o;
}

inline std::string coefficient_label(const EstimateReport& r, std::size_t i) {
  const int n = r.vertices;
  return r.algorithm == Algorithm::bc ? "b_" + std::to_string(i) : "p_" + std::to_string(n - static_cast<int>(i));
}

/// Power of x that coefficient i of the report multiplies (BC) or the
/// falling-factorial degree (FF).
inline int coefficient_degree(const EstimateReport& r, std::size_t i) { return r.vertices - static_cast<int>(i); }

inline Json estimate_json(const EstimateReport& r) {
  Json j;
  j["algorithm"] = std::string(to_string(r.algorithm));
  if (r.algorithm == Algorithm::bc) {
    j["variant"] = std::string(to_string(r.options.variant));
    j["ordering"] = std::string(to_string(r.options.ordering));
    j["edge_order"] = r.edge_order;
  }
  j["seed"] = r.options.seed;
  j["samples"] = r.samples;
  j["workers"] = r.options.workers;
  j["wall_ms"] = r.wall_ms;
  j["snapshot_every"] = r.snapshot_every;

  Json coeffs = Json::array();
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    const auto& c = r.coefficients[i];
    // BC means are magnitudes |b_i|; the signed value multiplies x^(n-i).
    const LogNumber value = r.algorithm == Algorithm::bc && i % 2 == 1 ? -c.mean : c.mean;
    Json e;
    e["name"] = coefficient_label(r, i);
    e[r.algorithm == Algorithm::bc ? "power" : "falling_degree"] = coefficient_degree(r, i);
    e.update(log_value_json(value));
    e["variance_log10"] = c.variance.is_zero() ? Json(nullptr) : Json(c.variance.log10_magnitude());
    if (auto s = decimal_string(c.variance)) e["variance"] = *s;
    if (c.variance_precision_loss) e["variance_precision_loss"] = true;
    e["converged"] = c.converged;
    coeffs.push_back(std::move(e));
  }
  j["coefficients"] = std::move(coeffs);

  if (r.algorithm == Algorithm::ff) {
    const auto conv = r.power_conversion();
    Json power = Json::array();
    for (std::size_t k = conv.coeffs.size(); k-- > 0;) {
      Json e;
      e["power"] = k;
      e.update(log_value_json(conv.coeffs[k]));
      if (conv.cancellation_warning[k]) e["cancellation_warning"] = true;
      power.push_back(std::move(e));
    }
    j["power_coefficients"] = std::move(power);
  }
  return j;
}

inline void write_estimate_csv(std::ostream& os, const EstimateReport& r) {
  os << "name,degree,sign,log10_magnitude,decimal,variance_log10,converged\n";
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    const auto& c = r.coefficients[i];
    const LogNumber value = r.algorithm == Algorithm::bc && i % 2 == 1 ? -c.mean : c.mean;
    os << coefficient_label(r, i) << ',' << coefficient_degree(r, i) << ',' << value.sign() << ','
       << (value.is_zero() ? "" : csv_number(value.log10_magnitude())) << ',' << decimal_string(value).value_or("")
       << ',' << (c.variance.is_zero() ? "" : csv_number(c.variance.log10_magnitude())) << ','
       << (c.converged ? "true" : "false") << '\n';
  }
}

inline void write_trace(const std::string& path, const EstimateReport& r) {
  std::ofstream os(path);
  if (!os) throw GraphError("cannot write trace file '" + path + "'");
  os << "samples";
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) os << ',' << coefficient_label(r, i);
  os << '\n';
  for (std::size_t s = 0; s < r.trace_counts.size(); ++s) {
    os << r.trace_counts[s];
    for (const auto& v : r.trace_means[s]) os << ',' << csv_number(v.to_double());
    os << '\n';
  }
}

inline ExactPolynomial exact_reference(const RunConfig& c, const Graph& g, const std::string& oracle) {
  if (oracle == "dc") return exact_deletion_contraction(g, c.caps.deletion_contraction);
  if (oracle == "interp") return exact_by_interpolation(g, c.caps.interpolation);
  if (oracle == "nbc") {
    const auto eo = make_edge_order(g, parse_ordering(c.ordering), c.seed);
    auto b = exact_nbc_counts(g, eo, c.caps.nbc);
    b.resize(static_cast<std::size_t>(g.vertex_count()));
    return polynomial_from_nbc_counts(b);
  }
  // formula
  const auto fam = formula_family_for(c.family);
  if (!c.input.empty() || !fam)
    throw CapExceeded("formula (no closed form for this graph source)", g.vertex_count(), 0);
  return formula_family(*fam, g.vertex_count());
}

// Output goes to --out when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw GraphError("cannot write '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// commands

inline int cmd_gen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Graph g = detail::load_graph(c, err);
  std::ostringstream summary;
  summary << "n=" << g.vertex_count() << " m=" << g.edge_count()
          << " connected=" << (is_connected(g) ? "true" : "false") << '\n';
  if (c.out.empty()) {
    write_edge_list(out, g);
    err << summary.str();
  } else {
    detail::Sink sink(c.out, out);
    write_edge_list(sink.stream(), g);
    out << summary.str();
  }
  return ok;
}

inline int cmd_estimate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Graph g = detail::load_graph(c, err);
  const Algorithm alg = c.alg == "ff" ? Algorithm::ff : Algorithm::bc;
  const EstimateReport r = estimate(alg, g, detail::estimate_options(c));
  if (!c.trace.empty()) detail::write_trace(c.trace, r);
  detail::Sink sink(c.out, out);
  if (c.format == "csv") {
    detail::write_estimate_csv(sink.stream(), r);
    return ok;
  }
  Json j;
  j["config"] = to_json(c);
  j["graph"] = detail::graph_json(g);
  j["estimate"] = detail::estimate_json(r);
  sink.stream() << j.dump(2) << '\n';
  return ok;
}

inline int cmd_exact(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.oracle == "formula" && c.input.empty() && c.family != "er" && !formula_family_for(c.family))
    throw CapExceeded("formula (no closed form for family '" + c.family + "')", c.n, 0);
  const Graph g = detail::load_graph(c, err);
  const ExactPolynomial poly = detail::exact_reference(c, g, c.oracle);
  const auto desc = poly.descending_strings();
  detail::Sink sink(c.out, out);
  if (c.format == "csv") {
    sink.stream() << "power,coefficient\n";
    for (std::size_t i = 0; i < desc.size(); ++i) sink.stream() << desc.size() - 1 - i << ',' << desc[i] << '\n';
    return ok;
  }
  Json j;
  j["config"] = to_json(c);
  j["graph"] = detail::graph_json(g);
  j["oracle"] = c.oracle;
  j["degree"] = poly.degree();
  j["coefficients"] = desc;
  j["chromatic_number"] = chromatic_number(poly);
  sink.stream() << j.dump(2) << '\n';
  return ok;
}

inline int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Graph g = detail::load_graph(c, err);
  RunConfig cfg = c;
  if (cfg.oracle.empty() || cfg.oracle == "auto")
    cfg.oracle = cfg.input.empty() && formula_family_for(cfg.family) ? "formula" : "dc";
  const ExactPolynomial truth = detail::exact_reference(cfg, g, cfg.oracle);

  const Algorithm alg = cfg.alg == "ff" ? Algorithm::ff : Algorithm::bc;
  const EstimateReport r = estimate(alg, g, detail::estimate_options(cfg));
  if (!cfg.trace.empty()) detail::write_trace(cfg.trace, r);

  const auto approx = r.power_coefficients();
  const auto truth_log = truth.to_log(approx.size());
  const ArcError arc = arc_error(std::span<const LogNumber>(truth_log), std::span<const LogNumber>(approx));
  const auto per = coefficient_rel_errors(truth_log, approx);

  std::vector<std::optional<double>> eval(cfg.x_grid.size());
  for (std::size_t k = 0; k < cfg.x_grid.size(); ++k) {
    try {
      eval[k] = rel_eval_error(truth, approx, cfg.x_grid[k]);
    } catch (const std::domain_error&) {
      // P_true(x) = 0: the relative error is undefined at this point
    }
  }

  detail::Sink sink(cfg.out, out);
  if (cfg.format == "csv") {
    auto& os = sink.stream();
    os << "metric,key,value\n";
    os << "arc_error,," << detail::csv_number(arc.value) << '\n';
    for (std::size_t k = 0; k < eval.size(); ++k)
      os << "rel_eval_error," << detail::csv_number(cfg.x_grid[k]) << ','
         << (eval[k] ? detail::csv_number(*eval[k]) : "") << '\n';
    for (std::size_t p = per.size(); p-- > 0;)
      os << "coefficient_rel_error," << p << ',' << detail::csv_number(per[p]) << '\n';
    return ok;
  }
  Json j;
  j["config"] = to_json(cfg);
  j["graph"] = detail::graph_json(g);
  j["estimate"] = detail::estimate_json(r);
  j["arc_error"] = {{"value", arc.value}, {"compared", arc.compared}, {"skipped_zero", arc.skipped}};
  Json ev = Json::array();
  for (std::size_t k = 0; k < eval.size(); ++k)
    ev.push_back({{"x", cfg.x_grid[k]}, {"rel_error", eval[k] ? Json(*eval[k]) : Json(nullptr)}});
  j["rel_eval_error"] = std::move(ev);
  Json coeffs = Json::array();
  for (std::size_t p = per.size(); p-- > 0;) {
    Json e;
    e["power"] = p;
    e["exact"] = truth[p].str();
    e["estimate"] = detail::log_value_json(approx[p]);
    e["rel_error"] = std::isnan(per[p]) ? Json(nullptr) : Json(per[p]);
    coeffs.push_back(std::move(e));
  }
  j["coefficients"] = std::move(coeffs);
  sink.stream() << j.dump(2) << '\n';
  return ok;
}

// ---------------------------------------------------------------------------
// entry point

/// Parses argv, runs the chosen subcommand and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Monte Carlo estimates of chromatic polynomial coefficients", "chromest"};
  app.require_subcommand(1);
  RunConfig c;

  const std::vector<std::string> families{"er", "kite", "cycle", "path", "wheel", "complete", "tree_star", "grid3d"};
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--input,-i", c.input, "edge-list file, or DIMACS when the name ends in .col")->check(CLI::ExistingFile);
    sub->add_option("--family", c.family, "generator family")->check(CLI::IsMember(families));
    sub->add_option("--n", c.n, "vertex count for the generator")->check(CLI::NonNegativeNumber);
    sub->add_option("--p", c.p, "edge probability (er)")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--dims", c.dims, "grid3d dimensions AxBxC");
    sub->add_option("--out,-o", c.out, "output file (default: standard output)");
  };
  auto add_estimator = [&](CLI::App* sub) {
    sub->add_option("--alg", c.alg, "estimator")->check(CLI::IsMember({"bc", "ff"}));
    sub->add_option("--variant", c.variant, "BC variant")->check(CLI::IsMember({"plain", "improved"}));
    sub->add_option("--ordering", c.ordering, "BC edge ordering")->check(CLI::IsMember({"peo", "input", "random"}));
    sub->add_option("--samples", c.samples, "number of samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "sampler seed");
    sub->add_option("--graph-seed", c.graph_seed, "seed for the er generator");
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--window", c.window, "trailing window fraction for the convergence check")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--tolerance", c.tolerance, "relative tolerance for the convergence check")
        ->check(CLI::PositiveNumber);
    sub->add_option("--trace", c.trace, "write the running means to this CSV file");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--cap-dc", c.caps.deletion_contraction, "vertex cap for deletion-contraction");
    sub->add_option("--cap-interp", c.caps.interpolation, "vertex cap for interpolation");
    sub->add_option("--cap-nbc", c.caps.nbc, "vertex cap for NBC enumeration");
  };

  auto* gen = app.add_subcommand("gen", "generate a graph and write it as an edge list");
  add_graph(gen);
  gen->add_option("--seed", c.graph_seed, "seed for the er generator");

  auto* est = app.add_subcommand("estimate", "estimate the coefficients of P(G, x)");
  add_graph(est);
  add_estimator(est);
  add_format(est);

  auto* exact = app.add_subcommand("exact", "compute P(G, x) exactly");
  add_graph(exact);
  add_format(exact);
  add_caps(exact);
  exact->add_option("--oracle", c.oracle, "exact method (default dc)")->check(CLI::IsMember({"dc", "interp", "nbc", "formula"}));
  exact->add_option("--ordering", c.ordering, "edge ordering for the nbc oracle")
      ->check(CLI::IsMember({"peo", "input", "random"}));
  exact->add_option("--seed", c.seed, "seed for the random edge ordering");
  exact->add_option("--graph-seed", c.graph_seed, "seed for the er generator");

  auto* cmp = app.add_subcommand("compare", "estimate and score against an exact reference");
  add_graph(cmp);
  add_estimator(cmp);
  add_format(cmp);
  add_caps(cmp);
  cmp->add_option("--oracle", c.oracle, "reference (auto: formula for named families with one, else dc)")
      ->check(CLI::IsMember({"auto", "dc", "interp", "nbc", "formula"}));
  cmp->add_option("--x-grid", c.x_grid, "evaluation points")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*gen) {
      c.command = "gen";
      return cmd_gen(c, out, err);
    }
    if (*est) {
      c.command = "estimate";
      return cmd_estimate(c, out, err);
    }
    if (*exact) {
      c.command = "exact";
      if (c.oracle.empty()) c.oracle = "dc";
      return cmd_exact(c, out, err);
    }
    c.command = "compare";
    return cmd_compare(c, out, err);
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return cap_refusal;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }
}

}  // namespace chromest::cli
