#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "chromest/accumulator.hpp"
#include "chromest/bc_sampler.hpp"
#include "chromest/errors.hpp"
#include "chromest/ff_sampler.hpp"
#include "chromest/graph.hpp"
#include "chromest/log_number.hpp"
#include "chromest/rng.hpp"

namespace chromest {

enum class Algorithm { bc, ff };

inline std::string_view to_string(Algorithm a) { return a == Algorithm::bc ? "bc" : "ff"; }

struct EstimateOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  BcVariant variant = BcVariant::improved;
  OrderingKind ordering = OrderingKind::peo;
  double window_fraction = 0.1;
  double tolerance = 0.01;
};

struct CoefficientEstimate {
  LogNumber mean;
  LogNumber variance;
  bool converged = false;
  bool variance_precision_loss = false;
};

/// Result of bc_estimate / ff_estimate.
///
/// For BC, coefficients[i] estimates |b_i|, the magnitude of the coefficient
/// of x^(n-i). For FF, coefficients[i] estimates p_{n-i}.
struct EstimateReport {
  Algorithm algorithm = Algorithm::bc;
  EstimateOptions options;
  int vertices = 0;
  int edges = 0;
  std::vector<int> edge_order;  // BC only: edge indices from smallest to largest
  std::vector<CoefficientEstimate> coefficients;
  std::uint64_t samples = 0;
  std::uint64_t snapshot_every = 0;
  /// Cumulative sample counts at each snapshot and, per snapshot, the running mean of every coefficient.
  std::vector<std::uint64_t> trace_counts;
  std::vector<std::vector<LogNumber>> trace_means;
  double wall_ms = 0.0;

  std::vector<LogNumber> means() const {
    std::vector<LogNumber> out;
    out.reserve(coefficients.size());
    for (const auto& c : coefficients) out.push_back(c.mean);
    return out;
  }

  /// Signed power-basis coefficients (index = power). FF estimates go through
  /// falling_to_power; see power_conversion() for its cancellation flags.
  std::vector<LogNumber> power_coefficients() const {
    if (algorithm == Algorithm::ff) return power_conversion().coeffs;
    const std::size_t n = coefficients.size();
    std::vector<LogNumber> out(n + 1);
    for (std::size_t i = 0; i < n; ++i) out[n - i] = i % 2 == 0 ? coefficients[i].mean : -coefficients[i].mean;
    return out;
  }

  /// FF only: falling-factorial means converted to the power basis.
  PowerConversion power_conversion(double warn_factor = 1e6) const {
    if (algorithm != Algorithm::ff) throw std::logic_error("power_conversion: not an FF report");
    const std::size_t n = coefficients.size();
    std::vector<LogNumber> p(n);  // p[t-1] = p_t
    for (std::size_t i = 0; i < n; ++i) p[n - 1 - i] = coefficients[i].mean;
    return falling_to_power(std::span<const LogNumber>(p), warn_factor);
  }
};

namespace detail {

inline std::uint64_t snapshot_cadence(std::uint64_t samples) { return std::max<std::uint64_t>(1, samples / 1000); }

// Splits `samples` over workers, runs draw(worker_rng, accumulators) in each,
// and merges the per-worker accumulators in worker order.
template <class MakeDraw>
std::vector<SampleAccumulator> run_workers(std::size_t width, const EstimateOptions& opt, MakeDraw make_draw) {
  if (opt.samples == 0) throw std::invalid_argument("estimate: need at least one sample");
  const unsigned workers = std::max(1u, opt.workers);
  const std::uint64_t cadence = snapshot_cadence(opt.samples);
  std::vector<std::vector<SampleAccumulator>> per_worker(workers, std::vector<SampleAccumulator>(width, SampleAccumulator(cadence)));
  std::vector<std::exception_ptr> errors(workers);

  auto body = [&](unsigned w) {
    try {
      const std::uint64_t count = opt.samples / workers + (w < opt.samples % workers ? 1 : 0);
      Rng rng = Rng::for_stream(opt.seed, w);
      auto draw = make_draw();
      auto& acc = per_worker[w];
      for (std::uint64_t s = 0; s < count; ++s) {
        const std::vector<LogNumber> values = draw(rng);
        for (std::size_t i = 0; i < width; ++i) acc[i].push(values[i]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(body, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<SampleAccumulator> merged = std::move(per_worker[0]);
  for (unsigned w = 1; w < workers; ++w)
    for (std::size_t i = 0; i < width; ++i) merged[i].merge(per_worker[w][i]);
  return merged;
}

inline void fill_report(EstimateReport& r, const std::vector<SampleAccumulator>& acc) {
  const std::size_t width = acc.size();
  r.coefficients.resize(width);
  for (std::size_t i = 0; i < width; ++i) {
    const auto var = acc[i].variance();
    const auto hist = acc[i].mean_history();
    r.coefficients[i] = {acc[i].mean(), var.value,
                         convergence_check(hist, r.options.window_fraction, r.options.tolerance), var.precision_loss};
  }
  r.samples = width ? acc[0].count() : 0;
  r.snapshot_every = width ? acc[0].snapshot_every() : 0;
  if (width) {
    const auto& h0 = acc[0].history();
    r.trace_counts.clear();
    for (const auto& s : h0) r.trace_counts.push_back(s.count);
    r.trace_means.assign(h0.size(), std::vector<LogNumber>(width));
    for (std::size_t i = 0; i < width; ++i) {
      const auto& h = acc[i].history();
      for (std::size_t j = 0; j < h.size(); ++j) r.trace_means[j][i] = h[j].mean();
    }
  }
}

}  // namespace detail

/// Averages BC samples of the connected graph g.
///
/// Worker w draws its share of the samples from Rng::for_stream(seed, w);
/// accumulators are merged in worker order, so the report is a function of
/// (graph, options) alone.
inline EstimateReport bc_estimate(const Graph& g, const EstimateOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (g.vertex_count() < 1) throw GraphError("estimate: empty graph");
  if (!is_connected(g)) throw GraphError("estimate: graph is not connected");
  const EdgeOrdering eo = make_edge_order(g, opt.ordering, opt.seed);

  EstimateReport r;
  r.algorithm = Algorithm::bc;
  r.options = opt;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  r.edge_order = eo.order();

  const auto width = static_cast<std::size_t>(g.vertex_count());
  auto acc = detail::run_workers(width, opt, [&] {
    return [sampler = BcSampler(g, eo, opt.variant)](Rng& rng) mutable { return sampler.sample(rng).b; };
  });
  detail::fill_report(r, acc);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Averages FF samples; levels a walk never reached contribute zeros.
inline EstimateReport ff_estimate(const Graph& g, const EstimateOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (g.vertex_count() < 1) throw GraphError("estimate: empty graph");

  EstimateReport r;
  r.algorithm = Algorithm::ff;
  r.options = opt;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();

  const auto width = static_cast<std::size_t>(g.vertex_count());
  auto acc = detail::run_workers(width, opt, [&] {
    return [sampler = FfSampler(g)](Rng& rng) { return sampler.sample(rng).p; };
  });
  detail::fill_report(r, acc);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline EstimateReport estimate(Algorithm alg, const Graph& g, const EstimateOptions& opt) {
  return alg == Algorithm::bc ? bc_estimate(g, opt) : ff_estimate(g, opt);
}

}  // namespace chromest
