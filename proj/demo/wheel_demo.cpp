// Estimates the chromatic polynomial of the wheel W_n with both samplers and
// prints each estimate next to the closed form.
//
//   chromest_demo [n] [samples]

#include <cstdio>
#include <cstdlib>

#include "chromest/estimate.hpp"
#include "chromest/exact_oracle.hpp"
#include "chromest/metrics.hpp"

int main(int argc, char** argv) {
  using namespace chromest;
  const int n = argc > 1 ? std::atoi(argv[1]) : 12;
  const auto samples = static_cast<std::uint64_t>(argc > 2 ? std::atoll(argv[2]) : 20000);
  if (n < 4 || samples < 1) {
    std::fprintf(stderr, "usage: chromest_demo [n >= 4] [samples >= 1]\n");
    return 2;
  }

  const Graph g = gen_wheel(n);
  const ExactPolynomial truth = formula_family(FormulaFamily::wheel, n);
  EstimateOptions opt;
  opt.samples = samples;

  const auto bc = bc_estimate(g, opt);
  const auto ff = ff_estimate(g, opt);
  const auto bc_power = bc.power_coefficients();
  const auto ff_power = ff.power_coefficients();

  std::printf("W_%d: %d vertices, %d edges, %llu samples\n\n", n, g.vertex_count(), g.edge_count(),
              static_cast<unsigned long long>(samples));
  std::printf("%6s %24s %24s %24s\n", "power", "exact", "bc", "ff");
  for (int k = n; k >= 0; --k) {
    const auto i = static_cast<std::size_t>(k);
    std::printf("%6d %24s %24.6g %24.6g\n", k, truth[i].str().c_str(), bc_power[i].to_double(), ff_power[i].to_double());
  }
  std::printf("\nARC error: bc %.5f, ff %.5f\n", arc_error(truth, bc_power).value, arc_error(truth, ff_power).value);
  std::printf("time: bc %.1f ms, ff %.1f ms\n", bc.wall_ms, ff.wall_ms);
  return 0;
}
