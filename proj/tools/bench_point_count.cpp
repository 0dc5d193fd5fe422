// Times the parallel projective point counter against the serial reference
// on the registered two-quadrics curve and checks they agree.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "mcpower/arith.hpp"

using namespace mcpower;

namespace {

template <typename F>
double time_ms(F&& f, long& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long pmax = argc > 1 ? std::atol(argv[1]) : 101;
  const ProjectiveSystem C = two_quadrics_curve();
  std::printf("%6s %10s %12s %12s %8s\n", "p", "count", "serial(ms)",
              "parallel(ms)", "speedup");
  double ser_total = 0, par_total = 0;
  for (long p = 2; p <= pmax; ++p) {
    bool prime = p >= 2;
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    long ns = 0, np = 0;
    const double ts = time_ms([&] { return count_projective_points_serial(C, p); }, ns);
    const double tp = time_ms([&] { return count_projective_points(C, p); }, np);
    if (ns != np) {
      std::fprintf(stderr, "MISMATCH at p=%ld: serial %ld parallel %ld\n", p,
                   ns, np);
      return 1;
    }
    ser_total += ts;
    par_total += tp;
    std::printf("%6ld %10ld %12.2f %12.2f %8.2f\n", p, ns, ts, tp,
                tp > 0 ? ts / tp : 0.0);
  }
  std::printf("totals: serial %.1f ms, parallel %.1f ms\n", ser_total,
              par_total);
  return 0;
}
