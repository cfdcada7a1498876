// Momentum-space profile of the effective Coulomb amplitude: the bare
// A0/e = Z/q line next to the radiative correction |lambda| Z/q for s
// states of increasing n. The correction is a constant fraction of the
// bare amplitude at every q and barely moves with n, so the three curves
// nearly coincide.

#include <cmath>
#include <cstdio>

#include "effdirac/effdirac.hpp"

int main() {
  using namespace effdirac;

  const PhysicalConstants c = default_constants();
  const BetheLogTable bethe = default_bethe_table();
  const double za = 1.0 * c.alpha;

  std::printf("%-4s %-8s %-14s %-14s %-10s\n", "n", "q", "A0/e",
              "correction/e", "ratio");
  const int shells[] = {4, 8, 12};
  for (int n : shells) {
    double lambda = lambda_lamb(n, -1, 0, c.alpha, za, bethe).value;
    for (double q : {0.5, 1.0, 5.0, 20.0}) {
      double bare = 1.0 / q;
      double corr = std::fabs(lambda) / q;
      std::printf("%-4d %-8.3g %-14.6g %-14.6g %-10.4g\n", n, q, bare, corr,
                  corr / bare);
    }
  }
  return 0;
}
