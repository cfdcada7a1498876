// Prints the hydrogen n = 2 fine-structure levels with the radiative
// coupling switched on, then the resulting 2s-2p splitting at both orders
// next to the measured value.

#include <cstdio>

#include "effdirac/effdirac.hpp"

int main() {
  using namespace effdirac;

  const PhysicalConstants c = default_constants();
  const BetheLogTable bethe = default_bethe_table();
  const double za = 1.0 * c.alpha;

  std::printf("hydrogen n = 2 levels, radiative coupling on\n\n");
  std::printf("%-10s %-22s %-14s %-12s\n", "state", "epsilon - 1",
              "coupling shift", "shift (MHz)");

  const int kappas[] = {-1, 1, -2};
  for (int kappa : kappas) {
    QuantumState st = make_state(2, kappa);
    CouplingFactors g = build_lamb_coupling(st, za, c, bethe, false);
    EnergyLevel level = solve_effective(st, za, g).level;
    std::printf("%-10s %-22.15g %-14.6g %-12.6g\n", render_label(st).c_str(),
                level.epsilon_minus_one(), level.beyond_dirac(),
                to_MHz(level.beyond_dirac(), c));
  }

  SplittingResult lead = lamb_shift(1, 2, LambOrder::zalpha4, c, bethe);
  SplittingResult full = lamb_shift(1, 2, LambOrder::zalpha5, c, bethe);
  std::printf("\n2s_{1/2} - 2p_{1/2} splitting\n");
  std::printf("  %-22s %10.4f MHz\n", order_label(LambOrder::zalpha4).c_str(),
              lead.value_MHz);
  std::printf("  %-22s %10.4f MHz\n", order_label(LambOrder::zalpha5).c_str(),
              full.value_MHz);
  std::printf("  %-22s %10.4f MHz\n", "measured", 1057.862);
  return 0;
}
