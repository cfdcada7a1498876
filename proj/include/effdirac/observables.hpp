#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "effdirac/constants.hpp"
#include "effdirac/coupling.hpp"
#include "effdirac/dirac.hpp"
#include "effdirac/errors.hpp"
#include "effdirac/solver.hpp"
#include "effdirac/states.hpp"

namespace effdirac {

inline double to_MHz(double delta_epsilon, const PhysicalConstants& c) {
  return delta_epsilon * c.mc2_MHz();
}

enum class LambOrder { zalpha4, zalpha5 };

inline std::string order_label(LambOrder o) {
  return o == LambOrder::zalpha4 ? "alpha(Zalpha)^4" : "alpha(Zalpha)^5";
}

enum class SplitKind { lamb, hyperfine };

struct SplittingResult {
  int Z = 1;
  int n = 2;
  SplitKind kind = SplitKind::lamb;
  std::string order_label;
  double value_MHz = 0.0;
  EnergyLevel upper;
  EnergyLevel lower;
  bool z_extrapolated = false;
};

// nS_{1/2} - nP_{1/2} splitting. Both members share the same exact Coulomb
// energy (same n, |kappa|), so the splitting is the difference of the
// beyond_dirac terms alone; the shared part cancels identically instead of
// numerically. The zalpha5 order multiplies every lambda by (1 + Zalpha)
// before building the couplings.
inline SplittingResult lamb_shift(int Z, int n, LambOrder order,
                                  const PhysicalConstants& c,
                                  const BetheLogTable& bethe) {
  if (n < 2)
    throw DomainError("lamb_shift needs n >= 2 (there is no nP_1/2 below n=2)");
  if (Z < 1) throw DomainError("lamb_shift: Z >= 1");
  const double za = Z * c.alpha;
  const bool binding = (order == LambOrder::zalpha5);

  QuantumState s_state = make_state(n, -1);
  QuantumState p_state = make_state(n, +1);

  auto level_of = [&](const QuantumState& st) {
    CouplingFactors g = build_lamb_coupling(st, za, c, bethe, binding);
    return solve_effective(st, za, g).level;
  };
  SplittingResult out;
  out.Z = Z;
  out.n = n;
  out.kind = SplitKind::lamb;
  out.order_label = order_label(order);
  out.upper = level_of(s_state);
  out.lower = level_of(p_state);
  out.value_MHz = to_MHz(out.upper.beyond_dirac() - out.lower.beyond_dirac(), c);
  return out;
}

// nS_{1/2} triplet-singlet splitting. Z != 1 is an extrapolation (the
// magnetic coupling is fitted to the proton); the flag records that.
inline SplittingResult hyperfine_splitting(int Z, int n,
                                           const PhysicalConstants& c,
                                           bool with_corrections,
                                           double user_delta = 0.0) {
  if (Z < 1 || n < 1) throw DomainError("hyperfine_splitting: Z >= 1, n >= 1");
  const double za = Z * c.alpha;

  auto level_of = [&](int S) {
    QuantumState st = make_state(n, -1, S);
    CouplingFactors g =
        build_hyperfine_coupling(st, za, c, with_corrections, user_delta);
    return solve_effective(st, za, g).level;
  };
  SplittingResult out;
  out.Z = Z;
  out.n = n;
  out.kind = SplitKind::hyperfine;
  out.order_label = with_corrections ? "alpha(Zalpha)^4+corrections"
                                     : "alpha(Zalpha)^4";
  out.upper = level_of(1);
  out.lower = level_of(0);
  out.value_MHz = to_MHz(out.upper.beyond_dirac() - out.lower.beyond_dirac(), c);
  out.z_extrapolated = (Z != 1);
  return out;
}

struct CombinedLevel {
  EnergyLevel level;
  bool z_extrapolated = false;
};

// One level with radiative and magnetic couplings active together. The
// breakdown separates the pieces by solving three times:
//   dirac       exact Coulomb
//   lamb        radiative coupling alone
//   hyperfine   magnetic coupling alone
//   cross       what the joint solve adds beyond the sum of the two
inline CombinedLevel combined_level(int Z, const QuantumState& st,
                                    const PhysicalConstants& c,
                                    const BetheLogTable& bethe) {
  if (Z < 1) throw DomainError("combined_level: Z >= 1");
  if (!st.S) throw DomainError("combined_level needs a state with S set");
  const double za = Z * c.alpha;

  CouplingFactors g_lamb = build_lamb_coupling(st, za, c, bethe, false);
  CouplingFactors g_hyp = build_hyperfine_coupling(st, za, c, false, 0.0);
  CouplingFactors g_both = combine_couplings(g_lamb, g_hyp);

  double d_lamb = solve_effective(st, za, g_lamb).level.beyond_dirac();
  double d_hyp = solve_effective(st, za, g_hyp).level.beyond_dirac();
  auto joint = solve_effective(st, za, g_both);

  CombinedLevel out;
  out.level = joint.level;
  double d_joint = joint.level.beyond_dirac();
  double dirac_term = joint.level.term("dirac").value_or(0.0);
  out.level.breakdown = {
      {"dirac", dirac_term},
      {"lamb", d_lamb},
      {"hyperfine", d_hyp},
      {"cross", d_joint - d_lamb - d_hyp},
  };
  out.z_extrapolated = (Z != 1);
  return out;
}

struct ComparisonRow {
  SplittingResult result;
  std::optional<ReferenceRecord> reference;
  std::optional<double> discrepancy_percent;
};

inline Quantity quantity_of(SplitKind k) {
  return k == SplitKind::lamb ? Quantity::lamb_shift
                              : Quantity::hyperfine_splitting;
}

// Joins computed splittings against reference records on (Z, n, quantity).
// Every result yields at least one row; a result matching several references
// yields one row per reference. Inputs are untouched.
inline std::vector<ComparisonRow> compare(
    const std::vector<SplittingResult>& results,
    const std::vector<ReferenceRecord>& refs) {
  std::vector<ComparisonRow> rows;
  rows.reserve(results.size());
  for (const auto& r : results) {
    bool matched = false;
    for (const auto& ref : refs) {
      if (ref.Z == r.Z && ref.n == r.n && ref.quantity == quantity_of(r.kind)) {
        ComparisonRow row;
        row.result = r;
        row.reference = ref;
        if (ref.value_MHz != 0.0)
          row.discrepancy_percent =
              100.0 * std::abs(r.value_MHz - ref.value_MHz) /
              std::abs(ref.value_MHz);
        rows.push_back(std::move(row));
        matched = true;
      }
    }
    if (!matched) rows.push_back(ComparisonRow{r, std::nullopt, std::nullopt});
  }
  return rows;
}

}  // namespace effdirac
