#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "effdirac/constants.hpp"
#include "effdirac/dirac.hpp"
#include "effdirac/errors.hpp"
#include "effdirac/states.hpp"

namespace effdirac {

enum class LambdaKind { lamb, hyperfine };

// Which one-shot multiplicative corrections have been applied to a lambda.
struct OrderFlags {
  bool binding_zalpha = false;
  bool breit = false;
  bool user_delta = false;

  bool operator==(const OrderFlags&) const = default;
};

// One interaction strength lambda_{n kappa l}. The radiative (Lamb) kind and
// the magnetic (hyperfine) kind share this carrier; corrections are tracked
// so they cannot be applied twice.
struct LambdaFactor {
  double value = 0.0;
  LambdaKind kind = LambdaKind::lamb;
  OrderFlags flags;
};

// Radiative coupling strength
//   lambda = (8/3pi) alpha [ (L_{n0} + 19/30 - 2 ln(Z alpha)) delta_{l,0}
//                          + (3/8) / (kappa (2|kappa|-1)) (1 - delta_{l,0}) ].
// The Bethe table is consulted only on the l = 0 branch.
inline LambdaFactor lambda_lamb(int n, int kappa, int l, double alpha,
                                double z_alpha, const BetheLogTable& bethe) {
  if (!(z_alpha > 0.0))
    throw DomainError("lambda_lamb needs Z alpha > 0 (logarithmic term)");
  if (kappa == 0) throw DomainError("lambda_lamb: kappa must be nonzero");
  double bracket;
  if (l == 0) {
    double L = bethe.require(n, 0);
    bracket = L + 19.0 / 30.0 - 2.0 * std::log(z_alpha);
  } else {
    bracket = (3.0 / 8.0) / (kappa * (2.0 * std::abs(kappa) - 1.0));
  }
  double prefactor = 8.0 / (3.0 * std::numbers::pi) * alpha;
  return {prefactor * bracket, LambdaKind::lamb, {}};
}

// Magnetic coupling strength
//   lambda = (2/3) g_p (m/M_p) (delta_{S,1} - 3 delta_{S,0}) delta_{l,0}.
inline LambdaFactor lambda_hyperfine(int kappa, int l, int S,
                                     const PhysicalConstants& c) {
  (void)kappa;  // the strength is l- and S-gated only
  if (S != 0 && S != 1)
    throw DomainError("lambda_hyperfine: S must be 0 or 1, got " +
                      std::to_string(S));
  if (l != 0) return {0.0, LambdaKind::hyperfine, {}};
  double spin_factor = (S == 1) ? 1.0 : -3.0;
  return {(2.0 / 3.0) * c.g_p * c.mass_ratio * spin_factor,
          LambdaKind::hyperfine,
          {}};
}

// Second-order binding correction for the radiative kind:
// lambda -> (1 + Z alpha) lambda.
inline LambdaFactor apply_binding_correction(LambdaFactor lam, double z_alpha) {
  if (lam.kind != LambdaKind::lamb)
    throw DomainError("binding correction applies to the radiative kind only");
  if (lam.flags.binding_zalpha)
    throw IdempotencyError("binding correction already applied");
  lam.value *= 1.0 + z_alpha;
  lam.flags.binding_zalpha = true;
  return lam;
}

// Higher-order hyperfine corrections: lambda -> (1 + (3/2)(Z alpha)^2 +
// user_delta) lambda. user_delta is a config knob standing in for the
// radiative/recoil/structure pieces not modeled here.
inline LambdaFactor apply_hyperfine_corrections(LambdaFactor lam,
                                                double z_alpha,
                                                double user_delta) {
  if (lam.kind != LambdaKind::hyperfine)
    throw DomainError("hyperfine corrections apply to the hyperfine kind only");
  if (lam.flags.breit)
    throw IdempotencyError("hyperfine corrections already applied");
  lam.value *= 1.0 + 1.5 * z_alpha * z_alpha + user_delta;
  lam.flags.breit = true;
  if (user_delta != 0.0) lam.flags.user_delta = true;
  return lam;
}

// g = 1 - lambda f per component, lambda chosen by each component's l.
// Stored as deviations delta = lambda f (one rounding, no cancellation).
inline CouplingFactors build_coupling(const QuantumState& st,
                                      const LambdaFactor& lam_for_l_a,
                                      const LambdaFactor& lam_for_l_b,
                                      double f) {
  (void)st;
  if (!(f >= 0.0 && f < 1.0))
    throw DomainError("build_coupling needs the nonlinear factor in [0, 1)");
  return {lam_for_l_a.value * f, lam_for_l_b.value * f};
}

// g = g1 + g2 - 1 componentwise; in deviation form the deviations add, which
// makes combine(g, identity) == g exact.
inline CouplingFactors combine_couplings(const CouplingFactors& c1,
                                         const CouplingFactors& c2) {
  return {c1.delta_a + c2.delta_a, c1.delta_b + c2.delta_b};
}

// Composition helpers used by the observables layer and the CLI: build the
// full coupling for a state at Z alpha in one call.

inline CouplingFactors build_lamb_coupling(const QuantumState& st,
                                           double z_alpha,
                                           const PhysicalConstants& c,
                                           const BetheLogTable& bethe,
                                           bool with_binding) {
  LambdaFactor la = lambda_lamb(st.n, st.kappa, st.l_a, c.alpha, z_alpha, bethe);
  LambdaFactor lb = lambda_lamb(st.n, st.kappa, st.l_b, c.alpha, z_alpha, bethe);
  if (with_binding) {
    la = apply_binding_correction(la, z_alpha);
    lb = apply_binding_correction(lb, z_alpha);
  }
  double f = nonlinear_factor(st, z_alpha);
  return build_coupling(st, la, lb, f);
}

inline CouplingFactors build_hyperfine_coupling(const QuantumState& st,
                                                double z_alpha,
                                                const PhysicalConstants& c,
                                                bool with_corrections,
                                                double user_delta) {
  if (!st.S)
    throw DomainError("hyperfine coupling needs a state with S set");
  LambdaFactor la = lambda_hyperfine(st.kappa, st.l_a, *st.S, c);
  LambdaFactor lb = lambda_hyperfine(st.kappa, st.l_b, *st.S, c);
  if (with_corrections) {
    la = apply_hyperfine_corrections(la, z_alpha, user_delta);
    lb = apply_hyperfine_corrections(lb, z_alpha, user_delta);
  }
  double f = nonlinear_factor(st, z_alpha);
  return build_coupling(st, la, lb, f);
}

inline CouplingFactors build_combined_coupling(const QuantumState& st,
                                               double z_alpha,
                                               const PhysicalConstants& c,
                                               const BetheLogTable& bethe,
                                               bool with_binding = false,
                                               bool with_hyp_corrections = false,
                                               double user_delta = 0.0) {
  return combine_couplings(
      build_lamb_coupling(st, z_alpha, c, bethe, with_binding),
      build_hyperfine_coupling(st, z_alpha, c, with_hyp_corrections,
                               user_delta));
}

}  // namespace effdirac
