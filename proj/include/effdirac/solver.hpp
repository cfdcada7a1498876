#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effdirac/constants.hpp"
#include "effdirac/coupling.hpp"
#include "effdirac/dirac.hpp"
#include "effdirac/errors.hpp"
#include "effdirac/numerics.hpp"
#include "effdirac/states.hpp"

namespace effdirac {

enum class Model { dirac, lamb, hyperfine, combined };

inline std::string to_string(Model m) {
  switch (m) {
    case Model::dirac: return "dirac";
    case Model::lamb: return "lamb";
    case Model::hyperfine: return "hyperfine";
    case Model::combined: return "combined";
  }
  return "?";
}

struct BreakdownTerm {
  std::string label;
  double value = 0.0;
};

// One solved or expanded level. epsilon = E/mc^2. The breakdown is an ordered
// set of labeled contributions to epsilon - 1; their sum plus one reproduces
// epsilon up to the truncation of the highest labeled order (exactly, for
// levels produced by this library, since the remainder is itself a term).
struct EnergyLevel {
  double epsilon = 1.0;
  QuantumState state;
  CouplingFactors coupling;
  std::vector<BreakdownTerm> breakdown;

  double epsilon_minus_one() const {
    double sum = 0.0;
    for (const auto& t : breakdown) sum += t.value;
    return sum;
  }

  std::optional<double> term(const std::string& label) const {
    for (const auto& t : breakdown)
      if (t.label == label) return t.value;
    return std::nullopt;
  }

  // Everything the coupling added on top of the exact Coulomb term.
  // Splittings between levels sharing (n, |kappa|) are differences of this
  // sum alone: the small terms are added on their own, keeping the
  // dirac-scale ulp out of the result entirely.
  double beyond_dirac() const {
    double sum = 0.0;
    for (const auto& t : breakdown)
      if (t.label != "dirac") sum += t.value;
    return sum;
  }
};

// Numerical cross-checks recorded by every solve.
struct SolveReport {
  double epsilon_closed_form = 0.0;
  double epsilon_root_found = 0.0;
  double residual = 0.0;  // relative residual of the quantization condition
  int iterations = 0;     // root-finder iterations
  bool nearby_roots = false;  // the two quadratic roots are within 1e-6
};

struct SolveOutcome {
  EnergyLevel level;
  SolveReport report;
};

namespace kernel {

template <class Real>
struct SolveCore {
  Real epsilon_minus_one;  // u = epsilon - 1 of the selected root
  Real delta_vs_dirac;     // epsilon - epsilon(g = I)
  Real residual;           // relative residual of the unsquared condition
  Real root_found_minus_one;
  int iterations;
  bool nearby_roots;
};

// Solves 2(s+n') sqrt(1 - eps^2) = Zalpha (g_a (1+eps) - g_b (1-eps)) for the
// bound root. Squaring gives (A^2+Q^2) eps^2 + 2PQ eps + (P^2-A^2) = 0 with
//   A = 2(s+n'),  P = Zalpha (g_a - g_b),  Q = Zalpha (g_a + g_b),
// whose physical root (the one continuous in g around g = I) is
//   eps = (-PQ + A sqrt(A^2+Q^2-P^2)) / (A^2+Q^2).
// That expression loses everything interesting to rounding since eps is 1 to
// ten digits, so eps - 1 is carried instead, in the equivalent
// cancellation-free form
//   eps - 1 = -(Q+P)(A P + Q sqrt(D)) / ((sqrt(D)+A)(A^2+Q^2)),  D = A^2+Q^2-P^2,
// which keeps full relative precision on the physical content. The root is
// then verified against the unsquared condition (right side must be
// positive) and against an independent bracketed root finder.
template <class Real>
SolveCore<Real> solve_core(int n, int kappa, Real za, Real delta_a,
                           Real delta_b) {
  const Real one = Real(1);
  const Real g_a = one - delta_a;
  const Real g_b = one - delta_b;
  const Real s = indicial_exponent<Real>(kappa, za, g_a, g_b);
  const Real A = Real(2) * (s + Real(n - std::abs(kappa)));
  const Real P = za * (delta_b - delta_a);  // = za (g_a - g_b), exactly
  const Real Q = za * (g_a + g_b);
  const Real A2 = A * A, Q2 = Q * Q, P2 = P * P;
  const Real D = A2 + Q2 - P2;
  if (!(D > Real(0)))
    throw NumericalError("quantization condition has no real root");
  const Real sqrtD = std::sqrt(D);

  const Real u_plus =
      -(Q + P) * (A * P + Q * sqrtD) / ((sqrtD + A) * (A2 + Q2));
  const Real eps_minus = (-P * Q - A * sqrtD) / (A2 + Q2);

  SolveCore<Real> out;
  out.nearby_roots = std::abs((one + u_plus) - eps_minus) < Real(1e-6);

  // root selection: continuous in g around the identity, i.e. nearest the
  // exact Coulomb value
  const Real u_dirac = sommerfeld_epsilon_minus_one<Real>(n, kappa, za);
  if (std::abs(eps_minus - (one + u_dirac)) < std::abs(u_plus - u_dirac)) {
    // the mirrored root would be selected; it never satisfies the unsquared
    // condition (its right side is negative for bound couplings)
    throw NumericalError(
        "no quadratic root satisfies the unsquared quantization condition");
  }

  out.epsilon_minus_one = u_plus;
  out.delta_vs_dirac = u_plus - u_dirac;

  // unsquared verification at u = eps - 1:
  //   lhs = A sqrt((-u)(2+u)),  rhs = za (2 + 2u - delta_a (2+u) - delta_b u)
  auto lhs_rhs = [&](Real u) {
    Real lhs = A * std::sqrt((-u) * (Real(2) + u));
    Real rhs = za * (Real(2) + Real(2) * u - delta_a * (Real(2) + u) -
                     delta_b * u);
    return std::pair<Real, Real>{lhs, rhs};
  };
  auto [lhs, rhs] = lhs_rhs(u_plus);
  if (!(rhs > Real(0)))
    throw NumericalError(
        "selected root violates the unsquared quantization condition");
  out.residual = (lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
  if (!(std::abs(out.residual) < Real(1e-12)))
    throw NumericalError("quantization-condition residual above 1e-12");

  // independent bracketed root finder on the unsquared condition
  auto h = [&](Real u) {
    auto [l, r] = lhs_rhs(u);
    return l - r;
  };
  Real width = std::abs(u_plus) * Real(1e-6) + Real(1e-25);
  Real lo = u_plus - width, hi = u_plus + width;
  for (int grow = 0; grow < 80 && !(h(lo) > Real(0) && h(hi) < Real(0));
       ++grow) {
    width *= Real(8);
    lo = std::max(u_plus - width, Real(-1) + Real(1e-30));
    hi = std::min(u_plus + width, Real(0) - Real(1e-300));
  }
  auto root = numerics::find_root_bracketed<Real>(
      h, lo, hi, std::abs(u_plus) * Real(1e-16) + Real(1e-30));
  out.root_found_minus_one = root.root;
  out.iterations = root.iterations;
  if (!(std::abs(root.root - u_plus) < Real(1e-12)))
    throw NumericalError(
        "closed-form and root-finder eigenvalues disagree beyond 1e-12");
  return out;
}

}  // namespace kernel

// Full solve, extended precision inside, doubles outside. The level's
// breakdown carries the exact decomposition
//   ("dirac", eps(g=I) - 1) and ("beyond_dirac", eps - eps(g=I)).
inline SolveOutcome solve_effective(const QuantumState& st, double z_alpha,
                                    const CouplingFactors& g) {
  using Real = long double;
  auto core = kernel::solve_core<Real>(st.n, st.kappa, Real(z_alpha),
                                       Real(g.delta_a), Real(g.delta_b));
  Real u_dirac =
      kernel::sommerfeld_epsilon_minus_one<Real>(st.n, st.kappa, Real(z_alpha));

  SolveOutcome out;
  out.level.epsilon = double(Real(1) + core.epsilon_minus_one);
  out.level.state = st;
  out.level.coupling = g;
  out.level.breakdown = {
      {"dirac", double(u_dirac)},
      {"beyond_dirac", double(core.delta_vs_dirac)},
  };
  out.report.epsilon_closed_form = out.level.epsilon;
  out.report.epsilon_root_found = double(Real(1) + core.root_found_minus_one);
  out.report.residual = double(core.residual);
  out.report.iterations = core.iterations;
  out.report.nearby_roots = core.nearby_roots;
  return out;
}

// Radial problem at a solved level. Builds the mass terms from the level's
// epsilon - 1 (a sum of small breakdown terms), so M2 = 1 - epsilon keeps
// full precision; forming it from the rounded epsilon itself loses ~10
// digits at small Z alpha, enough to push the termination residual of an
// honest eigenvalue past its gate.
inline RadialProblem radial_problem_at(const EnergyLevel& level,
                                       double z_alpha) {
  const double u = level.epsilon_minus_one();
  if (!(u > -1.0 && u < 0.0))
    throw DomainError("radial problem needs a bound level, 0 < epsilon < 1");
  RadialProblem p;
  p.state = level.state;
  p.z_alpha = z_alpha;
  p.g = level.coupling;
  p.epsilon = 1.0 + u;
  p.m1 = 2.0 + u;
  p.m2 = -u;
  p.s_exponent = indicial_exponent(level.state.kappa, z_alpha, level.coupling);
  return p;
}

// Evaluates the printed order-by-order expansions, term by term, with
// x = Z alpha. No solving involved. Labels:
//   alpha2            -x^2 / (2 n^2)
//   alpha4_dirac      (3/(8 n^4) - 1/(2 n^3 |kappa|)) x^4
//   alpha4_hyperfine  (1/(3 n^3)) g_p (m/M_p) (delta_{S,1}-3 delta_{S,0})
//                        delta_{kappa,-1} x^4
//   alpha5_radiative  (4/(3 pi n^3)) [ (L_{n0}+19/30-2 ln x) delta_{kappa,-1}
//                        + (3/8)/(kappa(2|kappa|-1)) (1-delta_{kappa,-1}) ]
//                        alpha x^4
inline EnergyLevel analytic_expansion(const QuantumState& st, int Z,
                                      const PhysicalConstants& c, Model which,
                                      const BetheLogTable& bethe) {
  const double x = Z * c.alpha;
  const double n = st.n;
  const double abs_kappa = std::abs(st.kappa);
  const bool is_s_half = (st.kappa == -1);

  EnergyLevel level;
  level.state = st;
  level.coupling = CouplingFactors::identity();

  const double x2 = x * x;
  const double x4 = x2 * x2;
  level.breakdown.push_back({"alpha2", -x2 / (2.0 * n * n)});
  level.breakdown.push_back(
      {"alpha4_dirac",
       (3.0 / (8.0 * n * n * n * n) - 1.0 / (2.0 * n * n * n * abs_kappa)) *
           x4});

  if (which == Model::hyperfine || which == Model::combined) {
    if (!st.S)
      throw DomainError("hyperfine expansion needs a state with S set");
    double spin_factor = (*st.S == 1) ? 1.0 : -3.0;
    double value = is_s_half ? (1.0 / (3.0 * n * n * n)) * c.g_p *
                                   c.mass_ratio * spin_factor * x4
                             : 0.0;
    level.breakdown.push_back({"alpha4_hyperfine", value});
  }

  if (which == Model::lamb || which == Model::combined) {
    double bracket;
    if (is_s_half) {
      double L = bethe.require(st.n, 0);
      bracket = L + 19.0 / 30.0 - 2.0 * std::log(x);
    } else {
      bracket = (3.0 / 8.0) / (st.kappa * (2.0 * abs_kappa - 1.0));
    }
    level.breakdown.push_back(
        {"alpha5_radiative",
         4.0 / (3.0 * std::numbers::pi * n * n * n) * bracket * c.alpha * x4});
  }

  level.epsilon = 1.0 + level.epsilon_minus_one();
  return level;
}

// Fits eps(Zalpha) - 1 on the window Zalpha in [1e-3, 1e-2] to a polynomial
// in (Zalpha)^2 and returns the requested coefficients. The window is small
// enough that unmodeled higher orders sit below the fit noise and large
// enough to stay clear of rounding; one guard order beyond the largest
// request absorbs truncation bias. The supplied builder must be smooth in
// Zalpha over the window (no bare logarithms).
inline std::vector<std::pair<int, double>> numeric_order_extraction(
    const QuantumState& st,
    const std::function<CouplingFactors(double)>& g_builder,
    const std::vector<int>& orders) {
  using Real = long double;
  if (orders.empty()) return {};
  int max_order = 2;
  for (int e : orders) {
    if (e < 2 || e % 2 != 0)
      throw DomainError(
          "order extraction fits a polynomial in (Zalpha)^2; exponents must "
          "be positive even integers");
    max_order = std::max(max_order, e);
  }
  const int degree = max_order / 2 + 1;  // one guard order

  const int count = 2 * degree + 6;
  const double lo = 1e-3, hi = 1e-2;
  std::vector<Real> xs(count), ys(count);
  for (int i = 0; i < count; ++i) {
    double t = double(i) / double(count - 1);
    double za = lo * std::pow(hi / lo, t);
    CouplingFactors g = g_builder(za);
    auto core = kernel::solve_core<Real>(st.n, st.kappa, Real(za),
                                         Real(g.delta_a), Real(g.delta_b));
    xs[i] = Real(za) * Real(za);
    ys[i] = core.epsilon_minus_one;
  }

  std::vector<int> powers(degree);
  for (int k = 0; k < degree; ++k) powers[k] = k + 1;
  auto fit = numerics::fit_powers<Real>(xs, ys, powers);
  if (!(fit.condition_estimate < Real(1e10)))
    throw NumericalError("order-extraction fit is ill conditioned");

  std::vector<std::pair<int, double>> out;
  out.reserve(orders.size());
  for (int e : orders)
    out.emplace_back(e, double(fit.coefficients[e / 2 - 1]));
  return out;
}

struct IterationTrace {
  std::vector<double> epsilons;  // one entry per solve
  bool converged = false;
  bool diverged = false;

  int iterations() const { return int(epsilons.size()); }
};

struct IterationResult {
  EnergyLevel level;
  IterationTrace trace;
};

// Fixed-point refinement that feeds the solved energy back into the
// nonlinear factor in place of the exact Coulomb expectation value:
//   f_k = 1 - eps_k^n,  g_k from the kind's lambdas at f_k,
//   eps_{k+1} = solve(g_k),
// starting from the exact Coulomb energy. Corrections (binding, Breit) are
// not applied here; the iteration probes the base couplings. Divergence
// (energy leaving the bound interval, or a supercritical g) is reported in
// the trace, not thrown.
inline IterationResult self_consistent_iterate(const QuantumState& st,
                                               double z_alpha,
                                               Model which,
                                               const PhysicalConstants& c,
                                               const BetheLogTable& bethe,
                                               int max_iter, double tol) {
  using Real = long double;
  if (max_iter < 1) throw DomainError("self_consistent_iterate: max_iter >= 1");
  if ((which == Model::hyperfine || which == Model::combined) && !st.S)
    throw DomainError("self-consistent iteration of a spin-dependent kind "
                      "needs a state with S set");

  // lambdas are fixed across iterations; only f moves
  double lam_a = 0.0, lam_b = 0.0;
  if (which == Model::lamb || which == Model::combined) {
    lam_a += lambda_lamb(st.n, st.kappa, st.l_a, c.alpha, z_alpha, bethe).value;
    lam_b += lambda_lamb(st.n, st.kappa, st.l_b, c.alpha, z_alpha, bethe).value;
  }
  if (which == Model::hyperfine || which == Model::combined) {
    lam_a += lambda_hyperfine(st.kappa, st.l_a, *st.S, c).value;
    lam_b += lambda_hyperfine(st.kappa, st.l_b, *st.S, c).value;
  }

  IterationResult out;
  out.level.state = st;

  Real u = kernel::sommerfeld_epsilon_minus_one<Real>(st.n, st.kappa,
                                                      Real(z_alpha));
  CouplingFactors g = CouplingFactors::identity();
  for (int k = 0; k < max_iter; ++k) {
    Real f = kernel::nonlinear_factor_at<Real>(st.n, u);
    g = CouplingFactors{lam_a * double(f), lam_b * double(f)};
    Real u_next;
    try {
      auto core = kernel::solve_core<Real>(st.n, st.kappa, Real(z_alpha),
                                           Real(g.delta_a), Real(g.delta_b));
      u_next = core.epsilon_minus_one;
    } catch (const Error&) {
      out.trace.diverged = true;
      break;
    }
    out.trace.epsilons.push_back(double(Real(1) + u_next));
    if (!(u_next > Real(-1) && u_next < Real(0))) {
      out.trace.diverged = true;
      u = u_next;
      break;
    }
    Real step = std::abs(u_next - u);
    u = u_next;
    if (step < Real(tol)) {
      out.trace.converged = true;
      break;
    }
  }

  Real u_dirac = kernel::sommerfeld_epsilon_minus_one<Real>(st.n, st.kappa,
                                                            Real(z_alpha));
  out.level.epsilon = double(Real(1) + u);
  out.level.coupling = g;
  out.level.breakdown = {
      {"dirac", double(u_dirac)},
      {"beyond_dirac", double(u - u_dirac)},
  };
  return out;
}

}  // namespace effdirac
