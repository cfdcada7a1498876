#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "effdirac/errors.hpp"
#include "effdirac/states.hpp"

namespace effdirac {

// Diagonal coupling factors multiplying Z alpha in the two radial equations.
// Stored as the deviations delta = 1 - g: every physical build produces
// g = 1 - lambda*f with lambda*f between 1e-13 and 1e-2, so keeping the
// deviation preserves its full relative precision and makes the combination
// law (deviations add) exact in floating point.
struct CouplingFactors {
  double delta_a = 0.0;  // 1 - g_a
  double delta_b = 0.0;  // 1 - g_b

  double g_a() const { return 1.0 - delta_a; }
  double g_b() const { return 1.0 - delta_b; }

  static CouplingFactors identity() { return {}; }
  static CouplingFactors from_g(double ga, double gb) {
    return {1.0 - ga, 1.0 - gb};
  }
  bool is_identity() const { return delta_a == 0.0 && delta_b == 0.0; }

  bool operator==(const CouplingFactors&) const = default;
};

namespace kernel {

// Indicial exponent s = sqrt(kappa^2 - (Z alpha)^2 g_a g_b), positive root.
// The negative root would make the radial functions singular at the origin.
template <class Real>
Real indicial_exponent(int kappa, Real z_alpha, Real g_a, Real g_b) {
  Real k2 = Real(kappa) * Real(kappa);
  Real coupling2 = z_alpha * z_alpha * g_a * g_b;
  if (!(coupling2 < k2))
    throw SupercriticalError(
        "supercritical coupling: kappa^2 <= (Z alpha)^2 g_a g_b for kappa=" +
        std::to_string(kappa) + " (bound solutions only up to Z ~ 1/(alpha "
        "sqrt(g_a g_b)))");
  return std::sqrt(k2 - coupling2);
}

// epsilon - 1 for the exact (g = I) level, computed without cancellation:
// epsilon = a/sqrt(a^2 + (Z alpha)^2) with a = s + n', so
// epsilon - 1 = -(Z alpha)^2 / (sqrt(a^2+w)(a + sqrt(a^2+w))), w = (Z alpha)^2.
template <class Real>
Real sommerfeld_epsilon_minus_one(int n, int kappa, Real z_alpha) {
  Real s = indicial_exponent(kappa, z_alpha, Real(1), Real(1));
  Real a = s + Real(n - std::abs(kappa));
  Real w = z_alpha * z_alpha;
  Real root = std::sqrt(a * a + w);
  return -w / (root * (a + root));
}

template <class Real>
Real sommerfeld_epsilon(int n, int kappa, Real z_alpha) {
  return Real(1) + sommerfeld_epsilon_minus_one(n, kappa, z_alpha);
}

// f = 1 - epsilon^n evaluated as -expm1(n log1p(epsilon - 1)), exact for the
// tiny (epsilon - 1) this model lives on.
template <class Real>
Real nonlinear_factor(int n, int kappa, Real z_alpha) {
  Real u = sommerfeld_epsilon_minus_one(n, kappa, z_alpha);
  return -std::expm1(Real(n) * std::log1p(u));
}

// Same evaluation from an externally supplied epsilon (used by the
// self-consistent iteration, which feeds solved energies back in).
template <class Real>
Real nonlinear_factor_at(int n, Real epsilon_minus_one) {
  return -std::expm1(Real(n) * std::log1p(epsilon_minus_one));
}

}  // namespace kernel

inline double indicial_exponent(int kappa, double z_alpha,
                                const CouplingFactors& g =
                                    CouplingFactors::identity()) {
  return kernel::indicial_exponent<double>(kappa, z_alpha, g.g_a(), g.g_b());
}

inline double sommerfeld_energy(const QuantumState& st, double z_alpha) {
  return kernel::sommerfeld_epsilon<double>(st.n, st.kappa, z_alpha);
}

inline double nonlinear_factor(const QuantumState& st, double z_alpha) {
  return kernel::nonlinear_factor<double>(st.n, st.kappa, z_alpha);
}

// One radial eigenproblem instance at a trial energy. Lengths are in the
// scaled radial variable r = sqrt(M1 M2) q; with mc^2 = 1 the mass terms are
// m1 = 1 + epsilon and m2 = 1 - epsilon.
struct RadialProblem {
  QuantumState state;
  double z_alpha = 0.0;
  CouplingFactors g;
  double epsilon = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double s_exponent = 0.0;
};

inline RadialProblem make_radial_problem(const QuantumState& st, double z_alpha,
                                         const CouplingFactors& g,
                                         double epsilon) {
  if (!(std::fabs(epsilon) < 1.0))
    throw DomainError("radial problem needs a bound-state energy, |epsilon| < 1");
  RadialProblem p;
  p.state = st;
  p.z_alpha = z_alpha;
  p.g = g;
  p.epsilon = epsilon;
  p.m1 = 1.0 + epsilon;
  p.m2 = 1.0 - epsilon;
  p.s_exponent =
      kernel::indicial_exponent<double>(st.kappa, z_alpha, g.g_a(), g.g_b());
  return p;
}

// Terminating power series R_A = e^-r r^s sum a_mu r^mu (same shape for R_B),
// n' + 1 coefficients each.
struct RadialSeries {
  std::vector<double> a_coeffs;
  std::vector<double> b_coeffs;
  double s_exponent = 0.0;
  double termination_residual = 0.0;  // |a_{n'+1}| + |b_{n'+1}|, normalized
};

// Builds the coefficients from the mu = 0 relation and the two-term
// recurrence, then checks that the series actually terminates: solving the
// recurrence at mu = n' + 1 from the last kept row must return coefficients
// at the rounding floor, and b_{n'} = -a_{n'} sqrt(m2/m1) must hold. A
// residual above 1e-9 (relative to |a_0| + |b_0|) means epsilon is not an
// eigenvalue of the problem.
//
// mu = 0 fixes only the ratio (a_0 = 1 here):
//   (s + kappa) a_0 = g_b Zalpha b_0   and   (s - kappa) b_0 = -g_a Zalpha a_0,
// equivalent through s^2 - kappa^2 = -(Zalpha)^2 g_a g_b; whichever form is
// free of cancellation for the sign of kappa is used.
inline RadialSeries radial_series(const RadialProblem& p) {
  const double za = p.z_alpha;
  const double ga = p.g.g_a();
  const double gb = p.g.g_b();
  const double s = p.s_exponent;
  const double kappa = p.state.kappa;
  const int n_prime = p.state.n_prime();
  if (p.m1 <= 0.0 || p.m2 <= 0.0)
    throw DomainError("radial series needs 0 < |epsilon| < 1 mass terms");
  const double sq12 = std::sqrt(p.m1 / p.m2);
  const double sq21 = std::sqrt(p.m2 / p.m1);

  RadialSeries out;
  out.s_exponent = s;
  out.a_coeffs.resize(n_prime + 1);
  out.b_coeffs.resize(n_prime + 1);
  out.a_coeffs[0] = 1.0;
  out.b_coeffs[0] = (kappa < 0) ? -ga * za / (s - kappa)
                                : (s + kappa) / (gb * za);

  // mu >= 1: solve the 2x2 row
  //   (s+mu+kappa) a_mu - gb za b_mu = a_{mu-1} + sqrt(m1/m2) b_{mu-1}
  //   ga za a_mu + (s+mu-kappa) b_mu = b_{mu-1} + sqrt(m2/m1) a_{mu-1}
  // with determinant mu (mu + 2s) > 0.
  auto solve_row = [&](int mu, double a_prev, double b_prev) {
    double r1 = a_prev + sq12 * b_prev;
    double r2 = b_prev + sq21 * a_prev;
    double det = double(mu) * (double(mu) + 2.0 * s);
    double a_mu = ((s + mu - kappa) * r1 + gb * za * r2) / det;
    double b_mu = ((s + mu + kappa) * r2 - ga * za * r1) / det;
    return std::pair<double, double>{a_mu, b_mu};
  };

  for (int mu = 1; mu <= n_prime; ++mu) {
    auto [a, b] = solve_row(mu, out.a_coeffs[mu - 1], out.b_coeffs[mu - 1]);
    out.a_coeffs[mu] = a;
    out.b_coeffs[mu] = b;
  }

  auto [a_next, b_next] =
      solve_row(n_prime + 1, out.a_coeffs[n_prime], out.b_coeffs[n_prime]);
  double scale = std::fabs(out.a_coeffs[0]) + std::fabs(out.b_coeffs[0]);
  out.termination_residual = (std::fabs(a_next) + std::fabs(b_next)) / scale;
  if (!(out.termination_residual < 1e-9))
    throw SeriesTerminationError(
        "radial series does not terminate: epsilon=" +
            std::to_string(p.epsilon) + " is not an eigenvalue (residual " +
            std::to_string(out.termination_residual) + ")",
        out.termination_residual);
  return out;
}

// Evaluates both radial components at r > 0.
inline std::pair<double, double> evaluate_radial(const RadialSeries& series,
                                                 double r) {
  if (!(r > 0.0))
    throw DomainError("evaluate_radial needs r > 0");
  double poly_a = 0.0, poly_b = 0.0;
  for (size_t i = series.a_coeffs.size(); i-- > 0;) {
    poly_a = poly_a * r + series.a_coeffs[i];
    poly_b = poly_b * r + series.b_coeffs[i];
  }
  double envelope = std::exp(-r) * std::pow(r, series.s_exponent);
  return {envelope * poly_a, envelope * poly_b};
}

// Norm integral of the finite series, term by term:
//   int_0^inf (R_A^2 + R_B^2) dr
//     = sum_{j,k} (a_j a_k + b_j b_k) Gamma(2s + j + k + 1) / 2^{2s+j+k+1}.
// Reported, not imposed; the eigenvalue problem is normalization free.
inline double norm_integral(const RadialSeries& series) {
  const double two_s = 2.0 * series.s_exponent;
  double total = 0.0;
  const size_t len = series.a_coeffs.size();
  for (size_t jj = 0; jj < len; ++jj) {
    for (size_t kk = 0; kk < len; ++kk) {
      double power = two_s + double(jj + kk) + 1.0;
      double term = std::exp(std::lgamma(power) - power * std::log(2.0));
      total += (series.a_coeffs[jj] * series.a_coeffs[kk] +
                series.b_coeffs[jj] * series.b_coeffs[kk]) *
               term;
    }
  }
  return total;
}

}  // namespace effdirac
