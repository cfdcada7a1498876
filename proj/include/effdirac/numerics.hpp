#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "effdirac/errors.hpp"

// Small self-contained numerical kernels used by the solver: a bracketed
// scalar root finder and a Householder-QR least-squares fit. Templated on the
// floating type so precision-critical callers can run them in long double.

namespace effdirac::numerics {

template <class Real>
struct RootResult {
  Real root;
  Real f_at_root;
  int iterations;
};

// Bisection/secant hybrid on a bracketing interval [lo, hi] with
// f(lo)*f(hi) <= 0. Tries a secant step each round and falls back to
// bisection whenever the step leaves the bracket or fails to shrink it
// fast enough. Stops when the bracket width drops below tol (absolute)
// or f is exactly zero.
template <class Real, class F>
RootResult<Real> find_root_bracketed(F&& f, Real lo, Real hi, Real tol,
                                     int max_iter = 200) {
  Real flo = f(lo);
  Real fhi = f(hi);
  if (flo == Real(0)) return {lo, flo, 0};
  if (fhi == Real(0)) return {hi, fhi, 0};
  if ((flo > Real(0)) == (fhi > Real(0)))
    throw NumericalError("root finder: interval does not bracket a sign change");

  Real x = lo, fx = flo;
  int it = 0;
  while (it < max_iter && (hi - lo) > tol) {
    ++it;
    // secant proposal from the bracket endpoints
    Real denom = fhi - flo;
    Real cand = (denom != Real(0)) ? lo - flo * (hi - lo) / denom : lo;
    Real mid = lo + (hi - lo) / Real(2);
    // keep the proposal strictly inside and not absurdly close to an end;
    // every other round bisect outright so the bracket provably halves
    Real width = hi - lo;
    if (it % 2 == 0 ||
        !(cand > lo + width * Real(1e-3) && cand < hi - width * Real(1e-3)))
      cand = mid;
    Real fcand = f(cand);
    x = cand;
    fx = fcand;
    if (fcand == Real(0)) break;
    if ((fcand > Real(0)) == (flo > Real(0))) {
      lo = cand;
      flo = fcand;
    } else {
      hi = cand;
      fhi = fcand;
    }
  }
  if (fx != Real(0)) {
    // final midpoint is the best symmetric guess
    Real mid = lo + (hi - lo) / Real(2);
    Real fmid = f(mid);
    if (std::abs(fmid) < std::abs(fx)) {
      x = mid;
      fx = fmid;
    }
  }
  return {x, fx, it};
}

template <class Real>
struct FitResult {
  std::vector<Real> coefficients;  // one per requested power, same order
  Real condition_estimate;         // max|R_ii| / min|R_ii| of the QR factor
};

// Least squares fit of y ~ sum_k c_k * x^{powers[k]} via Householder QR.
// The columns are scaled to unit max magnitude before factorization and the
// coefficients unscaled afterwards, so the condition estimate reflects the
// intrinsic basis collinearity on the sample window rather than raw
// magnitudes.
template <class Real>
FitResult<Real> fit_powers(const std::vector<Real>& xs,
                           const std::vector<Real>& ys,
                           const std::vector<int>& powers) {
  const size_t m = xs.size();
  const size_t p = powers.size();
  if (ys.size() != m)
    throw DomainError("fit_powers: xs and ys lengths differ");
  if (m < p + 1)
    throw DomainError("fit_powers: need more samples than basis functions");

  // column-major design matrix
  std::vector<Real> A(m * p);
  std::vector<Real> colscale(p, Real(0));
  for (size_t k = 0; k < p; ++k) {
    for (size_t i = 0; i < m; ++i) {
      Real v = std::pow(xs[i], Real(powers[k]));
      A[k * m + i] = v;
      colscale[k] = std::max(colscale[k], std::abs(v));
    }
    if (colscale[k] == Real(0))
      throw NumericalError("fit_powers: zero basis column");
    for (size_t i = 0; i < m; ++i) A[k * m + i] /= colscale[k];
  }

  std::vector<Real> b = ys;

  // Householder QR, in place
  std::vector<Real> rdiag(p);
  for (size_t k = 0; k < p; ++k) {
    Real norm = Real(0);
    for (size_t i = k; i < m; ++i) norm += A[k * m + i] * A[k * m + i];
    norm = std::sqrt(norm);
    if (norm == Real(0))
      throw NumericalError("fit_powers: rank-deficient design matrix");
    if (A[k * m + k] > Real(0)) norm = -norm;
    for (size_t i = k; i < m; ++i) A[k * m + i] /= norm;
    A[k * m + k] -= Real(1);
    rdiag[k] = norm;

    for (size_t jcol = k + 1; jcol < p; ++jcol) {
      Real dot = Real(0);
      for (size_t i = k; i < m; ++i) dot += A[k * m + i] * A[jcol * m + i];
      dot /= A[k * m + k];
      for (size_t i = k; i < m; ++i) A[jcol * m + i] += dot * A[k * m + i];
    }
    Real dot = Real(0);
    for (size_t i = k; i < m; ++i) dot += A[k * m + i] * b[i];
    dot /= A[k * m + k];
    for (size_t i = k; i < m; ++i) b[i] += dot * A[k * m + i];
  }

  Real rmax = Real(0), rmin = Real(0);
  for (size_t k = 0; k < p; ++k) {
    Real a = std::abs(rdiag[k]);
    rmax = std::max(rmax, a);
    rmin = (k == 0) ? a : std::min(rmin, a);
  }
  FitResult<Real> out;
  out.condition_estimate = (rmin > Real(0)) ? rmax / rmin : Real(INFINITY);

  // back substitution on the upper triangle (stored above the Householder
  // vectors; diagonal in rdiag)
  std::vector<Real> c(p);
  for (size_t kk = p; kk-- > 0;) {
    Real sum = b[kk];
    for (size_t jcol = kk + 1; jcol < p; ++jcol)
      sum -= A[jcol * m + kk] * c[jcol];
    c[kk] = sum / rdiag[kk];
  }
  for (size_t k = 0; k < p; ++k) c[k] /= colscale[k];
  out.coefficients = std::move(c);
  return out;
}

}  // namespace effdirac::numerics
