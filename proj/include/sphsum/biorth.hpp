#pragma once

#include <functional>
#include <vector>

#include "sphsum/ensembles.hpp"

namespace sphsum {

/// Polynomial with coefficients lowest-to-highest. Coef is double in the
/// floating path and an exact rational in the exact-arithmetic mode.
template <typename Coef>
struct Polynomial {
  std::vector<Coef> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }

  Coef eval(const Coef& x) const {
    Coef acc(0);
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
    return acc;
  }

  Polynomial derivative() const {
    if (c.size() <= 1) return Polynomial{{Coef(0)}};
    Polynomial d;
    d.c.resize(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) d.c[j - 1] = c[j] * Coef(static_cast<int>(j));
    return d;
  }

  void trim() {
    while (c.size() > 1 && c.back() == Coef(0)) c.pop_back();
  }
};

using MonicPolynomial = Polynomial<double>;

/// L p = sum_{j>=0} binom(alpha+n+j-1, j) p^{(j)}  (finite on polynomials);
/// degree and leading coefficient are preserved.
template <typename Coef>
Polynomial<Coef> smoothing_L(const Polynomial<Coef>& p, const Coef& alpha, int n) {
  Polynomial<Coef> out{std::vector<Coef>(p.c.size(), Coef(0))};
  Polynomial<Coef> d = p;
  Coef coeff(1);  // binom(alpha+n+j-1, j), built incrementally
  for (int j = 0; j <= p.degree(); ++j) {
    if (j > 0) {
      coeff = coeff * (alpha + Coef(n + j - 1)) / Coef(j);
      d = d.derivative();
    }
    for (std::size_t m = 0; m < d.c.size(); ++m) out.c[m] += coeff * d.c[m];
  }
  out.trim();
  return out;
}

/// P = sum_j (-1)^j binom(alpha+n, j) p^{(j)}; the exact two-sided inverse of
/// smoothing_L on polynomials.
template <typename Coef>
Polynomial<Coef> transform_P(const Polynomial<Coef>& p, const Coef& alpha, int n) {
  Polynomial<Coef> out{std::vector<Coef>(p.c.size(), Coef(0))};
  Polynomial<Coef> d = p;
  Coef coeff(1);  // (-1)^j binom(alpha+n, j)
  for (int j = 0; j <= p.degree(); ++j) {
    if (j > 0) {
      coeff = coeff * (alpha + Coef(n - j + 1)) / Coef(-j);
      d = d.derivative();
    }
    for (std::size_t m = 0; m < d.c.size(); ++m) out.c[m] += coeff * d.c[m];
  }
  out.trim();
  return out;
}

/// Floating-point instantiations run the coefficient recurrences in extended
/// precision: the alternating derivative sums cancel by ~10 digits around
/// degree 10, which plain double cannot absorb.
MonicPolynomial smoothing_L(const MonicPolynomial& p, double alpha, int n);
MonicPolynomial transform_P(const MonicPolynomial& p, double alpha, int n);

/// a_k = (-1)^k binom(alpha+n, k): the inverse-operator coefficient sequence.
std::vector<double> inverse_coeffs(double alpha, int n, int kmax);

/// Residual of the inverse-coefficient recurrence at index k
/// (sum_j a_{k-j} binom(alpha+n+j-1, j); identically 0 by Chu-Vandermonde).
double inverse_recurrence_residual(double alpha, int n, int k);

/// Matched monic polynomials p_k and duals q_k in span{w_1..w_n} with
/// int p_j q_k = delta_{jk}, plus their correlation kernel.
struct BiorthSystem {
  int n = 0;
  EnsembleSpec base;                         // the polynomial ensemble
  std::vector<MonicPolynomial> polys;        // p_0..p_{n-1}
  std::vector<std::vector<double>> dual_coeffs;  // q_k = sum_m coeff[k][m] w_m

  double qeval(int k, double x) const;
};

/// Constructs the biorthogonal pair by unpivoted LU of the moment matrix
/// M_{jk} = int x^j w_k dx. Throws degenerate_ensemble_error on singularity.
BiorthSystem build_biorth(const EnsembleSpec& pe);

/// Q(y) = 1/Gamma(alpha+n) int_0^inf x^{alpha+n-1} e^{-x} q(y-x) dx — the
/// dual-function smoothing; exact for Laguerre-family q, tabulated otherwise.
Weight transform_Q(const Weight& q, double alpha, int n);

/// Rank-n correlation kernel K(x, y) = sum_k p_k(x) q_k(y).
struct KernelRep {
  int n = 0;
  double lo = 0.0, hi = 0.0;  // effective x-range for integration
  std::function<double(double, double)> eval;

  double diag(double x) const { return eval(x, x); }
};

KernelRep kernel(const BiorthSystem& system);

/// int K(x, x) dx over the kernel's effective range (endpoint-refined: the
/// diagonal can carry a fractional power at a half-line edge). Equals n for
/// a rank-n projection kernel.
double kernel_trace(const KernelRep& rep);

/// K^Y(x,y) = sum_k (transform_P p_k)(x) (transform_Q q_k)(y): the kernel of
/// the ensemble shifted by an independent LUE(alpha) matrix.
KernelRep transformed_kernel(const BiorthSystem& system, double alpha);

}  // namespace sphsum
