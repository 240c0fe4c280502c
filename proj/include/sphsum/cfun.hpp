#pragma once

#include <complex>
#include <functional>

namespace sphsum {

/// Decay classes of the integrands handled here. `algebraic` carries the
/// decay exponent separately where it matters.
enum class Decay { gaussian, exponential, algebraic, compact };

/// Complex scalar function of a real variable with derivative access:
/// eval(t, m) returns the m-th derivative at t (m = 0 is the value).
/// Derivatives feed the confluent determinant tables and the asymptotic
/// tail corrections of the oscillatory integrator.
struct CFun {
  std::function<std::complex<double>(double, int)> eval;
  int max_order = 1 << 20;
  Decay decay = Decay::algebraic;
  double decay_exponent = 1.0;  // |f| ~ |t|^{-decay_exponent} if algebraic

  std::complex<double> operator()(double t) const { return eval(t, 0); }
};

/// Pointwise product with Leibniz derivatives.
CFun cfun_product(const CFun& a, const CFun& b);

/// t^k * f(t) with derivatives.
CFun cfun_monomial_times(int k, const CFun& f);

}  // namespace sphsum
