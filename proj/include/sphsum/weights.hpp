#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "sphsum/cfun.hpp"

namespace sphsum {

enum class Support { full_line, half_line };

/// Evaluable scalar weight function with support, derivative access and an
/// optional closed-form Fourier transform. Weights are immutable after
/// construction; all operations are pure. Half-line weights evaluate to
/// exactly 0 for x < 0 (the sharp cutoff matters for the smoothing
/// integrals).
class Weight {
 public:
  enum class Family { gaussian, laguerre, poly_exp, poly_gauss, table, tabulated_conv };

  double operator()(double x) const;
  /// m-th derivative; analytic for the parametric families, finite
  /// differences otherwise (meaningful away from support edges).
  double derivative(double x, int order) const;
  /// Highest derivative order available analytically.
  int analytic_order() const;

  Family family() const;
  Support support() const;
  Decay decay() const;
  bool nonneg() const;
  double amplitude() const;

  bool has_closed_fourier() const;
  /// int w(x) e^{-isx} dx. Closed form when available, else quadrature
  /// chosen by decay class.
  std::complex<double> fourier(double s, bool force_numeric = false) const;
  /// int (-ix)^m w(x) e^{-isx} dx — the m-th s-derivative of the transform.
  std::complex<double> fourier_moment(double s, int m, bool force_numeric = false) const;
  /// int x^k w(x) dx.
  double moment(int k) const;
  /// int w dx (cached at construction).
  double mass() const;

  /// Effective support [lo, hi] outside which |w| is negligible.
  double effective_lo() const;
  double effective_hi() const;

  /// Algebraic decay exponent of the Fourier transform: |Fw(s)| ~ |s|^-e.
  /// Exact for the half-line parametric families, heuristic for tables.
  double fourier_algebraic_decay() const;

  /// amplitude * e^{-(x-mu)^2 / (2 sigma^2)} on the full line.
  static Weight gaussian(double mu = 0.0, double sigma = 1.0, double amplitude = 1.0);
  /// amplitude * x^p e^{-x} on the half line (p > -1).
  static Weight laguerre(double p, double amplitude = 1.0);
  /// (sum_j c_j x^j) e^{-rate x} on the half line.
  static Weight poly_exp(std::vector<double> coeffs, double rate = 1.0);
  /// (sum_j c_j x^j) e^{-x^2/(2 sigma^2)} on the full line.
  static Weight poly_gauss(std::vector<double> coeffs, double sigma = 1.0);
  /// Cubic-spline interpolant of sorted (x, w) samples; zero outside the
  /// table (and for x < 0 when declared half-line).
  static Weight table(std::vector<double> xs, std::vector<double> ws,
                      Support supp = Support::full_line);

  struct Impl;
  explicit Weight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  friend Weight convolve(const Weight&, const Weight&);
  std::shared_ptr<const Impl> impl_;
};

/// int w(x) e^{-isx} dx.
std::complex<double> fourier(const Weight& w, double s);

/// (w1 * w2)(x) = int w1(x - y) w2(y) dy. Closed form for matching
/// parametric families (Gaussian x Gaussian, Laguerre x Laguerre), otherwise
/// materialized on an adaptive grid. Supports: half*half -> half,
/// any*full -> full.
Weight convolve(const Weight& w1, const Weight& w2);

/// The half-line smoothing kernel x^p e^{-x} (p > -1).
Weight laguerre_weight(double p);

/// m-th derivative of f at x by Fornberg finite differences on a centered
/// stencil (order-4 accuracy), step scaled per derivative order.
double fd_derivative(const std::function<double(double)>& f, double x, int m, double scale = 1.0);

}  // namespace sphsum
