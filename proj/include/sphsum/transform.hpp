#pragma once

#include <functional>
#include <variant>

#include "sphsum/cfun.hpp"
#include "sphsum/detkit.hpp"

namespace sphsum {

/// hat f(s) = prod_j factor(s_j)
struct ProductForm {
  CFun factor;
};

/// hat f(s) = prefactor * det[h_k(s_j)] / Vandermonde(s)
struct DetRatioForm {
  std::vector<CFun> h;
  cplx prefactor = 1.0;
};

/// Opaque evaluable transform (products of det-ratio forms land here).
struct NumericForm {
  std::function<cplx(const FrequencyVector&)> eval;
  Decay decay = Decay::algebraic;
};

/// Structured spherical-transform representation. Every rep of a probability
/// density evaluates to 1 at s = 0 and satisfies hat f(-s) = conj(hat f(s)).
struct TransformRep {
  int n = 1;
  std::variant<ProductForm, DetRatioForm, NumericForm> form;
};

cplx evaluate(const TransformRep& rep, const FrequencyVector& s, double cluster_tol = 1e-8);

/// Structure-preserving pointwise product (the convolution theorem image of
/// adding independent matrices): Product x Product stays Product, Product x
/// DetRatio folds the factor into the columns, DetRatio x DetRatio degrades
/// to NumericForm.
TransformRep multiply(const TransformRep& a, const TransformRep& b);

struct InverseOptions {
  double tol = 1e-9;              // per-integral truncation tolerance
  double imag_residue_max = 1e-6; // beyond this the rep is inconsistent
  double cluster_tol = 1e-8;
  double numeric_s_cap = 512.0;   // truncation for NumericForm tensor quadrature
};

struct InverseResult {
  double value = 0.0;
  double imag_residue = 0.0;
};

/// Inversion formula: recovers the matrix-level invariant density f(x) from
/// its transform. DetRatio (and Product, rewritten with columns
/// s^{j-1} factor(s)) reduce to a determinant of one-dimensional inverse
/// Fourier integrals; NumericForm is restricted to n <= 2. Throws
/// quality_error when the imaginary residue exceeds the configured bound.
InverseResult inverse(const TransformRep& rep, const SpectralVector& x,
                      const InverseOptions& opt = {});

}  // namespace sphsum
