#pragma once

#include <optional>
#include <vector>

#include "sphsum/detkit.hpp"
#include "sphsum/transform.hpp"
#include "sphsum/weights.hpp"

namespace sphsum {

/// Tagged description of a unitarily invariant ensemble:
/// GUE | LUE(alpha) | PE(w_1..w_n) | DPE(w).
struct EnsembleSpec {
  enum class Kind { gue, lue, pe, dpe };

  Kind kind = Kind::gue;
  int n = 1;
  double alpha = 0.0;                // lue
  std::vector<Weight> weights;       // pe
  std::optional<Weight> generator;   // dpe

  static EnsembleSpec gue(int n);
  static EnsembleSpec lue(int n, double alpha);
  static EnsembleSpec pe(std::vector<Weight> weights);
  static EnsembleSpec dpe(int n, Weight generator);

  /// LUE(alpha) written as PE(x^{alpha+k-1} e^{-x}), k = 1..n.
  static EnsembleSpec lue_as_pe(int n, double alpha);
  /// GUE written as PE(x^{k-1} e^{-x^2/2}), k = 1..n.
  static EnsembleSpec gue_as_pe(int n);
};

/// Normalized joint eigenvalue density on R^n (symmetric, integrates to 1).
double joint_eigen_density(const EnsembleSpec& ens, const SpectralVector& x);

/// The unitarily invariant matrix density f evaluated at any Hermitian
/// matrix with spectrum x. Confluent-safe in x.
double matrix_density(const EnsembleSpec& ens, const SpectralVector& x);

/// Closed-form structured spherical transform: GUE/LUE/DPE -> ProductForm,
/// PE -> DetRatioForm with columns Fw_k, normalized to 1 at s = 0.
TransformRep transform_of(const EnsembleSpec& ens);

/// Z''_n of the polynomial-ensemble transform, reported as modulus with the
/// unit-complex phase recorded. Throws degenerate_ensemble_error when the
/// moment matrix is singular (weights linearly dependent).
struct PeNormalization {
  double modulus = 0.0;
  cplx phase = 1.0;
};
PeNormalization pe_normalization(const std::vector<Weight>& weights);

/// Numeric forward transform of the spherical-transform integral. PE/DPE
/// reduce via the Andreief identity to one-dimensional Fourier integrals
/// (forced to quadrature, ignoring closed forms); GUE/LUE go through the
/// structure-blind tensor-quadrature path, which requires n <= 3.
cplx forward_numeric(const EnsembleSpec& ens, const FrequencyVector& s,
                     const QuadratureRule& quad = QuadratureRule::hermite(96));

}  // namespace sphsum
