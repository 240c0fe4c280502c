#pragma once

#include "sphsum/ensembles.hpp"

namespace sphsum {

enum class DensityKind { joint, matrix };

/// X ~ PE(f_1..f_n) plus an independent GUE matrix: PE(g_1..g_n) with
/// g_k = (e^{-x^2/2}) * f_k.
EnsembleSpec add_gue(const EnsembleSpec& pe);

/// X ~ PE(f_1..f_n) plus an independent LUE(alpha) matrix: PE(g_1..g_n) with
/// g_k(y) = int_0^inf x^{alpha+n-1} e^{-x} f_k(y-x) dx.
EnsembleSpec add_lue(const EnsembleSpec& pe, double alpha);

/// DPE(w1) + DPE(w2) = DPE(w1 * w2).
EnsembleSpec add_dpe(const Weight& w1, const Weight& w2, int n);

/// DPE(w) + PE(w_1..w_n) = PE(w * w_1, ..., w * w_n).
EnsembleSpec add_dpe_pe(const Weight& w, const EnsembleSpec& pe);

struct SumDensityOptions {
  DensityKind kind = DensityKind::joint;
  InverseOptions inverse;
};

/// Density of X + Y at spectrum x, computed by inverting the product of the
/// two transforms. kind selects the matrix-level invariant density or the
/// joint eigenvalue density (Weyl factor included).
double sum_density(const EnsembleSpec& a, const EnsembleSpec& b, const SpectralVector& x,
                   const SumDensityOptions& opt = {});

/// Joint eigenvalue density of X + L for a fixed matrix X with spectrum
/// x_fixed and L ~ LUE(alpha):
///   const * Vandermonde(y)/Vandermonde(x) * det[(y_j-x_k)_+^{alpha+n-1} e^{-y_j+x_k}],
/// with the normalization determined by quadrature (independent of x_fixed).
/// Coincident x_fixed entries take the confluent limit.
double lue_fixed_shift_density(const SpectralVector& x_fixed, double alpha,
                               const SpectralVector& y);

/// joint(x) = pi^{n(n-1)/2} / prod_{j=1}^n j! * f(x) * Vandermonde(x)^2.
double weyl_joint_from_matrix(double matrix_density_value, const SpectralVector& x);

/// One-point (pooled-eigenvalue) density with its effective support.
struct MarginalDensity {
  double lo = 0.0, hi = 0.0;
  std::function<double(double)> density;
};

/// Kernel-diagonal marginal K(x,x)/n of a PE-able ensemble (gue, lue, pe).
MarginalDensity eigen_marginal(const EnsembleSpec& ens);

/// Marginal of lue_fixed_shift_density in the first coordinate (n <= 2).
MarginalDensity lue_fixed_shift_marginal(const SpectralVector& x_fixed, double alpha);

}  // namespace sphsum
