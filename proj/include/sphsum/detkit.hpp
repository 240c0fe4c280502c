#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sphsum/quadrature.hpp"

namespace sphsum {

using cplx = std::complex<double>;

/// Eigenvalue vector x = (x_1, ..., x_n). Consumers are permutation
/// covariant: reordering entries changes results only by documented sign
/// rules (and determinant ratios not at all).
using SpectralVector = std::vector<double>;

/// Spectral-parameter vector s = (s_1, ..., s_n).
using FrequencyVector = std::vector<double>;

/// One member of a function family: eval(x, m) is the m-th derivative at x.
struct CxFun {
  std::function<cplx(double, int)> eval;
  int max_order = 1 << 20;

  cplx operator()(double x) const { return eval(x, 0); }
};

/// Ordered list g_1..g_n of evaluable scalar functions with derivative
/// access, the columns/rows of the determinants handled below.
using FunctionFamily = std::vector<CxFun>;

/// prod_{j<k} (v_k - v_j); 1 for n = 1 (empty product).
double vandermonde(const SpectralVector& v);

/// Sorts and greedily groups entries lying within cluster_tol (relative) of
/// their predecessor, replacing each group by its mean. Exact repeats stay
/// exact. Returns the clustered node list (ascending).
std::vector<double> cluster_nodes(const SpectralVector& v, double cluster_tol = 1e-8);

/// Divided differences f[z_1], f[z_1,z_2], ..., f[z_1..z_n] over clustered
/// (ascending, exact-repeat) nodes; repeated nodes consume derivatives
/// (Hermite table). Throws missing_derivative_error if a cluster needs a
/// derivative order beyond f.max_order.
std::vector<cplx> divided_difference_row(const CxFun& f, const std::vector<double>& nodes);

/// det[g_j(v_k)] / Vandermonde(v), evaluated in the limiting (confluent)
/// sense when entries of v cluster within cluster_tol. Invariant under
/// permutations of v.
cplx confluent_det_ratio(const FunctionFamily& g, const SpectralVector& v,
                         double cluster_tol = 1e-8);

/// n! * det[ int f_j(x) g_k(x) dx ] with the one-dimensional integrals taken
/// under the given rule — the Gram-determinant side of the Andreief identity.
double andreief_det(const FunctionFamily& f, const FunctionFamily& g, const QuadratureRule& quad);

/// Determinant of a small complex matrix stored row-major.
cplx det_complex(const std::vector<cplx>& entries, int n);

/// Unit complex i^m with exact quadrant arithmetic (m may be negative).
cplx quadrant_power(long long m);

double factorial(int n);

}  // namespace sphsum
