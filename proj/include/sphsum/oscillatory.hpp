#pragma once

#include <complex>

#include "sphsum/cfun.hpp"

namespace sphsum {

struct FourierOptions {
  double tol = 1e-10;       // target absolute accuracy
  double s_start = 64.0;    // initial truncation half-width
  double s_cap = 65536.0;   // give up beyond this half-width
  int tail_terms = 7;       // integration-by-parts correction depth
  double panel_max = 1.0;   // widest panel for the non-oscillatory part
};

/// Computes the full-line integral  I(x) = \int_R g(s) e^{i s x} ds  for a
/// smooth decaying g. Gaussian-decay integrands go through Gauss-Hermite;
/// everything else through oscillation-resolving Legendre panels on
/// [-S, S] plus integration-by-parts tail corrections, with S doubled until
/// the result stabilizes. Throws quality_error when no truncation converges.
std::complex<double> fourier_integral(const CFun& g, double x, const FourierOptions& opt = {});

}  // namespace sphsum
