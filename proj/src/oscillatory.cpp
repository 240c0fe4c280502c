#include "sphsum/oscillatory.hpp"

#include <cmath>
#include <complex>

#include "sphsum/errors.hpp"
#include "sphsum/quadrature.hpp"

namespace sphsum {
namespace {

using cplx = std::complex<double>;

// One-sided integration-by-parts tail. upper:  int_S^inf g e^{isx} ds,
// lower: int_{-inf}^{-S}. The series is asymptotic; we stop at the smallest
// term and drop the correction entirely if it fails to contract, leaving the
// truncation error to the S-doubling loop.
cplx ibp_tail(const CFun& g, double x, double s_edge, bool upper, int max_terms) {
  const cplx iu(0.0, 1.0);
  const double sgn_s = upper ? 1.0 : -1.0;
  const cplx phase = std::exp(iu * (sgn_s * s_edge) * x);
  cplx acc = 0.0;
  cplx prev_term = 0.0;
  const int terms = std::min(max_terms, g.max_order + 1);
  for (int m = 0; m < terms; ++m) {
    const cplx gm = g.eval(sgn_s * s_edge, m);
    double sign = upper ? (m % 2 == 0 ? -1.0 : 1.0) : (m % 2 == 0 ? 1.0 : -1.0);
    const cplx term = sign * phase * gm / std::pow(iu * x, m + 1);
    if (m > 0 && std::abs(term) > 0.5 * std::abs(prev_term)) {
      if (std::abs(term) > std::abs(prev_term)) break;  // diverging, stop
    }
    acc += term;
    prev_term = term;
    if (std::abs(term) < 1e-17) break;
  }
  return acc;
}

}  // namespace

cplx fourier_integral(const CFun& g, double x, const FourierOptions& opt) {
  const cplx iu(0.0, 1.0);
  const auto integrand = [&](double s) { return g.eval(s, 0) * std::exp(iu * s * x); };

  if (g.decay == Decay::gaussian) {
    // Gauss-Hermite after s = sqrt(2) u, which maps e^{-s^2/2}-type decay
    // onto the e^{-u^2} weight; order doubled until stable
    const double root2 = 1.41421356237309504880;
    cplx prev = 0.0;
    bool have_prev = false;
    for (int order = 96; order <= 768; order *= 2) {
      const QuadNodes nodes = quad_nodes(QuadratureRule::hermite(order));
      cplx acc = 0.0;
      for (std::size_t i = 0; i < nodes.x.size(); ++i)
        acc += nodes.w[i] * integrand(root2 * nodes.x[i]);
      acc *= root2;
      if (have_prev && std::abs(acc - prev) <= opt.tol) return acc;
      prev = acc;
      have_prev = true;
    }
    // fall through to the panel path if the order sweep never settled
  }

  const double freq = std::abs(x);
  const double width = std::min(opt.panel_max, 3.141592653589793 / (2.0 * std::max(freq, 0.3)));

  const bool oscillatory = freq > 1e-6;
  if (!oscillatory && g.decay == Decay::algebraic && g.decay_exponent <= 1.2)
    throw quality_error("fourier_integral: non-oscillatory slowly decaying integrand");

  double s_lo = g.decay == Decay::gaussian ? std::min(24.0, opt.s_start) : opt.s_start;
  cplx panel_acc = integrate_panels_c(integrand, -s_lo, s_lo, width);
  cplx prev = 0.0;
  bool have_prev = false;
  for (double s_edge = s_lo; s_edge <= opt.s_cap; s_edge *= 2.0) {
    cplx cur = panel_acc;
    if (oscillatory)
      cur += ibp_tail(g, x, s_edge, true, opt.tail_terms) +
             ibp_tail(g, x, s_edge, false, opt.tail_terms);
    if (have_prev && std::abs(cur - prev) <= opt.tol) return cur;
    prev = cur;
    have_prev = true;
    panel_acc += integrate_panels_c(integrand, s_edge, 2.0 * s_edge, width) +
                 integrate_panels_c(integrand, -2.0 * s_edge, -s_edge, width);
  }
  throw quality_error("fourier_integral: truncation did not converge");
}

}  // namespace sphsum
