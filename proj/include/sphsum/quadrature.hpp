#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sphsum {

enum class QuadKind { legendre, hermite, laguerre };

/// First-class quadrature rule value. The three families cover the decay
/// classes that occur here: Legendre on mapped intervals, Hermite for
/// Gaussian decay on the full line, generalized Laguerre for x^alpha e^{-x}
/// decay on the half line.
struct QuadratureRule {
  QuadKind kind = QuadKind::legendre;
  int order = 64;
  double a = -1.0;      // legendre interval
  double b = 1.0;
  double alpha = 0.0;   // laguerre exponent

  static QuadratureRule legendre(int order, double a, double b) {
    return {QuadKind::legendre, order, a, b, 0.0};
  }
  static QuadratureRule hermite(int order) { return {QuadKind::hermite, order, 0, 0, 0.0}; }
  static QuadratureRule laguerre(int order, double alpha = 0.0) {
    return {QuadKind::laguerre, order, 0, 0, alpha};
  }
};

/// Nodes and *total* weights: integrate f over the rule's natural domain as
/// sum w[i] f(x[i]) with the weight function folded into w. For Hermite and
/// Laguerre this keeps the weights representable at high order.
struct QuadNodes {
  std::vector<double> x;
  std::vector<double> w;
};

/// Node/weight table for a rule. Canonical tables are cached internally
/// (thread-safe); Legendre intervals are mapped on the fly.
QuadNodes quad_nodes(const QuadratureRule& rule);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);
std::complex<double> integrate_c(const QuadratureRule& rule,
                                 const std::function<std::complex<double>(double)>& f);

/// Doubles the order until two successive results agree within rtol
/// (relative to max(|I|, floor)). Throws quality_error on non-convergence.
double integrate_adaptive(QuadKind kind, const std::function<double(double)>& f, double rtol = 1e-10,
                          int start_order = 100, int max_order = 1600, double a = 0.0,
                          double b = 0.0, double alpha = 0.0, double floor = 1e-12);

/// Composite Gauss-Legendre over [a, b] with panels no wider than
/// panel_width (16 nodes per panel). Suitable for smooth or mildly
/// oscillatory integrands once panel_width resolves the oscillation.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        double panel_width);
std::complex<double> integrate_panels_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double panel_width);

/// Same as integrate_panels_c but the panels are refined geometrically
/// toward the endpoint `a` (ratio 2, `levels` halvings), for integrands with
/// an integrable power singularity or kink at a.
std::complex<double> integrate_panels_endpoint_c(
    const std::function<std::complex<double>(double)>& f, double a, double b, double panel_width,
    int levels = 54);

}  // namespace sphsum
