#include "sphsum/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

#include "sphsum/errors.hpp"
#include "sphsum/simd_kernels.hpp"

namespace sphsum {
namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the orthonormal
// recurrence x p_k = b_k p_{k-1} + a_k p_k + b_{k+1} p_{k+1}.
struct JacobiCoeffs {
  std::vector<double> a;  // diagonal
  std::vector<double> b;  // subdiagonal, b[k] couples p_{k-1} and p_k, k >= 1
};

JacobiCoeffs jacobi_coeffs(const QuadratureRule& rule) {
  JacobiCoeffs jc;
  jc.a.resize(rule.order);
  jc.b.resize(rule.order);
  for (int k = 0; k < rule.order; ++k) {
    switch (rule.kind) {
      case QuadKind::legendre:
        jc.a[k] = 0.0;
        jc.b[k] = k == 0 ? 0.0 : k / std::sqrt(4.0 * k * k - 1.0);
        break;
      case QuadKind::hermite:
        jc.a[k] = 0.0;
        jc.b[k] = k == 0 ? 0.0 : std::sqrt(0.5 * k);
        break;
      case QuadKind::laguerre:
        jc.a[k] = 2.0 * k + rule.alpha + 1.0;
        jc.b[k] = k == 0 ? 0.0 : std::sqrt(k * (k + rule.alpha));
        break;
    }
  }
  return jc;
}

// Total weight at node x via the Christoffel function: 1 / sum_k q_k(x)^2
// where q_k = p_k * sqrt(weight fn). The sqrt-weight factor rides through the
// linear recurrence, which keeps everything representable; accumulation in
// long double absorbs the tiny leading terms at extreme nodes.
double total_weight_at(const QuadratureRule& rule, const JacobiCoeffs& jc, double x) {
  long double q_prev = 0.0L;
  long double q = 0.0L;
  switch (rule.kind) {
    case QuadKind::legendre:
      q = 1.0L / std::sqrt(2.0L);  // mu0 = 2
      break;
    case QuadKind::hermite:
      // p_0 = pi^{-1/4}, weight e^{-x^2}
      q = expl(-0.5L * (long double)x * x) / powl(3.14159265358979323846264338328L, 0.25L);
      break;
    case QuadKind::laguerre: {
      // p_0 = Gamma(1+alpha)^{-1/2}, weight x^alpha e^{-x}
      const long double lg = lgammal(1.0L + (long double)rule.alpha);
      q = expl(0.5L * ((long double)rule.alpha * logl((long double)x) - (long double)x - lg));
      break;
    }
  }
  long double csum = q * q;
  for (int k = 0; k + 1 < rule.order; ++k) {
    const long double next =
        ((x - jc.a[k]) * q - (k > 0 ? jc.b[k] * q_prev : 0.0L)) / jc.b[k + 1];
    q_prev = q;
    q = next;
    csum += q * q;
  }
  return static_cast<double>(1.0L / csum);
}

QuadNodes build_nodes(const QuadratureRule& rule) {
  if (rule.order < 1) throw dimension_error("quadrature order must be >= 1");
  if (rule.kind == QuadKind::laguerre && rule.alpha <= -1.0)
    throw dimension_error("laguerre alpha must be > -1");

  const JacobiCoeffs jc = jacobi_coeffs(rule);
  QuadNodes out;
  if (rule.order == 1) {
    out.x = {jc.a[0]};
  } else {
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(jc.a.data(), rule.order);
    Eigen::VectorXd sub(rule.order - 1);
    for (int k = 1; k < rule.order; ++k) sub[k - 1] = jc.b[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    out.x.assign(es.eigenvalues().data(), es.eigenvalues().data() + rule.order);
    std::sort(out.x.begin(), out.x.end());
  }
  out.w.resize(rule.order);
  for (int i = 0; i < rule.order; ++i) out.w[i] = total_weight_at(rule, jc, out.x[i]);
  return out;
}

struct CacheKey {
  QuadKind kind;
  int order;
  std::int64_t alpha_bits;
  bool operator<(const CacheKey& o) const {
    return std::tie(kind, order, alpha_bits) < std::tie(o.kind, o.order, o.alpha_bits);
  }
};

const QuadNodes& canonical_nodes(const QuadratureRule& rule) {
  static std::map<CacheKey, QuadNodes> cache;
  static std::mutex mu;
  std::int64_t bits;
  double alpha = rule.kind == QuadKind::laguerre ? rule.alpha : 0.0;
  static_assert(sizeof(bits) == sizeof(alpha));
  std::memcpy(&bits, &alpha, sizeof(bits));
  const CacheKey key{rule.kind, rule.order, bits};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_nodes(rule)).first;
  return it->second;
}

}  // namespace

QuadNodes quad_nodes(const QuadratureRule& rule) {
  if (rule.kind != QuadKind::legendre) return canonical_nodes(rule);
  const QuadNodes& base = canonical_nodes(QuadratureRule{QuadKind::legendre, rule.order});
  QuadNodes mapped;
  const double mid = 0.5 * (rule.a + rule.b);
  const double half = 0.5 * (rule.b - rule.a);
  mapped.x.resize(base.x.size());
  mapped.w.resize(base.w.size());
  for (std::size_t i = 0; i < base.x.size(); ++i) {
    mapped.x[i] = mid + half * base.x[i];
    mapped.w[i] = half * base.w[i];
  }
  return mapped;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  const QuadNodes nodes = quad_nodes(rule);
  std::vector<double> vals(nodes.x.size());
  for (std::size_t i = 0; i < nodes.x.size(); ++i) vals[i] = f(nodes.x[i]);
  return kernels::dot(nodes.w.data(), vals.data(), vals.size());
}

std::complex<double> integrate_c(const QuadratureRule& rule,
                                 const std::function<std::complex<double>(double)>& f) {
  const QuadNodes nodes = quad_nodes(rule);
  std::vector<double> re(nodes.x.size()), im(nodes.x.size());
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const std::complex<double> v = f(nodes.x[i]);
    re[i] = v.real();
    im[i] = v.imag();
  }
  return {kernels::dot(nodes.w.data(), re.data(), re.size()),
          kernels::dot(nodes.w.data(), im.data(), im.size())};
}

double integrate_adaptive(QuadKind kind, const std::function<double(double)>& f, double rtol,
                          int start_order, int max_order, double a, double b, double alpha,
                          double floor) {
  double prev = 0.0;
  bool have_prev = false;
  for (int order = start_order; order <= max_order; order *= 2) {
    QuadratureRule rule{kind, order, a, b, alpha};
    const double cur = integrate(rule, f);
    if (have_prev && std::abs(cur - prev) <= rtol * std::max(std::abs(cur), floor)) return cur;
    prev = cur;
    have_prev = true;
  }
  throw quality_error("adaptive quadrature did not converge");
}

namespace {

template <typename Value, typename F>
Value panels_impl(const F& f, double a, double b, double panel_width) {
  if (!(b > a)) return Value{};
  const int npanels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
  const double h = (b - a) / npanels;
  const QuadNodes base = quad_nodes(QuadratureRule::legendre(16, -1.0, 1.0));
  Value acc{};
  for (int p = 0; p < npanels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < base.x.size(); ++i)
      acc += Value(0.5 * h * base.w[i]) * f(mid + 0.5 * h * base.x[i]);
  }
  return acc;
}

}  // namespace

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        double panel_width) {
  return panels_impl<double>(f, a, b, panel_width);
}

std::complex<double> integrate_panels_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double panel_width) {
  return panels_impl<std::complex<double>>(f, a, b, panel_width);
}

std::complex<double> integrate_panels_endpoint_c(
    const std::function<std::complex<double>(double)>& f, double a, double b, double panel_width,
    int levels) {
  if (!(b > a)) return {};
  // geometric refinement of the first panel toward a
  const double first = std::min(panel_width, b - a);
  std::complex<double> acc = integrate_panels_c(f, a + first, b, panel_width);
  double hi = a + first;
  for (int l = 0; l < levels && hi - a > 0; ++l) {
    const double lo = a + (hi - a) * 0.5;
    acc += integrate_panels_c(f, lo, hi, hi - lo);
    hi = lo;
  }
  // the innermost sliver is integrated with a single panel
  acc += integrate_panels_c(f, a, hi, hi - a);
  return acc;
}

}  // namespace sphsum
