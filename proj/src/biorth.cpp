#include "sphsum/biorth.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "sphsum/errors.hpp"

namespace sphsum {
namespace {

double binom_real(double a, int k) {
  double b = 1.0;
  for (int r = 0; r < k; ++r) b *= (a - r) / (r + 1);
  return b;
}

#if defined(__SIZEOF_FLOAT128__)
using ExtendedFloat = __float128;
#else
using ExtendedFloat = long double;
#endif

Polynomial<ExtendedFloat> widen(const MonicPolynomial& p) {
  Polynomial<ExtendedFloat> out;
  out.c.assign(p.c.begin(), p.c.end());
  return out;
}

MonicPolynomial narrow(const Polynomial<ExtendedFloat>& p) {
  MonicPolynomial out;
  out.c.resize(p.c.size());
  for (std::size_t j = 0; j < p.c.size(); ++j) out.c[j] = static_cast<double>(p.c[j]);
  return out;
}

}  // namespace

MonicPolynomial smoothing_L(const MonicPolynomial& p, double alpha, int n) {
  return narrow(smoothing_L(widen(p), ExtendedFloat(alpha), n));
}

MonicPolynomial transform_P(const MonicPolynomial& p, double alpha, int n) {
  return narrow(transform_P(widen(p), ExtendedFloat(alpha), n));
}

std::vector<double> inverse_coeffs(double alpha, int n, int kmax) {
  std::vector<double> a(kmax + 1);
  for (int k = 0; k <= kmax; ++k)
    a[k] = (k % 2 == 0 ? 1.0 : -1.0) * binom_real(alpha + n, k);
  return a;
}

double inverse_recurrence_residual(double alpha, int n, int k) {
  const std::vector<double> a = inverse_coeffs(alpha, n, k);
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) {
    double rising = 1.0;  // binom(alpha+n+j-1, j)
    for (int r = 0; r < j; ++r) rising *= (alpha + n + r) / (r + 1);
    acc += a[k - j] * rising;
  }
  return acc;
}

double BiorthSystem::qeval(int k, double x) const {
  double acc = 0.0;
  for (int m = 0; m < n; ++m) acc += dual_coeffs[k][m] * base.weights[m](x);
  return acc;
}

BiorthSystem build_biorth(const EnsembleSpec& pe) {
  if (pe.kind != EnsembleSpec::Kind::pe)
    throw capability_error("build_biorth: expects a polynomial ensemble");
  const int n = pe.n;
  Eigen::MatrixXd moments(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) moments(j, k) = pe.weights[k].moment(j);

  // Unpivoted Doolittle LU keeps the degree structure: G = L U with L unit
  // lower triangular. Monic polynomials come from L^{-1} rows, dual
  // coefficients from U^{-T}.
  Eigen::MatrixXd lower = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd upper = moments;
  double scale = moments.cwiseAbs().maxCoeff();
  if (scale <= 0.0) throw degenerate_ensemble_error("build_biorth: zero moment matrix");
  for (int col = 0; col < n; ++col) {
    const double pivot = upper(col, col);
    if (std::abs(pivot) < 1e-13 * scale)
      throw degenerate_ensemble_error("build_biorth: singular moment matrix");
    for (int row = col + 1; row < n; ++row) {
      const double factor = upper(row, col) / pivot;
      lower(row, col) = factor;
      upper.row(row) -= factor * upper.row(col);
    }
  }

  const Eigen::MatrixXd linv =
      lower.triangularView<Eigen::UnitLower>().solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd uinvt =
      upper.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n)).transpose();

  BiorthSystem sys;
  sys.n = n;
  sys.base = pe;
  sys.polys.resize(n);
  sys.dual_coeffs.assign(n, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    sys.polys[j].c.assign(j + 1, 0.0);
    for (int m = 0; m <= j; ++m) sys.polys[j].c[m] = linv(j, m);
    for (int m = 0; m < n; ++m) sys.dual_coeffs[j][m] = uinvt(j, m);
  }
  return sys;
}

Weight transform_Q(const Weight& q, double alpha, int n) {
  if (alpha + n <= 0.0) throw dimension_error("transform_Q: alpha + n > 0 required");
  const double beta = alpha + n - 1.0;
  return convolve(Weight::laguerre(beta, 1.0 / std::tgamma(alpha + n)), q);
}

KernelRep kernel(const BiorthSystem& system) {
  KernelRep rep;
  rep.n = system.n;
  rep.lo = 1e300;
  rep.hi = -1e300;
  for (const Weight& w : system.base.weights) {
    rep.lo = std::min(rep.lo, w.effective_lo());
    rep.hi = std::max(rep.hi, w.effective_hi());
  }
  const BiorthSystem sys = system;
  rep.eval = [sys](double x, double y) {
    double acc = 0.0;
    for (int k = 0; k < sys.n; ++k) acc += sys.polys[k].eval(x) * sys.qeval(k, y);
    return acc;
  };
  return rep;
}

double kernel_trace(const KernelRep& rep) {
  const double mid = 0.5 * (rep.lo + rep.hi);
  const auto diag = [&](double x) { return cplx(rep.diag(x), 0.0); };
  const cplx left = integrate_panels_endpoint_c(diag, rep.lo, mid, 0.5);
  const cplx right = integrate_panels_endpoint_c(
      [&](double t) { return diag(rep.lo + rep.hi - t); }, rep.lo, mid, 0.5);
  return (left + right).real();
}

KernelRep transformed_kernel(const BiorthSystem& system, double alpha) {
  const int n = system.n;
  std::vector<Weight> smoothed;
  smoothed.reserve(n);
  for (const Weight& w : system.base.weights) smoothed.push_back(transform_Q(w, alpha, n));

  std::vector<MonicPolynomial> caps(n);
  for (int k = 0; k < n; ++k) caps[k] = transform_P(system.polys[k], alpha, n);

  KernelRep rep;
  rep.n = n;
  rep.lo = 1e300;
  rep.hi = -1e300;
  for (const Weight& w : smoothed) {
    rep.lo = std::min(rep.lo, w.effective_lo());
    rep.hi = std::max(rep.hi, w.effective_hi());
  }
  const std::vector<std::vector<double>> coeffs = system.dual_coeffs;
  rep.eval = [caps, smoothed, coeffs, n](double x, double y) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      double qy = 0.0;
      for (int m = 0; m < n; ++m) qy += coeffs[k][m] * smoothed[m](y);
      acc += caps[k].eval(x) * qy;
    }
    return acc;
  };
  return rep;
}

}  // namespace sphsum
