#include "sphsum/sums.hpp"

#include <cmath>

#include "sphsum/biorth.hpp"
#include "sphsum/errors.hpp"

namespace sphsum {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;

void require_pe(const EnsembleSpec& ens, const char* where) {
  if (ens.kind != EnsembleSpec::Kind::pe)
    throw capability_error(std::string(where) + ": expects a polynomial ensemble");
}

double binom(int m, int l) {
  double b = 1.0;
  for (int r = 1; r <= l; ++r) b = b * (m - r + 1) / r;
  return b;
}

double falling_factorial(double p, int l) {
  double f = 1.0;
  for (int r = 0; r < l; ++r) f *= p - r;
  return f;
}

}  // namespace

EnsembleSpec add_gue(const EnsembleSpec& pe) {
  require_pe(pe, "add_gue");
  std::vector<Weight> g;
  g.reserve(pe.weights.size());
  const Weight kernel = Weight::gaussian();
  for (const Weight& f : pe.weights) g.push_back(convolve(kernel, f));
  return EnsembleSpec::pe(std::move(g));
}

EnsembleSpec add_lue(const EnsembleSpec& pe, double alpha) {
  require_pe(pe, "add_lue");
  if (alpha <= -1.0) throw dimension_error("add_lue: alpha > -1 required");
  std::vector<Weight> g;
  g.reserve(pe.weights.size());
  const Weight kernel = Weight::laguerre(alpha + pe.n - 1.0);
  for (const Weight& f : pe.weights) g.push_back(convolve(kernel, f));
  return EnsembleSpec::pe(std::move(g));
}

EnsembleSpec add_dpe(const Weight& w1, const Weight& w2, int n) {
  return EnsembleSpec::dpe(n, convolve(w1, w2));
}

EnsembleSpec add_dpe_pe(const Weight& w, const EnsembleSpec& pe) {
  require_pe(pe, "add_dpe_pe");
  std::vector<Weight> g;
  g.reserve(pe.weights.size());
  for (const Weight& f : pe.weights) g.push_back(convolve(w, f));
  return EnsembleSpec::pe(std::move(g));
}

double weyl_joint_from_matrix(double matrix_density_value, const SpectralVector& x) {
  const int n = static_cast<int>(x.size());
  double log_superfact = 0.0;
  for (int j = 1; j <= n; ++j) log_superfact += std::lgamma(j + 1.0);
  const double m = 0.5 * n * (n - 1);
  const double delta = vandermonde(x);
  return std::exp(m * std::log(kPi) - log_superfact) * matrix_density_value * delta * delta;
}

double sum_density(const EnsembleSpec& a, const EnsembleSpec& b, const SpectralVector& x,
                   const SumDensityOptions& opt) {
  if (a.n != b.n) throw dimension_error("sum_density: ensemble dimensions differ");
  const TransformRep rep = multiply(transform_of(a), transform_of(b));
  const InverseResult inv = inverse(rep, x, opt.inverse);
  if (opt.kind == DensityKind::matrix) return inv.value;
  return weyl_joint_from_matrix(inv.value, x);
}

namespace {

// Normalization of the fixed-shift density: n! det[int y^{j-1} K(y, x_k) dy]
// over Vandermonde(x), with the column integrals by generalized
// Gauss-Laguerre after shifting to t = y - x. Computed once per x_fixed.
double lue_fixed_shift_norm(const SpectralVector& x_fixed, double alpha) {
  const int n = static_cast<int>(x_fixed.size());
  const double beta = alpha + n - 1.0;
  const QuadratureRule rule = QuadratureRule::laguerre(64, beta);
  FunctionFamily moment_rows;
  moment_rows.reserve(n);
  for (int j = 0; j < n; ++j) {
    moment_rows.push_back(
        CxFun{[j, beta, rule](double x, int m) -> cplx {
                // d^m/dx^m int (t+x)^j t^beta e^{-t} dt
                const double ff = falling_factorial(j, m);
                if (ff == 0.0) return 0.0;
                return ff * integrate(rule, [&](double t) {
                         return std::pow(t + x, j - m) * std::pow(t, beta) * std::exp(-t);
                       });
              },
              1 << 20});
  }
  const double norm = factorial(n) * confluent_det_ratio(moment_rows, x_fixed).real();
  if (!(std::abs(norm) > 0.0))
    throw quality_error("lue_fixed_shift_density: degenerate normalization");
  return norm;
}

double lue_fixed_shift_numerator(const SpectralVector& x_fixed, double alpha,
                                 const SpectralVector& y) {
  const int n = static_cast<int>(x_fixed.size());
  const double beta = alpha + n - 1.0;
  // rows g_j(x) = (y_j - x)_+^beta e^{-(y_j - x)}, with x-derivatives for
  // confluent x_fixed; the det ratio divides out Vandermonde(x)
  FunctionFamily rows;
  rows.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double yj = y[j];
    rows.push_back(CxFun{[yj, beta](double x, int m) -> cplx {
                           const double d = yj - x;
                           if (d <= 0.0) return 0.0;
                           double acc = 0.0;
                           for (int l = 0; l <= m; ++l)
                             acc += binom(m, l) * ((l % 2 == 0) ? 1.0 : -1.0) *
                                    falling_factorial(beta, l) * std::pow(d, beta - l);
                           return acc * std::exp(-d);
                         },
                         1 << 20});
  }
  return vandermonde(y) * confluent_det_ratio(rows, x_fixed).real();
}

}  // namespace

double lue_fixed_shift_density(const SpectralVector& x_fixed, double alpha,
                               const SpectralVector& y) {
  const int n = static_cast<int>(x_fixed.size());
  if (static_cast<int>(y.size()) != n)
    throw dimension_error("lue_fixed_shift_density: dimensions differ");
  if (alpha <= -1.0) throw dimension_error("lue_fixed_shift_density: alpha > -1");
  return lue_fixed_shift_numerator(x_fixed, alpha, y) / lue_fixed_shift_norm(x_fixed, alpha);
}

MarginalDensity eigen_marginal(const EnsembleSpec& ens) {
  EnsembleSpec as_pe = ens;
  switch (ens.kind) {
    case EnsembleSpec::Kind::gue:
      as_pe = EnsembleSpec::gue_as_pe(ens.n);
      break;
    case EnsembleSpec::Kind::lue:
      as_pe = EnsembleSpec::lue_as_pe(ens.n, ens.alpha);
      break;
    case EnsembleSpec::Kind::pe:
      break;
    default:
      throw capability_error("eigen_marginal: gue, lue or pe required");
  }
  const KernelRep rep = kernel(build_biorth(as_pe));
  MarginalDensity out;
  out.lo = rep.lo;
  out.hi = rep.hi;
  const double inv_n = 1.0 / ens.n;
  out.density = [rep, inv_n](double x) { return inv_n * rep.diag(x); };
  return out;
}

MarginalDensity lue_fixed_shift_marginal(const SpectralVector& x_fixed, double alpha) {
  const int n = static_cast<int>(x_fixed.size());
  if (n > 2) throw capability_error("lue_fixed_shift_marginal: n <= 2 only");
  double xmin = x_fixed[0], xmax = x_fixed[0];
  for (double v : x_fixed) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  MarginalDensity out;
  out.lo = xmin;
  out.hi = xmax + 60.0 + 4.0 * (alpha + n);
  SpectralVector xc = x_fixed;
  const double norm = lue_fixed_shift_norm(xc, alpha);
  if (n == 1) {
    out.density = [xc, alpha, norm](double y) {
      return lue_fixed_shift_numerator(xc, alpha, {y}) / norm;
    };
    return out;
  }
  const double hi = out.hi;
  out.density = [xc, alpha, xmin, hi, norm](double y1) {
    // integrate out the second eigenvalue; kinks sit at the fixed spectrum
    double acc = 0.0;
    std::vector<double> cuts{xmin};
    for (double v : xc)
      if (v > xmin) cuts.push_back(v);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      acc += integrate_panels(
          [&](double t) { return lue_fixed_shift_numerator(xc, alpha, {y1, t}); }, cuts[i],
          cuts[i + 1], 0.5);
    return acc / norm;  // symmetric joint: coordinate marginal = pooled marginal
  };
  return out;
}

}  // namespace sphsum
