#include "sphsum/ensembles.hpp"

#include <algorithm>
#include <cmath>

#include "sphsum/errors.hpp"

namespace sphsum {
namespace {

constexpr cplx kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846264338328;

cplx ipow(cplx base, int e) {
  cplx acc = 1.0;
  for (int k = 0; k < e; ++k) acc *= base;
  return acc;
}

double log_superfact(int n) {  // log prod_{j=1}^{n} j!
  double acc = 0.0;
  for (int j = 1; j <= n; ++j) acc += std::lgamma(j + 1.0);
  return acc;
}

void check_dim(const EnsembleSpec& ens, const SpectralVector& x, const char* where) {
  if (static_cast<int>(x.size()) != ens.n) throw dimension_error(std::string(where) + ": x.n != ens.n");
}

// CxFun view of a weight's derivative ladder, shifted by `base_order`.
CxFun weight_fun(const Weight& w, int base_order = 0) {
  return CxFun{[w, base_order](double x, int m) { return cplx(w.derivative(x, base_order + m)); },
               1 << 20};
}

double pe_eigen_normalization(const std::vector<Weight>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<cplx> moments(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      moments[static_cast<std::size_t>(j) * n + k] = weights[k].moment(j);
  const double det = det_complex(moments, n).real();
  double scale = 1.0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(weights[k].moment(0)));
  if (std::abs(det) < 1e-12 * std::pow(scale, n))
    throw degenerate_ensemble_error("polynomial ensemble moment matrix is singular");
  return factorial(n) * det;
}

}  // namespace

EnsembleSpec EnsembleSpec::gue(int n) {
  if (n < 1) throw dimension_error("gue: n >= 1");
  EnsembleSpec e;
  e.kind = Kind::gue;
  e.n = n;
  return e;
}

EnsembleSpec EnsembleSpec::lue(int n, double alpha) {
  if (n < 1) throw dimension_error("lue: n >= 1");
  if (alpha <= -1.0) throw dimension_error("lue: alpha > -1 required");
  EnsembleSpec e;
  e.kind = Kind::lue;
  e.n = n;
  e.alpha = alpha;
  return e;
}

EnsembleSpec EnsembleSpec::pe(std::vector<Weight> weights) {
  if (weights.empty()) throw dimension_error("pe: needs at least one weight");
  EnsembleSpec e;
  e.kind = Kind::pe;
  e.n = static_cast<int>(weights.size());
  e.weights = std::move(weights);
  return e;
}

EnsembleSpec EnsembleSpec::dpe(int n, Weight generator) {
  if (n < 1) throw dimension_error("dpe: n >= 1");
  if (std::abs(generator.mass()) < 1e-14)
    throw degenerate_ensemble_error("dpe: generator must have nonzero integral");
  EnsembleSpec e;
  e.kind = Kind::dpe;
  e.n = n;
  e.generator = std::move(generator);
  return e;
}

EnsembleSpec EnsembleSpec::lue_as_pe(int n, double alpha) {
  std::vector<Weight> w;
  w.reserve(n);
  for (int k = 1; k <= n; ++k) w.push_back(Weight::laguerre(alpha + k - 1));
  return pe(std::move(w));
}

EnsembleSpec EnsembleSpec::gue_as_pe(int n) {
  std::vector<Weight> w;
  w.reserve(n);
  for (int k = 1; k <= n; ++k) {
    std::vector<double> coeffs(k, 0.0);
    coeffs.back() = 1.0;
    w.push_back(Weight::poly_gauss(coeffs));
  }
  return pe(std::move(w));
}

double joint_eigen_density(const EnsembleSpec& ens, const SpectralVector& x) {
  check_dim(ens, x, "joint_eigen_density");
  const int n = ens.n;
  const double delta = vandermonde(x);
  switch (ens.kind) {
    case EnsembleSpec::Kind::gue: {
      const double m = 0.5 * n * (n - 1);
      const double expo =
          (m - 0.5 * n * n) * std::log(kPi) - 0.5 * n * std::log(2.0) - log_superfact(n);
      double q = 0.0;
      for (double xi : x) q += xi * xi;
      return std::exp(expo - 0.5 * q) * delta * delta;
    }
    case EnsembleSpec::Kind::lue: {
      double logc = 0.0;
      for (int j = 1; j <= n; ++j)
        logc -= std::lgamma(ens.alpha + j) + std::lgamma(j + 1.0);
      double prod = 1.0;
      for (double xi : x) {
        if (xi < 0.0) return 0.0;
        prod *= std::pow(xi, ens.alpha) * std::exp(-xi);
      }
      return std::exp(logc) * prod * delta * delta;
    }
    case EnsembleSpec::Kind::pe: {
      const double z = pe_eigen_normalization(ens.weights);
      std::vector<cplx> vals(static_cast<std::size_t>(n) * n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          vals[static_cast<std::size_t>(j) * n + k] = ens.weights[k](x[j]);
      return delta * det_complex(vals, n).real() / z;
    }
    case EnsembleSpec::Kind::dpe: {
      const Weight& w = *ens.generator;
      std::vector<cplx> moments(static_cast<std::size_t>(n) * n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const int order = k;  // column k is w^{(k)}
          const QuadratureRule rule = QuadratureRule::legendre(
              400, w.effective_lo(), w.effective_hi());
          moments[static_cast<std::size_t>(j) * n + k] =
              integrate_c(rule, [&](double t) {
                return cplx(std::pow(t, j) * w.derivative(t, order));
              });
        }
      const double z = factorial(n) * det_complex(moments, n).real();
      if (std::abs(z) < 1e-300) throw degenerate_ensemble_error("dpe: singular normalization");
      std::vector<cplx> vals(static_cast<std::size_t>(n) * n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          vals[static_cast<std::size_t>(j) * n + k] = w.derivative(x[j], k);
      return delta * det_complex(vals, n).real() / z;
    }
  }
  return 0.0;
}

double matrix_density(const EnsembleSpec& ens, const SpectralVector& x) {
  check_dim(ens, x, "matrix_density");
  const int n = ens.n;
  const double m = 0.5 * n * (n - 1);
  switch (ens.kind) {
    case EnsembleSpec::Kind::gue: {
      double q = 0.0;
      for (double xi : x) q += xi * xi;
      return std::exp(-0.5 * n * std::log(2.0) - 0.5 * n * n * std::log(kPi) - 0.5 * q);
    }
    case EnsembleSpec::Kind::lue: {
      double logc = -m * std::log(kPi);
      for (int j = 1; j <= n; ++j) logc -= std::lgamma(ens.alpha + j);
      double prod = 1.0;
      for (double xi : x) {
        if (xi < 0.0) return 0.0;
        prod *= std::pow(xi, ens.alpha) * std::exp(-xi);
      }
      return std::exp(logc) * prod;
    }
    case EnsembleSpec::Kind::pe: {
      const double z = pe_eigen_normalization(ens.weights);
      FunctionFamily fam;
      for (const Weight& w : ens.weights) fam.push_back(weight_fun(w));
      const cplx ratio = confluent_det_ratio(fam, x);
      return std::exp(log_superfact(n) - m * std::log(kPi)) * ratio.real() / z;
    }
    case EnsembleSpec::Kind::dpe: {
      // same as PE with columns w^{(k-1)}
      const Weight& w = *ens.generator;
      FunctionFamily fam;
      for (int k = 0; k < n; ++k) fam.push_back(weight_fun(w, k));
      const cplx ratio = confluent_det_ratio(fam, x);
      std::vector<cplx> moments(static_cast<std::size_t>(n) * n);
      const QuadratureRule rule =
          QuadratureRule::legendre(400, w.effective_lo(), w.effective_hi());
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          moments[static_cast<std::size_t>(j) * n + k] = integrate_c(
              rule, [&](double t) { return cplx(std::pow(t, j) * w.derivative(t, k)); });
      const double z = factorial(n) * det_complex(moments, n).real();
      return std::exp(log_superfact(n) - m * std::log(kPi)) * ratio.real() / z;
    }
  }
  return 0.0;
}

namespace {

CFun gue_factor() {
  CFun f;
  f.decay = Decay::gaussian;
  f.eval = [](double s, int m) -> cplx {
    // d^m/ds^m e^{-s^2/2} via the coefficient recurrence q -> q' - s q
    std::vector<double> q{1.0};
    for (int k = 0; k < m; ++k) {
      std::vector<double> next(q.size() + 1, 0.0);
      for (std::size_t j = 1; j < q.size(); ++j) next[j - 1] += q[j] * static_cast<double>(j);
      for (std::size_t j = 0; j < q.size(); ++j) next[j + 1] -= q[j];
      q = std::move(next);
    }
    double acc = 0.0;
    for (std::size_t j = q.size(); j-- > 0;) acc = acc * s + q[j];
    return acc * std::exp(-0.5 * s * s);
  };
  return f;
}

CFun lue_factor(double beta) {
  CFun f;
  f.decay = Decay::algebraic;
  f.decay_exponent = beta;
  f.eval = [beta](double s, int m) -> cplx {
    double rising = 1.0;
    for (int k = 0; k < m; ++k) rising *= beta + k;
    return ipow(-kI, m) * rising * std::pow(cplx(1.0, s), -(beta + m));
  };
  return f;
}

CFun weight_fourier_fun(const Weight& w, bool force_numeric) {
  CFun f;
  if (w.decay() == Decay::gaussian) {
    f.decay = Decay::gaussian;
  } else {
    f.decay = Decay::algebraic;
    f.decay_exponent = w.fourier_algebraic_decay();
  }
  f.eval = [w, force_numeric](double s, int m) { return w.fourier_moment(s, m, force_numeric); };
  return f;
}

TransformRep make_pe_rep(const std::vector<Weight>& weights, bool force_numeric) {
  const int n = static_cast<int>(weights.size());
  DetRatioForm df;
  df.h.reserve(n);
  for (const Weight& w : weights) df.h.push_back(weight_fourier_fun(w, force_numeric));
  // self-normalization at s = 0 through the confluent (moment-expansion)
  // limit fixes the phase conventions in one step
  FunctionFamily fam;
  for (const CFun& c : df.h) fam.push_back(CxFun{c.eval, c.max_order});
  const cplx at_zero = confluent_det_ratio(fam, SpectralVector(n, 0.0));
  if (std::abs(at_zero) < 1e-300)
    throw degenerate_ensemble_error("pe transform vanishes at s = 0");
  df.prefactor = 1.0 / at_zero;
  return {n, std::move(df)};
}

}  // namespace

TransformRep transform_of(const EnsembleSpec& ens) {
  switch (ens.kind) {
    case EnsembleSpec::Kind::gue:
      return {ens.n, ProductForm{gue_factor()}};
    case EnsembleSpec::Kind::lue:
      return {ens.n, ProductForm{lue_factor(ens.alpha + ens.n)}};
    case EnsembleSpec::Kind::pe:
      return make_pe_rep(ens.weights, false);
    case EnsembleSpec::Kind::dpe: {
      const Weight w = *ens.generator;
      const double mass = w.mass();
      CFun base = weight_fourier_fun(w, false);
      CFun f = base;
      f.eval = [base, mass](double s, int m) { return base.eval(s, m) / mass; };
      return {ens.n, ProductForm{std::move(f)}};
    }
  }
  throw capability_error("transform_of: unknown ensemble kind");
}

PeNormalization pe_normalization(const std::vector<Weight>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<cplx> moments(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      moments[static_cast<std::size_t>(j) * n + k] = weights[k].moment(j);
  const cplx det = det_complex(moments, n);
  double scale = 1.0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(weights[k].moment(0)));
  if (std::abs(det) < 1e-12 * std::pow(scale, n))
    throw degenerate_ensemble_error("pe_normalization: weights are linearly dependent");
  double superfact = 1.0;
  for (int j = 0; j < n; ++j) superfact *= factorial(j);
  const cplx z = quadrant_power(-static_cast<long long>(n) * (n - 1) / 2) * det / superfact;
  PeNormalization out;
  out.modulus = std::abs(z);
  out.phase = z / out.modulus;
  return out;
}

namespace {

// Structure-blind tensor-quadrature evaluation of the forward transform for
// GUE/LUE at n <= 3. The phase tables P[j][m] = e^{-i s_j xi_m} make the
// permutation determinant a lookup.
cplx forward_tensor(const EnsembleSpec& ens, const FrequencyVector& s, int min_order) {
  const int n = ens.n;
  if (n > 3) throw capability_error("forward_numeric: generic path requires n <= 3");
  double smax = 0.0;
  for (double sj : s) smax = std::max(smax, std::abs(sj));

  QuadNodes nodes;
  std::vector<double> base;  // per-node density factor including quadrature weight
  double logc = 0.0;         // log of the constant part of the matrix density
  if (ens.kind == EnsembleSpec::Kind::gue) {
    const int order = std::max(min_order, smax <= 3.0 ? 96 : 160);
    nodes = quad_nodes(QuadratureRule::hermite(order));
    logc = -0.5 * n * std::log(2.0) - 0.5 * n * n * std::log(kPi);
    base.resize(nodes.x.size());
    for (std::size_t m = 0; m < nodes.x.size(); ++m)
      base[m] = nodes.w[m] * std::exp(-0.5 * nodes.x[m] * nodes.x[m]);
  } else if (ens.kind == EnsembleSpec::Kind::lue) {
    // Laguerre-expansion convergence ratio for the plane wave
    const double q = smax / std::sqrt(1.0 + smax * smax);
    const int needed = q > 0.0 ? static_cast<int>(std::ceil(std::log(1e-10) / std::log(q))) : 16;
    const int order = std::max(min_order, std::clamp(needed + 48, 96, 480));
    nodes = quad_nodes(QuadratureRule::laguerre(order, ens.alpha));
    logc = -0.5 * n * (n - 1) * std::log(kPi);
    for (int j = 1; j <= n; ++j) logc -= std::lgamma(ens.alpha + j);
    base.resize(nodes.x.size());
    for (std::size_t m = 0; m < nodes.x.size(); ++m)
      base[m] = nodes.w[m] * std::pow(nodes.x[m], ens.alpha) * std::exp(-nodes.x[m]);
  } else {
    throw capability_error("forward_numeric: tensor path handles GUE/LUE only");
  }

  const std::size_t q = nodes.x.size();
  std::vector<cplx> phases(static_cast<std::size_t>(n) * q);
  for (int j = 0; j < n; ++j)
    for (std::size_t m = 0; m < q; ++m)
      phases[static_cast<std::size_t>(j) * q + m] =
          std::exp(cplx(0.0, -s[j] * nodes.x[m]));

  cplx total = 0.0;
  const auto phase = [&](int j, std::size_t m) -> const cplx& {
    return phases[static_cast<std::size_t>(j) * q + m];
  };
  if (n == 1) {
    for (std::size_t m = 0; m < q; ++m) total += base[m] * phase(0, m);
  } else if (n == 2) {
    for (std::size_t m0 = 0; m0 < q; ++m0)
      for (std::size_t m1 = 0; m1 < q; ++m1) {
        const double dx = nodes.x[m1] - nodes.x[m0];
        const cplx det = phase(0, m0) * phase(1, m1) - phase(0, m1) * phase(1, m0);
        total += base[m0] * base[m1] * det * dx;
      }
  } else {
    for (std::size_t m0 = 0; m0 < q; ++m0)
      for (std::size_t m1 = 0; m1 < q; ++m1) {
        const double d01 = nodes.x[m1] - nodes.x[m0];
        const double w01 = base[m0] * base[m1];
        for (std::size_t m2 = 0; m2 < q; ++m2) {
          const double delta =
              d01 * (nodes.x[m2] - nodes.x[m0]) * (nodes.x[m2] - nodes.x[m1]);
          const cplx det = phase(0, m0) * (phase(1, m1) * phase(2, m2) - phase(1, m2) * phase(2, m1)) -
                           phase(0, m1) * (phase(1, m0) * phase(2, m2) - phase(1, m2) * phase(2, m0)) +
                           phase(0, m2) * (phase(1, m0) * phase(2, m1) - phase(1, m1) * phase(2, m0));
          total += w01 * base[m2] * det * delta;
        }
      }
  }
  const long long half_count = static_cast<long long>(n) * (n - 1) / 2;
  const cplx pref = std::pow(kPi, double(half_count)) * quadrant_power(half_count) /
                    (factorial(n) * vandermonde(s));
  return pref * std::exp(logc) * total;
}

}  // namespace

cplx forward_numeric(const EnsembleSpec& ens, const FrequencyVector& s,
                     const QuadratureRule& quad) {
  if (static_cast<int>(s.size()) != ens.n) throw dimension_error("forward_numeric: s.n != ens.n");
  switch (ens.kind) {
    case EnsembleSpec::Kind::pe:
      return evaluate(make_pe_rep(ens.weights, true), s);
    case EnsembleSpec::Kind::dpe: {
      // Andreief fast path for the derivative family: product form, with the
      // 1-d Fourier integrals forced to quadrature
      const Weight& w = *ens.generator;
      cplx acc = 1.0;
      const cplx mass = w.fourier_moment(0.0, 0, true);
      for (double sj : s) acc *= w.fourier_moment(sj, 0, true) / mass;
      return acc;
    }
    default:
      return forward_tensor(ens, s, quad.order);
  }
}

}  // namespace sphsum
