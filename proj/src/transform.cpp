#include "sphsum/transform.hpp"

#include <cmath>

#include "sphsum/errors.hpp"
#include "sphsum/oscillatory.hpp"
#include "sphsum/quadrature.hpp"

namespace sphsum {
namespace {

constexpr cplx kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;

FunctionFamily as_family(const std::vector<CFun>& h) {
  FunctionFamily fam;
  fam.reserve(h.size());
  for (const CFun& f : h) fam.push_back(CxFun{f.eval, f.max_order});
  return fam;
}

}  // namespace

cplx evaluate(const TransformRep& rep, const FrequencyVector& s, double cluster_tol) {
  if (static_cast<int>(s.size()) != rep.n) throw dimension_error("evaluate: s.n != rep.n");
  if (const auto* pf = std::get_if<ProductForm>(&rep.form)) {
    cplx acc = 1.0;
    for (double sj : s) acc *= pf->factor.eval(sj, 0);
    return acc;
  }
  if (const auto* df = std::get_if<DetRatioForm>(&rep.form)) {
    return df->prefactor * confluent_det_ratio(as_family(df->h), s, cluster_tol);
  }
  return std::get<NumericForm>(rep.form).eval(s);
}

TransformRep multiply(const TransformRep& a, const TransformRep& b) {
  if (a.n != b.n) throw dimension_error("multiply: rep dimensions differ");
  const auto* pa = std::get_if<ProductForm>(&a.form);
  const auto* pb = std::get_if<ProductForm>(&b.form);
  const auto* da = std::get_if<DetRatioForm>(&a.form);
  const auto* db = std::get_if<DetRatioForm>(&b.form);

  if (pa && pb) return {a.n, ProductForm{cfun_product(pa->factor, pb->factor)}};
  if ((pa && db) || (pb && da)) {
    const ProductForm& prod = pa ? *pa : *pb;
    const DetRatioForm& det = pa ? *db : *da;
    DetRatioForm out;
    out.prefactor = det.prefactor;
    out.h.reserve(det.h.size());
    for (const CFun& col : det.h) out.h.push_back(cfun_product(prod.factor, col));
    return {a.n, std::move(out)};
  }
  // det-ratio products leave the class; degrade to a numeric form
  NumericForm nf;
  Decay decay = Decay::algebraic;
  const auto decay_of = [](const TransformRep& r) {
    if (const auto* p = std::get_if<ProductForm>(&r.form)) return p->factor.decay;
    if (const auto* d = std::get_if<DetRatioForm>(&r.form))
      return d->h.empty() ? Decay::algebraic : d->h.front().decay;
    return std::get<NumericForm>(r.form).decay;
  };
  if (decay_of(a) == Decay::gaussian || decay_of(b) == Decay::gaussian) decay = Decay::gaussian;
  nf.decay = decay;
  TransformRep ac = a, bc = b;
  nf.eval = [ac, bc](const FrequencyVector& s) { return evaluate(ac, s) * evaluate(bc, s); };
  return {a.n, std::move(nf)};
}

namespace {

// Columns for the determinantal inversion fast path: Product becomes a
// det-ratio with h_j(s) = s^{j-1} factor(s).
std::vector<CFun> inversion_columns(const TransformRep& rep, cplx& prefactor) {
  if (const auto* pf = std::get_if<ProductForm>(&rep.form)) {
    prefactor = 1.0;
    std::vector<CFun> h;
    h.reserve(rep.n);
    for (int j = 0; j < rep.n; ++j) h.push_back(cfun_monomial_times(j, pf->factor));
    return h;
  }
  const auto& df = std::get<DetRatioForm>(rep.form);
  prefactor = df.prefactor;
  return df.h;
}

InverseResult inverse_numeric(const TransformRep& rep, const SpectralVector& x,
                              const InverseOptions& opt) {
  const int n = rep.n;
  if (n > 2) throw capability_error("NumericForm inversion is restricted to n <= 2");
  const auto& nf = std::get<NumericForm>(rep.form);
  const long long half_count = static_cast<long long>(n) * (n - 1) / 2;
  const cplx pref = quadrant_power(-half_count) * std::pow(kPi, -double(half_count)) /
                    (std::pow(kTwoPi, n) * factorial(n) * vandermonde(x));

  const auto integrand = [&](const FrequencyVector& s) {
    std::vector<cplx> e(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        e[static_cast<std::size_t>(j) * n + k] = std::exp(kI * s[j] * x[k]);
    return nf.eval(s) * det_complex(e, n) * vandermonde(s);
  };

  cplx total;
  if (nf.decay == Decay::gaussian) {
    const QuadNodes q = quad_nodes(QuadratureRule::hermite(128));
    if (n == 1) {
      total = 0.0;
      for (std::size_t i = 0; i < q.x.size(); ++i) total += q.w[i] * integrand({q.x[i]});
    } else {
      total = 0.0;
      for (std::size_t i = 0; i < q.x.size(); ++i)
        for (std::size_t j = 0; j < q.x.size(); ++j)
          total += q.w[i] * q.w[j] * integrand({q.x[i], q.x[j]});
    }
  } else {
    // oscillation-resolving panels, fixed truncation budget
    double xmax = 1.0;
    for (double xi : x) xmax = std::max(xmax, std::abs(xi));
    const double width = std::min(1.0, kPi / (2.0 * xmax));
    const double cap = opt.numeric_s_cap;
    if (n == 1) {
      total = integrate_panels_c([&](double s) { return integrand({s}); }, -cap, cap, width);
    } else {
      // tensor product of panel rules
      const int per = std::max(1, static_cast<int>(std::ceil(2.0 * cap / width)));
      const QuadNodes base = quad_nodes(QuadratureRule::legendre(8, -1.0, 1.0));
      const double h = 2.0 * cap / per;
      std::vector<double> sx, sw;
      for (int p = 0; p < per; ++p) {
        const double mid = -cap + (p + 0.5) * h;
        for (std::size_t i = 0; i < base.x.size(); ++i) {
          sx.push_back(mid + 0.5 * h * base.x[i]);
          sw.push_back(0.5 * h * base.w[i]);
        }
      }
      total = 0.0;
      for (std::size_t i = 0; i < sx.size(); ++i)
        for (std::size_t j = 0; j < sx.size(); ++j)
          total += sw[i] * sw[j] * integrand({sx[i], sx[j]});
    }
  }
  const cplx value = pref * total;
  return {value.real(), std::abs(value.imag())};
}

}  // namespace

InverseResult inverse(const TransformRep& rep, const SpectralVector& x,
                      const InverseOptions& opt) {
  const int n = rep.n;
  if (static_cast<int>(x.size()) != n) throw dimension_error("inverse: x.n != rep.n");

  InverseResult res;
  if (std::holds_alternative<NumericForm>(rep.form)) {
    res = inverse_numeric(rep, x, opt);
  } else {
    cplx colpref;
    const std::vector<CFun> h = inversion_columns(rep, colpref);
    FourierOptions fopt;
    fopt.tol = opt.tol;
    // Row family G_j(xi) = int h_j(s) (is)^r e^{i s xi} ds handed to the
    // confluent det ratio, which divides out Vandermonde(x).
    FunctionFamily rows;
    rows.reserve(h.size());
    for (int j = 0; j < n; ++j) {
      const CFun hj = h[j];
      rows.push_back(CxFun{[hj, fopt](double xi, int r) {
                             const CFun g = cfun_monomial_times(r, hj);
                             return quadrant_power(r) * fourier_integral(g, xi, fopt);
                           },
                           1 << 20});
    }
    const cplx ratio = confluent_det_ratio(rows, x, opt.cluster_tol);
    const long long half_count = static_cast<long long>(n) * (n - 1) / 2;
    const cplx pref = quadrant_power(-half_count) *
                      std::pow(kPi, -double(half_count)) / std::pow(kTwoPi, n);
    const cplx value = pref * colpref * ratio;
    res = {value.real(), std::abs(value.imag())};
  }
  if (res.imag_residue > opt.imag_residue_max)
    throw quality_error("inverse: imaginary residue " + std::to_string(res.imag_residue) +
                        " signals an inconsistent rep");
  return res;
}

}  // namespace sphsum
