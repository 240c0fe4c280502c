#include "sphsum/cfun.hpp"

#include <algorithm>
#include <vector>

namespace sphsum {
namespace {

// binomial coefficients C(m, l) for small m
std::vector<double> binom_row(int m) {
  std::vector<double> row(m + 1, 1.0);
  for (int l = 1; l <= m; ++l) row[l] = row[l - 1] * (m - l + 1) / l;
  return row;
}

}  // namespace

CFun cfun_product(const CFun& a, const CFun& b) {
  CFun out;
  out.max_order = std::min(a.max_order, b.max_order);
  if (a.decay == Decay::gaussian || b.decay == Decay::gaussian) {
    out.decay = Decay::gaussian;
  } else if (a.decay == Decay::compact || b.decay == Decay::compact) {
    out.decay = Decay::compact;
  } else if (a.decay == Decay::exponential || b.decay == Decay::exponential) {
    out.decay = Decay::exponential;
  } else {
    out.decay = Decay::algebraic;
  }
  out.decay_exponent = a.decay_exponent + b.decay_exponent;
  const auto ae = a.eval;
  const auto be = b.eval;
  out.eval = [ae, be](double t, int m) {
    const auto c = binom_row(m);
    std::complex<double> acc = 0.0;
    for (int l = 0; l <= m; ++l) acc += c[l] * ae(t, l) * be(t, m - l);
    return acc;
  };
  return out;
}

CFun cfun_monomial_times(int k, const CFun& f) {
  CFun out = f;
  if (out.decay == Decay::algebraic) out.decay_exponent = f.decay_exponent - k;
  const auto fe = f.eval;
  out.eval = [fe, k](double t, int m) {
    // Leibniz; t^k has only k+1 nonzero derivatives
    const auto c = binom_row(m);
    std::complex<double> acc = 0.0;
    for (int l = 0; l <= std::min(m, k); ++l) {
      double coeff = 1.0;  // falling factorial k (k-1) ... (k-l+1)
      for (int r = 0; r < l; ++r) coeff *= (k - r);
      acc += c[l] * coeff * std::pow(t, k - l) * fe(t, m - l);
    }
    return acc;
  };
  return out;
}

}  // namespace sphsum
