#include "sphsum/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <vector>

#include "sphsum/errors.hpp"
#include "sphsum/simd_kernels.hpp"

namespace sphsum {
namespace {

constexpr cplx kI(0.0, 1.0);

double binom(int m, int l) {
  double b = 1.0;
  for (int r = 1; r <= l; ++r) b = b * (m - r + 1) / r;
  return b;
}

cplx ipow(cplx base, int e) {
  cplx acc = 1.0;
  for (int k = 0; k < e; ++k) acc *= base;
  return acc;
}

double ipow(double base, int e) {
  double acc = 1.0;
  for (int k = 0; k < e; ++k) acc *= base;
  return acc;
}

// d^r/dxi^r [ (i xi)^m e^{i sigma xi} ]
cplx phase_row_deriv(double sigma, int m, double xi, int r) {
  cplx acc = 0.0;
  for (int l = 0; l <= std::min(r, m); ++l) {
    double ff = 1.0;
    for (int t = 0; t < l; ++t) ff *= m - t;
    acc += binom(r, l) * ff * ipow(xi, m - l) * ipow(kI * sigma, r - l);
  }
  return acc * ipow(kI, m) * std::exp(kI * sigma * xi);
}

}  // namespace

cplx spherical_phi(const FrequencyVector& s, const SpectralVector& x, double cluster_tol) {
  const int n = static_cast<int>(s.size());
  if (static_cast<int>(x.size()) != n) throw dimension_error("spherical_phi: s.n != x.n");
  if (n < 1) throw dimension_error("spherical_phi: empty input");
  if (std::all_of(s.begin(), s.end(), [](double v) { return v == 0.0; })) return 1.0;

  const std::vector<double> sn = cluster_nodes(s, cluster_tol);
  const std::vector<double> xn = cluster_nodes(x, cluster_tol);

  // Pass 1 (x-direction): for every s-cluster value sigma and derivative
  // slot m, divided differences over x of (i x)^m e^{i sigma x}.
  // Pass 2 (s-direction): Hermite table per column, with the m-th
  // s-derivative of column k given by the pass-1 row (sigma, m).
  std::map<double, std::vector<std::vector<cplx>>> rows_by_sigma;
  {
    std::size_t i = 0;
    while (i < sn.size()) {
      std::size_t j = i;
      while (j < sn.size() && sn[j] == sn[i]) ++j;
      const double sigma = sn[i];
      const std::size_t mult = j - i;
      auto& rows = rows_by_sigma[sigma];
      rows.resize(mult);
      for (std::size_t m = 0; m < mult; ++m) {
        CxFun h{[sigma, m](double xi, int r) {
                  return phase_row_deriv(sigma, static_cast<int>(m), xi, r);
                },
                1 << 20};
        rows[m] = divided_difference_row(h, xn);
      }
      i = j;
    }
  }

  std::vector<cplx> table(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    CxFun col{[&rows_by_sigma, k](double sigma, int m) {
                return rows_by_sigma.at(sigma).at(m).at(k);
              },
              1 << 20};
    const std::vector<cplx> column = divided_difference_row(col, sn);
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(j) * n + k] = column[j];
  }

  double superfact = 1.0;
  for (int j = 0; j < n; ++j) superfact *= factorial(j);
  const long long half_count = static_cast<long long>(n) * (n - 1) / 2;
  return superfact * det_complex(table, n) / quadrant_power(half_count);
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 1) throw dimension_error("haar_unitary: n must be >= 1");
  Eigen::MatrixXcd z(n, n);
  const double inv_sqrt2 = 0.70710678118654752440;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = rng.complex_normal(inv_sqrt2);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : cplx(1.0);
  }
  return q;
}

PhiMcResult spherical_phi_mc(const FrequencyVector& s, const SpectralVector& x,
                             std::int64_t samples, std::uint64_t seed, int threads) {
  const int n = static_cast<int>(s.size());
  if (static_cast<int>(x.size()) != n) throw dimension_error("spherical_phi_mc: s.n != x.n");
  if (samples < 1) throw dimension_error("spherical_phi_mc: samples must be >= 1");

  constexpr std::int64_t kSub = 8192;
  const std::int64_t nsub = (samples + kSub - 1) / kSub;
  std::vector<kernels::TrigMoments> parts(static_cast<std::size_t>(nsub));

  const auto run_substream = [&](std::int64_t sub) {
    Rng rng(seed, static_cast<std::uint64_t>(sub));
    const std::int64_t count = std::min(kSub, samples - sub * kSub);
    std::vector<double> phases(static_cast<std::size_t>(count));
    for (std::int64_t b = 0; b < count; ++b) {
      const Eigen::MatrixXcd u = haar_unitary(n, rng);
      double t = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) t += s[j] * x[k] * std::norm(u(j, k));
      phases[static_cast<std::size_t>(b)] = t;
    }
    parts[static_cast<std::size_t>(sub)] =
        kernels::trig_moments(phases.data(), phases.size());
  };

  const int nworkers =
      std::max(1, static_cast<int>(std::min<std::int64_t>(threads, nsub)));
  if (nworkers == 1) {
    for (std::int64_t sub = 0; sub < nsub; ++sub) run_substream(sub);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w)
      pool.emplace_back([&, w] {
        for (std::int64_t sub = w; sub < nsub; sub += nworkers) run_substream(sub);
      });
    for (auto& th : pool) th.join();
  }

  kernels::TrigMoments total;
  for (const auto& p : parts) {
    total.c += p.c;
    total.s += p.s;
    total.c2 += p.c2;
    total.s2 += p.s2;
  }
  const double num = static_cast<double>(samples);
  const cplx mean(total.c / num, total.s / num);
  const double var_re = std::max(0.0, total.c2 / num - mean.real() * mean.real());
  const double var_im = std::max(0.0, total.s2 / num - mean.imag() * mean.imag());
  return {mean, std::sqrt((var_re + var_im) / num)};
}

}  // namespace sphsum
