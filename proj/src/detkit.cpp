#include "sphsum/detkit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "sphsum/errors.hpp"

namespace sphsum {

double vandermonde(const SpectralVector& v) {
  double prod = 1.0;
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t k = j + 1; k < v.size(); ++k) prod *= v[k] - v[j];
  return prod;
}

std::vector<double> cluster_nodes(const SpectralVector& v, double cluster_tol) {
  std::vector<double> z = v;
  std::sort(z.begin(), z.end());
  std::size_t start = 0;
  while (start < z.size()) {
    std::size_t end = start + 1;
    while (end < z.size()) {
      const double scale = std::max({1.0, std::abs(z[end]), std::abs(z[end - 1])});
      if (std::abs(z[end] - z[end - 1]) > cluster_tol * scale) break;
      ++end;
    }
    if (end - start > 1) {
      double mean = 0.0;
      for (std::size_t i = start; i < end; ++i) mean += z[i];
      mean /= static_cast<double>(end - start);
      for (std::size_t i = start; i < end; ++i) z[i] = mean;
    }
    start = end;
  }
  return z;
}

std::vector<cplx> divided_difference_row(const CxFun& f, const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  // c[i][j] = f[z_i..z_j], built by increasing width
  std::vector<std::vector<cplx>> c(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i) c[i][i] = f.eval(nodes[i], 0);
  for (int width = 1; width < n; ++width) {
    for (int i = 0; i + width < n; ++i) {
      const int j = i + width;
      if (nodes[j] == nodes[i]) {
        if (width > f.max_order)
          throw missing_derivative_error("cluster of size " + std::to_string(width + 1) +
                                         " needs derivative order " + std::to_string(width));
        c[i][j] = f.eval(nodes[i], width) / factorial(width);
      } else {
        c[i][j] = (c[i + 1][j] - c[i][j - 1]) / (nodes[j] - nodes[i]);
      }
    }
  }
  std::vector<cplx> row(n);
  for (int k = 0; k < n; ++k) row[k] = c[0][k];
  return row;
}

cplx confluent_det_ratio(const FunctionFamily& g, const SpectralVector& v, double cluster_tol) {
  const int n = static_cast<int>(v.size());
  if (static_cast<int>(g.size()) != n)
    throw dimension_error("confluent_det_ratio: family size != vector size");
  if (n == 0) throw dimension_error("confluent_det_ratio: empty input");
  const std::vector<double> nodes = cluster_nodes(v, cluster_tol);
  // Column-wise divided differences turn det[g_j(v_k)] into
  // det[g_j[v_1..v_k]] while dividing out the Vandermonde exactly; the
  // sorted node order cancels between numerator and denominator.
  std::vector<cplx> entries(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    const std::vector<cplx> row = divided_difference_row(g[j], nodes);
    for (int k = 0; k < n; ++k) entries[static_cast<std::size_t>(j) * n + k] = row[k];
  }
  return det_complex(entries, n);
}

double andreief_det(const FunctionFamily& f, const FunctionFamily& g, const QuadratureRule& quad) {
  const int n = static_cast<int>(f.size());
  if (static_cast<int>(g.size()) != n) throw dimension_error("andreief_det: family sizes differ");
  std::vector<cplx> gram(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const auto& fj = f[j];
      const auto& gk = g[k];
      gram[static_cast<std::size_t>(j) * n + k] =
          integrate_c(quad, [&](double x) { return fj.eval(x, 0) * gk.eval(x, 0); });
    }
  return factorial(n) * det_complex(gram, n).real();
}

cplx det_complex(const std::vector<cplx>& entries, int n) {
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = entries[static_cast<std::size_t>(j) * n + k];
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

cplx quadrant_power(long long m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace sphsum
