#include "sphsum/mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "sphsum/errors.hpp"
#include "sphsum/spherical.hpp"

namespace sphsum {
namespace {

const double kInvSqrt2 = 0.70710678118654752440;

Eigen::MatrixXcd gue_matrix(int n, Rng& rng) {
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = rng.complex_normal(kInvSqrt2);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

Eigen::MatrixXcd lue_matrix(int n, int alpha, Rng& rng) {
  Eigen::MatrixXcd g(n, n + alpha);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n + alpha; ++j) g(i, j) = rng.complex_normal(kInvSqrt2);
  return g * g.adjoint();
}

SpectralVector eigenvalues_of(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  SpectralVector out(es.eigenvalues().size());
  for (int i = 0; i < es.eigenvalues().size(); ++i) out[i] = es.eigenvalues()[i];
  return out;
}

Eigen::MatrixXcd model_matrix(const MatrixModel& model, Rng& rng) {
  switch (model.kind) {
    case MatrixModel::Kind::gue:
      return gue_matrix(model.n, rng);
    case MatrixModel::Kind::lue:
      return lue_matrix(model.n, model.alpha, rng);
    case MatrixModel::Kind::fixed: {
      Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(model.spectrum.data(), model.n);
      const Eigen::MatrixXcd u = haar_unitary(model.n, rng);
      return u * d.asDiagonal() * u.adjoint();
    }
  }
  throw capability_error("model_matrix: unknown model kind");
}

}  // namespace

MatrixModel MatrixModel::gue(int n) {
  if (n < 1) throw dimension_error("MatrixModel::gue: n >= 1");
  MatrixModel m;
  m.kind = Kind::gue;
  m.n = n;
  return m;
}

MatrixModel MatrixModel::lue(int n, int alpha) {
  if (n < 1) throw dimension_error("MatrixModel::lue: n >= 1");
  if (alpha < 0) throw capability_error("MatrixModel::lue: sampling needs integer alpha >= 0");
  MatrixModel m;
  m.kind = Kind::lue;
  m.n = n;
  m.alpha = alpha;
  return m;
}

MatrixModel MatrixModel::fixed(SpectralVector x) {
  if (x.empty()) throw dimension_error("MatrixModel::fixed: empty spectrum");
  MatrixModel m;
  m.kind = Kind::fixed;
  m.n = static_cast<int>(x.size());
  m.spectrum = std::move(x);
  return m;
}

SpectralVector sample_gue(int n, Rng& rng) { return eigenvalues_of(gue_matrix(n, rng)); }

SpectralVector sample_lue(int n, int alpha, Rng& rng) {
  if (alpha < 0) throw capability_error("sample_lue: integer alpha >= 0 required");
  return eigenvalues_of(lue_matrix(n, alpha, rng));
}

SpectralVector sample_sum(const MatrixModel& a, const MatrixModel& b, Rng& rng) {
  if (a.n != b.n) throw dimension_error("sample_sum: dimensions differ");
  const Eigen::MatrixXcd x = model_matrix(a, rng);
  const Eigen::MatrixXcd y = model_matrix(b, rng);
  return eigenvalues_of(x + y);
}

double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf) {
  const std::size_t n = sorted_samples.size();
  if (n < 100) throw dimension_error("ks_distance: needs >= 100 samples");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_samples[i]);
    const double hi = static_cast<double>(i + 1) / n;
    const double lo = static_cast<double>(i) / n;
    d = std::max({d, std::abs(hi - f), std::abs(f - lo)});
  }
  return d;
}

NumericCdf::NumericCdf(const std::function<double(double)>& density, double a, double b,
                       int grid_points) {
  x_.resize(grid_points);
  cum_.resize(grid_points);
  const double h = (b - a) / (grid_points - 1);
  double run = 0.0;
  double prev = std::max(0.0, density(a));
  x_[0] = a;
  cum_[0] = 0.0;
  for (int i = 1; i < grid_points; ++i) {
    x_[i] = a + i * h;
    const double cur = std::max(0.0, density(x_[i]));
    run += 0.5 * (prev + cur) * h;
    cum_[i] = run;
    prev = cur;
  }
  mass_ = run;
  if (mass_ <= 0.0) throw quality_error("NumericCdf: density integrates to zero");
  for (double& c : cum_) c /= mass_;
}

double NumericCdf::operator()(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return 1.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return cum_[i] + t * (cum_[i + 1] - cum_[i]);
}

Histogram histogram_fd(std::vector<double> samples) {
  if (samples.size() < 4) throw dimension_error("histogram_fd: needs >= 4 samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  const double q1 = samples[n / 4];
  const double q3 = samples[(3 * n) / 4];
  const double iqr = std::max(q3 - q1, 1e-12);
  const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  const double lo = samples.front(), hi = samples.back();
  const int bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  Histogram h;
  h.edges.resize(bins + 1);
  h.density.assign(bins, 0.0);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
  const double bw = (hi - lo) / bins;
  for (double v : samples) {
    int idx = std::min(bins - 1, static_cast<int>((v - lo) / bw));
    h.density[static_cast<std::size_t>(std::max(0, idx))] += 1.0;
  }
  for (double& d : h.density) d /= static_cast<double>(n) * bw;
  return h;
}

}  // namespace sphsum
