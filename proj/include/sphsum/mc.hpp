#pragma once

#include <cstdint>
#include <functional>

#include "sphsum/detkit.hpp"
#include "sphsum/rng.hpp"

namespace sphsum {

/// Samplable matrix models: GUE, LUE with integer alpha (Wishart
/// construction), or a fixed spectrum conjugated by an independent Haar
/// unitary when it enters a sum.
struct MatrixModel {
  enum class Kind { gue, lue, fixed };
  Kind kind = Kind::gue;
  int n = 1;
  int alpha = 0;            // lue
  SpectralVector spectrum;  // fixed

  static MatrixModel gue(int n);
  static MatrixModel lue(int n, int alpha);
  static MatrixModel fixed(SpectralVector x);
};

/// Eigenvalues (ascending) of a GUE matrix: diagonal N(0,1), off-diagonal
/// complex with independent N(0, 1/2) parts.
SpectralVector sample_gue(int n, Rng& rng);

/// Eigenvalues of G G* with G an n x (n+alpha) complex Gaussian matrix with
/// unit total variance per entry. alpha must be a nonnegative integer.
SpectralVector sample_lue(int n, int alpha, Rng& rng);

/// Eigenvalues of X + Y with both terms sampled at matrix level.
SpectralVector sample_sum(const MatrixModel& a, const MatrixModel& b, Rng& rng);

/// sup-norm distance between the empirical CDF of the sorted sample and the
/// given CDF. Requires >= 100 samples.
double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf);

/// Cumulative distribution built from a density on [a, b] by composite
/// quadrature; clamps to {0, 1} outside. total_mass() reports the
/// unnormalized integral as a quality signal.
class NumericCdf {
 public:
  NumericCdf(const std::function<double(double)>& density, double a, double b,
             int grid_points = 8192);
  double operator()(double x) const;
  double total_mass() const { return mass_; }

 private:
  std::vector<double> x_, cum_;
  double mass_ = 0.0;
};

struct Histogram {
  std::vector<double> edges;    // size bins + 1
  std::vector<double> density;  // size bins, normalized to unit area
};

/// Freedman-Diaconis binning of a sample.
Histogram histogram_fd(std::vector<double> samples);

}  // namespace sphsum
