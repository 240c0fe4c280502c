#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "sphsum/rng.hpp"
#include "sphsum/spherical.hpp"

using namespace sphsum;

namespace {

FrequencyVector random_vec(Rng& rng, int n, double reach) {
  FrequencyVector v(n);
  for (auto& x : v) x = reach * (2.0 * rng.uniform() - 1.0);
  return v;
}

}  // namespace

TEST_CASE("spherical function closed values") {
  CHECK(spherical_phi({0.0, 0.0}, {3.0, -1.0}) == cplx(1.0, 0.0));
  const cplx scalar = spherical_phi({0.8}, {2.0});
  CHECK(scalar.real() == doctest::Approx(std::cos(1.6)).epsilon(1e-13));
  CHECK(scalar.imag() == doctest::Approx(std::sin(1.6)).epsilon(1e-13));
  for (double t : {0.3, 0.7, 1.9}) {
    const cplx v = spherical_phi({t, -t}, {1.0, -1.0});
    CHECK(v.real() == doctest::Approx(std::sin(2.0 * t) / (2.0 * t)).epsilon(1e-11));
    CHECK(std::abs(v.imag()) < 1e-11);
  }
}

TEST_CASE("spherical function symmetries") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 3);
    FrequencyVector s = random_vec(rng, n, 3.0);
    SpectralVector x = random_vec(rng, n, 3.0);
    const cplx base = spherical_phi(s, x);

    FrequencyVector s2 = s;
    SpectralVector x2 = x;
    std::reverse(s2.begin(), s2.end());
    std::rotate(x2.begin(), x2.begin() + 1, x2.end());
    CHECK(std::abs(spherical_phi(s2, x) - base) < 1e-10);
    CHECK(std::abs(spherical_phi(s, x2) - base) < 1e-10);

    CHECK(std::abs(base) <= 1.0 + 1e-10);

    FrequencyVector ms = s;
    for (auto& v : ms) v = -v;
    SpectralVector mx = x;
    for (auto& v : mx) v = -v;
    CHECK(std::abs(spherical_phi(ms, x) - std::conj(base)) < 1e-12);
    CHECK(std::abs(spherical_phi(s, mx) - std::conj(base)) < 1e-12);
  }
}

TEST_CASE("spherical function confluence: Richardson check") {
  const SpectralVector x{0.4, -1.2, 0.9};
  const FrequencyVector s{1.1, 1.1, -0.6};
  const cplx limit = spherical_phi(s, x);
  const auto perturbed = [&](double eps) {
    return spherical_phi({1.1, 1.1 + eps, -0.6}, x);
  };
  const cplx richardson = (10.0 * perturbed(1e-4) - perturbed(1e-3)) / 9.0;
  CHECK(std::abs(richardson - limit) < 1e-5);
}

TEST_CASE("haar unitaries are unitary with the right moments") {
  Rng rng(23);
  for (int n : {1, 2, 5}) {
    const Eigen::MatrixXcd u = haar_unitary(n, rng);
    const double err = (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    CHECK(err < 1e-12);
  }
  for (int n : {2, 3}) {
    const int samples = 100000;
    double mean = 0.0, mean2 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Eigen::MatrixXcd u = haar_unitary(n, rng);
      const double v = std::norm(u(0, 0));
      mean += v;
      mean2 += v * v;
    }
    mean /= samples;
    mean2 /= samples;
    const double se = std::sqrt((mean2 - mean * mean) / samples);
    CHECK(std::abs(mean - 1.0 / n) <= 3.0 * se);
  }
}

TEST_CASE("monte carlo spherical estimates agree with the determinantal formula") {
  const PhiMcResult at_zero = spherical_phi_mc({0.0, 0.0}, {1.0, 2.0}, 1000, 1);
  CHECK(at_zero.estimate == cplx(1.0, 0.0));
  CHECK(at_zero.stderr_value == 0.0);

  const FrequencyVector s2{1.0, 2.0};
  const SpectralVector x2{0.5, -0.5};
  const PhiMcResult mc2 = spherical_phi_mc(s2, x2, 100000, 99);
  CHECK(std::abs(mc2.estimate - spherical_phi(s2, x2)) <= 3.0 * mc2.stderr_value);

  Rng rng(31);
  const FrequencyVector s3 = random_vec(rng, 3, 2.0);
  const SpectralVector x3 = random_vec(rng, 3, 2.0);
  const PhiMcResult mc3 = spherical_phi_mc(s3, x3, 100000, 100);
  CHECK(std::abs(mc3.estimate - spherical_phi(s3, x3)) <= 3.0 * mc3.stderr_value);
}

TEST_CASE("monte carlo estimator is deterministic and thread-invariant") {
  const FrequencyVector s{0.7, -0.2};
  const SpectralVector x{1.4, 0.1};
  const PhiMcResult a = spherical_phi_mc(s, x, 30000, 7, 1);
  const PhiMcResult b = spherical_phi_mc(s, x, 30000, 7, 4);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_value == b.stderr_value);
  const PhiMcResult c = spherical_phi_mc(s, x, 30000, 8, 1);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("functional equation: averaged conjugated shift factorizes") {
  // MC average over V of phi_s(A + U1 V B V* U1*) = phi_s(A) phi_s(B)
  const FrequencyVector s{0.9, -0.4};
  const SpectralVector a{0.3, -0.8};
  const SpectralVector b{1.1, 0.2};
  Rng rng(41);
  const Eigen::MatrixXcd u1 = haar_unitary(2, rng);
  const Eigen::MatrixXcd amat = Eigen::Vector2d(a[0], a[1]).asDiagonal();
  const Eigen::MatrixXcd bmat = Eigen::Vector2d(b[0], b[1]).asDiagonal();

  const int samples = 100000;
  cplx acc = 0.0;
  double acc2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd v = haar_unitary(2, rng);
    const Eigen::MatrixXcd m = amat + u1 * v * bmat * v.adjoint() * u1.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    const cplx phi = spherical_phi(s, {es.eigenvalues()[0], es.eigenvalues()[1]});
    acc += phi;
    acc2 += std::norm(phi);
  }
  const cplx mean = acc / static_cast<double>(samples);
  const double var = std::max(0.0, acc2 / samples - std::norm(mean));
  const double se = std::sqrt(var / samples);
  const cplx want = spherical_phi(s, a) * spherical_phi(s, b);
  CHECK(std::abs(mean - want) <= 3.0 * se + 1e-12);
}
