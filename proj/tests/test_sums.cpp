#include <cmath>

#include "doctest.h"
#include "sphsum/errors.hpp"
#include "sphsum/quadrature.hpp"
#include "sphsum/rng.hpp"
#include "sphsum/sums.hpp"

using namespace sphsum;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// convolution-theorem identity at random s: transform of the summed
// ensemble equals the product of the input transforms
void check_transform_identity(const EnsembleSpec& summed, const TransformRep& expected_a,
                              const TransformRep& expected_b, int points, double tol,
                              unsigned seed) {
  const TransformRep got = transform_of(summed);
  const TransformRep want = multiply(expected_a, expected_b);
  Rng rng(seed);
  for (int trial = 0; trial < points; ++trial) {
    FrequencyVector s(summed.n);
    for (auto& v : s) v = 3.0 * rng.uniform() - 1.5;
    const cplx a = evaluate(got, s);
    const cplx b = evaluate(want, s);
    CHECK(std::abs(a - b) <= tol * (1.0 + std::abs(b)));
  }
}

}  // namespace

TEST_CASE("add_gue: scalar gaussian widens and the transform identity holds") {
  const EnsembleSpec pe1 = EnsembleSpec::pe({Weight::gaussian()});
  const EnsembleSpec sum1 = add_gue(pe1);
  // g is proportional to e^{-y^2/4}
  const double ratio = sum1.weights[0](1.0) / sum1.weights[0](0.0);
  CHECK(ratio == doctest::Approx(std::exp(-0.25)).epsilon(1e-10));

  const EnsembleSpec pe = EnsembleSpec::lue_as_pe(2, 0.5);
  check_transform_identity(add_gue(pe), transform_of(EnsembleSpec::gue(2)), transform_of(pe), 5,
                           1e-6, 43);
}

TEST_CASE("add_gue: smoothing an indicator weight") {
  // f = 1 on [-1, 1] as a table weight; g(0) = int_{-1}^{1} e^{-x^2/2} dx
  std::vector<double> xs, ys;
  for (int i = 0; i <= 64; ++i) {
    xs.push_back(-1.0 + 2.0 * i / 64.0);
    ys.push_back(1.0);
  }
  const EnsembleSpec pe = EnsembleSpec::pe({Weight::table(xs, ys)});
  const EnsembleSpec sum = add_gue(pe);
  const double want =
      integrate_panels([](double x) { return std::exp(-0.5 * x * x); }, -1.0, 1.0, 0.25);
  CHECK(sum.weights[0](0.0) == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("add_lue: gamma convolution and both corollary identities") {
  const EnsembleSpec pe1 = EnsembleSpec::pe({Weight::laguerre(0.0)});
  const EnsembleSpec sum1 = add_lue(pe1, 0.0);
  for (double y : {0.5, 1.5, 3.0})
    CHECK(sum1.weights[0](y) == doctest::Approx(y * std::exp(-y)).epsilon(1e-8));

  const EnsembleSpec pe = EnsembleSpec::lue_as_pe(2, 0.0);
  check_transform_identity(add_lue(pe, 1.0), transform_of(EnsembleSpec::lue(2, 1.0)),
                           transform_of(pe), 5, 1e-6, 47);
}

TEST_CASE("add_lue agrees with the fixed-shift route averaged by andreief") {
  // route 2: density(y) ~ Vandermonde(y) det[int_0^inf x^{alpha+n-1} e^{-x}
  // f_k(y_j - x) dx], normalized through its own moment determinant
  const int n = 2;
  for (double alpha : {0.0, 1.0}) {
    const EnsembleSpec pe = EnsembleSpec::lue_as_pe(n, 0.0);
    const EnsembleSpec summed = add_lue(pe, alpha);

    const double beta = alpha + n - 1.0;
    // integrand x^beta e^{-x} f_k(y-x) lives on [0, y] with power endpoints
    const auto smoothed = [&](int k, double y) {
      if (y <= 0.0) return 0.0;
      const Weight& f = pe.weights[k];
      const auto val = [&](double x) {
        return cplx(std::pow(x, beta) * std::exp(-x) * f(y - x), 0.0);
      };
      const double mid = 0.5 * y;
      return (integrate_panels_endpoint_c(val, 0.0, mid, 0.5) +
              integrate_panels_endpoint_c([&](double t) { return val(y - t); }, 0.0, mid, 0.5))
          .real();
    };
    // normalization by the Andreief moment determinant of the direct route
    const QuadratureRule half = QuadratureRule::laguerre(200);
    double m00 = 0, m01 = 0, m10 = 0, m11 = 0;
    m00 = integrate(half, [&](double y) { return smoothed(0, y); });
    m01 = integrate(half, [&](double y) { return smoothed(1, y); });
    m10 = integrate(half, [&](double y) { return y * smoothed(0, y); });
    m11 = integrate(half, [&](double y) { return y * smoothed(1, y); });
    const double z = 2.0 * (m00 * m11 - m01 * m10);

    Rng rng(53);
    for (int trial = 0; trial < 4; ++trial) {
      const SpectralVector y{0.5 + 4.0 * rng.uniform(), 0.5 + 4.0 * rng.uniform()};
      const double det =
          smoothed(0, y[0]) * smoothed(1, y[1]) - smoothed(1, y[0]) * smoothed(0, y[1]);
      const double direct = (y[1] - y[0]) * det / z;
      const double fast = joint_eigen_density(summed, y);
      CHECK(fast == doctest::Approx(direct).epsilon(1e-6));
    }
  }
}

TEST_CASE("add_dpe: gaussians compose and reproduce gue+gue") {
  const EnsembleSpec sum = add_dpe(Weight::gaussian(), Weight::gaussian(), 2);
  REQUIRE(sum.kind == EnsembleSpec::Kind::dpe);
  // generator is sqrt(pi) e^{-x^2/4}
  CHECK((*sum.generator)(1.0) ==
        doctest::Approx(std::sqrt(kPi) * std::exp(-0.25)).epsilon(1e-10));
  const TransformRep rep = transform_of(sum);
  for (double s : {0.3, 1.1})
    CHECK(std::abs(evaluate(rep, {s, -s}) - std::exp(-2.0 * s * s)) < 1e-10);
}

TEST_CASE("add_dpe_pe generalizes both corollaries") {
  const EnsembleSpec pe = EnsembleSpec::lue_as_pe(2, 0.5);
  const EnsembleSpec via_gue = add_gue(pe);
  const EnsembleSpec via_dpe = add_dpe_pe(Weight::gaussian(), pe);
  for (double y : {-1.0, 0.4, 2.7})
    for (int k : {0, 1})
      CHECK(via_dpe.weights[k](y) == doctest::Approx(via_gue.weights[k](y)).epsilon(1e-8));

  const double alpha = 1.0;
  const EnsembleSpec via_lue = add_lue(pe, alpha);
  const EnsembleSpec via_dpe2 = add_dpe_pe(Weight::laguerre(alpha + pe.n - 1.0), pe);
  for (double y : {0.4, 2.7, 6.0})
    for (int k : {0, 1})
      CHECK(via_dpe2.weights[k](y) == doctest::Approx(via_lue.weights[k](y)).epsilon(1e-8));

  check_transform_identity(via_dpe2, transform_of(EnsembleSpec::lue(2, alpha)),
                           transform_of(pe), 4, 1e-6, 59);
}

TEST_CASE("smoothed weights stay nonnegative") {
  const EnsembleSpec pe = EnsembleSpec::lue_as_pe(2, 0.0);
  for (const EnsembleSpec& summed : {add_gue(pe), add_lue(pe, 0.5)}) {
    for (const Weight& g : summed.weights) {
      for (int i = 0; i <= 100; ++i) {
        const double y = g.effective_lo() + (g.effective_hi() - g.effective_lo()) * i / 100.0;
        CHECK(g(y) >= -1e-10);
      }
    }
  }
}

TEST_CASE("sum_density closed forms and commutativity") {
  // scalar LUE(0)+LUE(0) is the Gamma(2) density
  for (double y : {0.4, 1.3, 3.7})
    CHECK(sum_density(EnsembleSpec::lue(1, 0.0), EnsembleSpec::lue(1, 0.0), {y}) ==
          doctest::Approx(y * std::exp(-y)).epsilon(1e-7));

  // gue+gue at n=2 equals the rescaled-gue joint density
  const EnsembleSpec gue2 = EnsembleSpec::gue(2);
  Rng rng(61);
  for (int trial = 0; trial < 3; ++trial) {
    const SpectralVector x{3.0 * rng.uniform() - 1.5, 3.0 * rng.uniform() - 1.5};
    const SpectralVector half{x[0] / std::sqrt(2.0), x[1] / std::sqrt(2.0)};
    const double want = std::pow(2.0, -2.0) * matrix_density(gue2, half);
    const double got = sum_density(gue2, gue2, x, {DensityKind::matrix, {}});
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
    // joint variant applies the Weyl factor
    CHECK(sum_density(gue2, gue2, x) ==
          doctest::Approx(weyl_joint_from_matrix(want, x)).epsilon(1e-6));
  }

  const EnsembleSpec lue2 = EnsembleSpec::lue(2, 1.0);
  const SpectralVector probe{1.2, 2.9};
  CHECK(sum_density(gue2, lue2, probe) ==
        doctest::Approx(sum_density(lue2, gue2, probe)).epsilon(1e-8));
}

TEST_CASE("lue fixed-shift density: scalar forms and normalization") {
  CHECK(lue_fixed_shift_density({0.0}, 0.0, {0.8}) ==
        doctest::Approx(std::exp(-0.8)).epsilon(1e-10));
  CHECK(lue_fixed_shift_density({0.0}, 0.0, {-0.2}) == 0.0);
  // translation by the fixed spectrum
  CHECK(lue_fixed_shift_density({1.5}, 0.0, {2.3}) ==
        doctest::Approx(std::exp(-0.8)).epsilon(1e-10));

  // the normalization does not depend on x_fixed: the (cached-norm) marginal
  // integrates to one for two different fixed spectra
  for (const SpectralVector& xf : {SpectralVector{0.0, 1.0}, SpectralVector{0.4, 2.2}}) {
    const MarginalDensity marg = lue_fixed_shift_marginal(xf, 0.0);
    // the marginal has derivative kinks at the fixed eigenvalues
    double total = integrate_panels([&](double y) { return marg.density(y); }, xf[0], xf[1], 0.5);
    total += integrate_panels([&](double y) { return marg.density(y); }, xf[1], marg.hi, 0.5);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }

  // confluent fixed spectrum: the divided-difference limit matches a tiny
  // perturbation of the fixed matrix
  const double limit = lue_fixed_shift_density({1.0, 1.0}, 0.0, {1.7, 3.1});
  const double pert = lue_fixed_shift_density({1.0, 1.0 + 1e-6}, 0.0, {1.7, 3.1});
  CHECK(limit == doctest::Approx(pert).epsilon(1e-4));
}

TEST_CASE("eigen_marginal integrates to one") {
  for (const EnsembleSpec& ens :
       {EnsembleSpec::gue(2), EnsembleSpec::lue(2, 1.0), EnsembleSpec::lue_as_pe(3, 0.0)}) {
    const MarginalDensity marg = eigen_marginal(ens);
    const double total =
        integrate_panels([&](double x) { return marg.density(x); }, marg.lo, marg.hi, 0.5);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("sum operations reject non-pe inputs") {
  CHECK_THROWS_AS(add_gue(EnsembleSpec::gue(2)), capability_error);
  CHECK_THROWS_AS(add_lue(EnsembleSpec::dpe(2, Weight::gaussian()), 0.0), capability_error);
}
