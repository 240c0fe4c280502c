#include <cmath>
#include <complex>

#include "doctest.h"
#include "sphsum/quadrature.hpp"
#include "sphsum/rng.hpp"
#include "sphsum/weights.hpp"

using namespace sphsum;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
using std::complex;
}  // namespace

TEST_CASE("gaussian fourier transform matches the closed form") {
  const Weight w = Weight::gaussian();
  for (double s : {0.0, 0.4, 1.0, 2.5, -1.3}) {
    const complex<double> want = std::sqrt(2.0 * kPi) * std::exp(-0.5 * s * s);
    CHECK(std::abs(w.fourier(s) - want) < 1e-12);
    CHECK(std::abs(w.fourier(s, /*force_numeric=*/true) - want) < 1e-8);
  }
  CHECK(w.mass() == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("laguerre-family fourier transform matches the closed form") {
  for (double p : {0.0, 1.0, 2.5}) {
    const Weight w = Weight::laguerre(p);
    for (double s : {0.0, 0.7, 2.0}) {
      const complex<double> want =
          std::tgamma(p + 1.0) * std::pow(complex<double>(1.0, s), -(p + 1.0));
      CHECK(std::abs(w.fourier(s) - want) < 1e-10);
      CHECK(std::abs(w.fourier(s, true) - want) < 1e-7 * (1.0 + std::abs(want)));
    }
  }
  // spec values: p = 0 gives 1/(1+is); zeroth moment is the mass
  const Weight e = Weight::laguerre(0.0);
  CHECK(std::abs(e.fourier(1.0) - complex<double>(0.5, -0.5)) < 1e-12);
  CHECK(e(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(Weight::laguerre(1.0)(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(integrate(QuadratureRule::laguerre(60),
                  [&](double x) { return Weight::laguerre(2.0)(x); }) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(laguerre_weight(2.0).mass() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("half-line weights vanish sharply below zero") {
  const Weight w = Weight::laguerre(1.5);
  CHECK(w(-1e-9) == 0.0);
  CHECK(w.derivative(-0.5, 1) == 0.0);
}

TEST_CASE("convolution closed forms and identities") {
  // gaussian * gaussian
  const Weight gg = convolve(Weight::gaussian(), Weight::gaussian());
  for (double x : {-2.0, 0.0, 0.9, 3.1})
    CHECK(gg(x) == doctest::Approx(std::sqrt(kPi) * std::exp(-0.25 * x * x)).epsilon(1e-8));
  // exp * exp = x e^{-x}
  const Weight ee = convolve(Weight::laguerre(0.0), Weight::laguerre(0.0));
  for (double x : {0.2, 1.0, 4.0})
    CHECK(ee(x) == doctest::Approx(x * std::exp(-x)).epsilon(1e-8));
}

TEST_CASE("tabulated convolution: fourier factorization and commutativity") {
  const Weight a = Weight::gaussian();
  const Weight b = Weight::laguerre(1.0);
  const Weight ab = convolve(a, b);
  CHECK(ab.support() == Support::full_line);
  const complex<double> lhs = ab.fourier(1.0);
  const complex<double> rhs = a.fourier(1.0) * b.fourier(1.0);
  CHECK(std::abs(lhs - rhs) < 1e-6);

  const Weight ba = convolve(b, a);
  for (double x : {-1.0, 0.3, 2.2, 5.0}) CHECK(ab(x) == doctest::Approx(ba(x)).epsilon(1e-8));
}

TEST_CASE("fourier symmetries") {
  Rng rng(3);
  const Weight weights[] = {Weight::gaussian(0.3, 1.2), Weight::laguerre(0.7),
                            Weight::poly_exp({1.0, 0.5}, 1.0)};
  for (const Weight& w : weights) {
    const double bound = integrate_panels([&](double x) { return std::abs(w(x)); },
                                          w.effective_lo(), w.effective_hi(), 0.5);
    for (int trial = 0; trial < 5; ++trial) {
      const double s = 4.0 * rng.uniform() - 2.0;
      CHECK(std::abs(w.fourier(-s) - std::conj(w.fourier(s))) < 1e-12);
      CHECK(std::abs(w.fourier(s)) <= bound + 1e-10);
    }
  }
}

TEST_CASE("derivative/fourier interchange") {
  // F[w^{(k)}](s) = (is)^k F[w](s) for smooth decaying w
  const Weight w = Weight::gaussian();
  for (int k : {1, 2, 3}) {
    for (double s : {0.5, 1.5}) {
      const complex<double> lhs = integrate_panels_c(
          [&](double x) {
            return w.derivative(x, k) * std::exp(complex<double>(0.0, -s * x));
          },
          w.effective_lo(), w.effective_hi(), 0.5);
      const complex<double> rhs = std::pow(complex<double>(0.0, s), k) * w.fourier(s);
      CHECK(std::abs(lhs - rhs) < 1e-6);
    }
  }
}

TEST_CASE("analytic derivatives match finite differences") {
  const Weight gs = Weight::gaussian(0.5, 1.5);
  const Weight lg = Weight::laguerre(2.5);
  const Weight pe = Weight::poly_exp({0.2, 1.0, 0.4}, 1.3);
  for (int m : {1, 2, 3}) {
    CHECK(gs.derivative(0.9, m) ==
          doctest::Approx(fd_derivative([&](double x) { return gs(x); }, 0.9, m)).epsilon(1e-6));
    CHECK(lg.derivative(1.7, m) ==
          doctest::Approx(fd_derivative([&](double x) { return lg(x); }, 1.7, m)).epsilon(1e-6));
    CHECK(pe.derivative(0.8, m) ==
          doctest::Approx(fd_derivative([&](double x) { return pe(x); }, 0.8, m)).epsilon(1e-6));
  }
}

TEST_CASE("poly_gauss closed fourier agrees with quadrature") {
  const Weight w = Weight::poly_gauss({0.0, 0.0, 1.0});  // x^2 e^{-x^2/2}
  for (double s : {0.0, 0.8, 1.9}) {
    CHECK(std::abs(w.fourier(s) - w.fourier(s, true)) < 1e-8);
    for (int m : {1, 2}) CHECK(std::abs(w.fourier_moment(s, m) - w.fourier_moment(s, m, true)) < 1e-7);
  }
  CHECK(w.moment(0) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-10));
}

TEST_CASE("poly_exp closed fourier agrees with quadrature") {
  const Weight w = Weight::poly_exp({0.3, 1.0, 0.25}, 1.4);
  for (double s : {0.0, 0.6, 2.1}) {
    CHECK(std::abs(w.fourier(s) - w.fourier(s, true)) < 1e-7);
    CHECK(std::abs(w.fourier_moment(s, 1) - w.fourier_moment(s, 1, true)) < 1e-7);
  }
}

TEST_CASE("table weights interpolate and integrate") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 200; ++i) {
    const double x = -6.0 + 12.0 * i / 200.0;
    xs.push_back(x);
    ys.push_back(std::exp(-0.5 * x * x));
  }
  const Weight w = Weight::table(xs, ys);
  CHECK(w(0.37) == doctest::Approx(std::exp(-0.5 * 0.37 * 0.37)).epsilon(1e-6));
  CHECK(w(9.0) == 0.0);
  CHECK(w.mass() == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-5));
}

TEST_CASE("fornberg finite differences") {
  for (int m : {1, 2, 3, 4}) {
    const double got = fd_derivative([](double x) { return std::sin(x); }, 0.6, m);
    const double want = m == 1   ? std::cos(0.6)
                        : m == 2 ? -std::sin(0.6)
                        : m == 3 ? -std::cos(0.6)
                                 : std::sin(0.6);
    CHECK(got == doctest::Approx(want).epsilon(m <= 2 ? 1e-7 : 1e-5));
  }
}
