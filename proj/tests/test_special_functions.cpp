#include "doctest.h"
#include "oracles.hpp"
#include "oscq/errors.hpp"
#include "oscq/special_functions.hpp"

using oscq::Complex;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

Complex random_in_disk(double radius) {
  for (;;) {
    const Complex z(oracle::uniform(-radius, radius), oracle::uniform(-radius, radius));
    if (std::abs(z) <= radius && std::abs(z) > 1e-3) return z;
  }
}

}  // namespace

TEST_SUITE("special_functions") {
  TEST_CASE("Si at zero and one") {
    CHECK(oscq::sine_integral(0.0) == Complex(0.0));
    const Complex s1 = oscq::sine_integral(1.0);
    CHECK(s1.real() == doctest::Approx(double(oracle::si_maclaurin(1.0L).real())).epsilon(1e-15));
    CHECK(s1.real() == doctest::Approx(0.946083070367183).epsilon(1e-14));
    CHECK(s1.imag() == 0.0);
    CHECK(oscq::sine_integral(-1.0).real() == doctest::Approx(-s1.real()).epsilon(1e-15));
  }

  TEST_CASE("Si on the real axis at 40 against zero-split quadrature") {
    // split [0, 40] at the zeros of sin
    Complex ref = 0.0;
    double lo = 0.0;
    for (int k = 1; k * oracle::kPi < 40.0; ++k) {
      ref += oracle::path_integral(oracle::sinc_entire, lo, k * oracle::kPi);
      lo = k * oracle::kPi;
    }
    ref += oracle::path_integral(oracle::sinc_entire, lo, 40.0);
    CHECK(std::abs(oscq::sine_integral(40.0) - ref) < 1e-10);
  }

  TEST_CASE("Ci at one and in the complex plane") {
    CHECK(oscq::cosine_integral(1.0).real() ==
          doctest::Approx(double(oracle::ci_maclaurin(1.0L).real())).epsilon(1e-15));
    CHECK(oscq::cosine_integral(1.0).real() == doctest::Approx(0.337403922900968).epsilon(1e-14));
    const Complex z(1.0, 1.0);
    CHECK(rel(oscq::cosine_integral(z), oracle::ci_path(z)) < 1e-10);
    const Complex w(2.0, 3.0);
    CHECK(rel(oscq::cosine_integral(std::conj(w)), std::conj(oscq::cosine_integral(w))) < 1e-15);
  }

  TEST_CASE("Si and Ci against the long double Maclaurin series for |z| <= 8") {
    for (int i = 0; i < 200; ++i) {
      const Complex z = random_in_disk(8.0);
      const std::complex<long double> zl(z);
      CHECK(rel(oscq::sine_integral(z), Complex(oracle::si_maclaurin(zl))) < 1e-12);
      CHECK(rel(oscq::cosine_integral(z), Complex(oracle::ci_maclaurin(zl))) < 1e-12);
    }
  }

  TEST_CASE("Si and Ci against path quadrature up to |z| = 50") {
    for (int i = 0; i < 100; ++i) {
      Complex z = random_in_disk(50.0);
      if (std::abs(z.imag()) > 30.0) z = Complex(z.real(), z.imag() / 2.0);
      CHECK(rel(oscq::sine_integral(z), oracle::si_path(z)) < 1e-12);
      if (z.real() < 0.0 && std::abs(z.imag()) < 1e-3) continue;
      CHECK(rel(oscq::cosine_integral(z), oracle::ci_path(z)) < 1e-12);
    }
  }

  TEST_CASE("Ci branch cut behaviour") {
    CHECK_THROWS_AS(oscq::cosine_integral(0.0), oscq::DomainError);
    CHECK_THROWS_AS(oscq::cosine_integral(-2.0), oscq::DomainError);
    CHECK_THROWS_AS(oscq::cosine_integral(Complex(-10.0, 0.0)), oscq::DomainError);
    // just above and below the cut the jump is 2 pi i
    const Complex above = oscq::cosine_integral(Complex(-6.0, 1e-12));
    const Complex below = oscq::cosine_integral(Complex(-6.0, -1e-12));
    CHECK((above - below).imag() == doctest::Approx(2.0 * oscq::kPi).epsilon(1e-10));
    CHECK((above - below).real() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("overflow guard on large imaginary parts") {
    CHECK_THROWS_AS(oscq::sine_integral(Complex(1.0, 800.0)), oscq::OverflowError);
    CHECK_THROWS_AS(oscq::cosine_integral(Complex(1.0, -800.0)), oscq::OverflowError);
    CHECK_NOTHROW(oscq::sine_integral(Complex(1.0, 600.0)));
  }

  TEST_CASE("si complement") {
    CHECK(oscq::si_complement(0.0) == Complex(oscq::kPi / 2.0));
    CHECK(oscq::si_complement(1.0).real() ==
          doctest::Approx(oscq::kPi / 2.0 - 0.946083070367183).epsilon(1e-14));
    CHECK(std::abs(oscq::si_complement(40.0)) < 0.03);
  }

  TEST_CASE("E1 branch choice on the negative axis") {
    // E1(-x + i0) = -Ei(x) - i pi
    const Complex e = oscq::exp_integral_e1(Complex(-1.0, 0.0));
    CHECK(e.real() == doctest::Approx(-1.8951178163559368).epsilon(1e-13));
    CHECK(e.imag() == doctest::Approx(-oscq::kPi).epsilon(1e-14));
    CHECK_THROWS_AS(oscq::exp_integral_e1(0.0), oscq::DomainError);
  }

  TEST_CASE("oddness of Si") {
    for (int i = 0; i < 100; ++i) {
      const Complex z = random_in_disk(20.0);
      const Complex s = oscq::sine_integral(z);
      CHECK(std::abs(oscq::sine_integral(-z) + s) <= 1e-12 * (1.0 + std::abs(s)));
    }
  }

  TEST_CASE("Schwarz reflection of Ci") {
    for (int i = 0; i < 100; ++i) {
      Complex z = random_in_disk(20.0);
      z = Complex(std::abs(z.real()) + 1e-3, z.imag());
      const Complex c = oscq::cosine_integral(z);
      CHECK(std::abs(oscq::cosine_integral(std::conj(z)) - std::conj(c)) <= 1e-12 * (1.0 + std::abs(c)));
    }
  }

  TEST_CASE("derivative of Si is sin z / z") {
    for (int i = 0; i < 50; ++i) {
      const Complex z = random_in_disk(15.0);
      const double h = 1e-5 * std::max(1.0, std::abs(z));
      const Complex fd = oracle::central_difference<Complex>(
          [](Complex w) { return oscq::sine_integral(w); }, z, h);
      const Complex want = std::sin(z) / z;
      CHECK(std::abs(fd - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }
  }

  TEST_CASE("half-line transforms of 1/(a+x) against oscillatory quadrature") {
    const Complex c11 = oscq::halfline_cosine_reference(1.0, 1.0);
    const Complex direct =
        -oscq::cosine_integral(1.0) * std::cos(1.0) + oscq::si_complement(1.0) * std::sin(1.0);
    CHECK(std::abs(c11 - direct) < 1e-15);
    CHECK(std::abs(c11 - oracle::halfline_cos(1.0, 1.0)) < 1e-10);
    CHECK(std::abs(oscq::halfline_cosine_reference(Complex(0.0, 1.0), 1.0) -
                   oracle::halfline_cos(Complex(0.0, 1.0), 1.0)) < 1e-8);
    for (int i = 0; i < 20; ++i) {
      const Complex a(oracle::uniform(0.1, 3.0), oracle::uniform(-3.0, 3.0));
      const double y = oracle::uniform(0.5, 3.0);
      CHECK(std::abs(oscq::halfline_cosine_reference(a, y) - oracle::halfline_cos(a, y)) < 1e-8);
      CHECK(std::abs(oscq::halfline_sine_reference(a, y) - oracle::halfline_sin(a, y)) < 1e-8);
      // depends on a and y only through a*y
      CHECK(std::abs(oscq::halfline_cosine_reference(a, y) -
                     oscq::halfline_cosine_reference(a * y, 1.0)) < 1e-13);
    }
    CHECK_THROWS_AS(oscq::halfline_cosine_reference(-1.0, 1.0), oscq::DomainError);
    CHECK_THROWS_AS(oscq::halfline_sine_reference(1.0, 0.0), oscq::DomainError);
  }

  TEST_CASE("closed-form Lorentzian transforms against oscillatory quadrature") {
    CHECK(oscq::lorentzian_sine_reference({0.0, 1.0, 1.0}) == doctest::Approx(0.6468).epsilon(1e-4));
    for (double a : {-1.0, 0.0, 1.0, 2.5}) {
      for (double t : {0.5, 1.0, 3.0}) {
        const oscq::LorentzianParams p{a, 1.3, t};
        CHECK(std::abs(oscq::lorentzian_sine_reference(p) - oracle::lorentzian_sin(a, 1.3, t)) < 1e-12);
        CHECK(std::abs(oscq::lorentzian_cosine_reference(p) - oracle::lorentzian_cos(a, 1.3, t)) < 1e-12);
      }
    }
    // cos transform of 1/(x^2+1) is (pi/2) e^{-t}
    CHECK(oscq::lorentzian_cosine_reference({0.0, 1.0, 2.0}) ==
          doctest::Approx(oscq::kPi / 2.0 * std::exp(-2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(oscq::lorentzian_sine_reference({0.0, 0.0, 1.0}), oscq::DomainError);
    CHECK_THROWS_AS(oscq::lorentzian_sine_reference({0.0, 1.0, -1.0}), oscq::DomainError);
  }
}
