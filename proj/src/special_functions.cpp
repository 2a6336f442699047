#include "oscq/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oscq/errors.hpp"

namespace oscq {
namespace {

constexpr double kSeriesRadius = 4.0;
constexpr int kMaxTerms = 10000;

template <class R>
using ComplexT = std::complex<R>;

template <class R>
constexpr R kEpsT = std::numeric_limits<R>::epsilon();

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr long double kEulerGammaL = 0.57721566490153286060651209008240243L;

void require_finite(Complex z, const char* who) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(who) + ": non-finite argument");
  }
  if (std::abs(z.imag()) > kMaxImaginaryPart) {
    throw OverflowError(std::string(who) + ": |Im z| exceeds " +
                        std::to_string(kMaxImaginaryPart));
  }
}

bool on_negative_axis(Complex z) { return z.imag() == 0.0 && z.real() <= 0.0; }

// Si(z) = sum (-1)^k z^{2k+1} / ((2k+1)(2k+1)!)
template <class R>
ComplexT<R> si_series(ComplexT<R> z) {
  const ComplexT<R> z2 = z * z;
  ComplexT<R> term = z;  // z^{2k+1}/(2k+1)!
  ComplexT<R> sum = z;
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -z2 / (R(2 * k) * R(2 * k + 1));
    const ComplexT<R> add = term / R(2 * k + 1);
    sum += add;
    if (std::abs(add) <= kEpsT<R> * std::abs(sum)) return sum;
  }
  throw NumericalError("sine_integral: series did not converge");
}

// Cin(z) = \int_0^z (1 - cos s)/s ds = sum_{k>=1} (-1)^{k+1} z^{2k} / (2k (2k)!)
template <class R>
ComplexT<R> cin_series(ComplexT<R> z) {
  const ComplexT<R> z2 = z * z;
  ComplexT<R> term = R(1);  // (-1)^k z^{2k}/(2k)!
  ComplexT<R> sum = R(0);
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -z2 / (R(2 * k - 1) * R(2 * k));
    const ComplexT<R> add = -term / R(2 * k);
    sum += add;
    if (std::abs(add) <= kEpsT<R> * std::abs(sum)) return sum;
  }
  throw NumericalError("cosine_integral: series did not converge");
}

template <class R>
ComplexT<R> e1_series(ComplexT<R> z) {
  ComplexT<R> term = R(1);
  ComplexT<R> sum = R(0);
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -z / R(k);
    const ComplexT<R> add = term / R(k);
    sum += add;
    if (std::abs(add) <= kEpsT<R> * std::abs(sum)) {
      return -R(kEulerGammaL) - std::log(z) - sum;
    }
  }
  throw NumericalError("exp_integral_e1: series did not converge");
}

// Modified Lentz evaluation of
// E1(z) = e^{-z} / (z+1 - 1/(z+3 - 4/(z+5 - ...)))
template <class R>
ComplexT<R> e1_continued_fraction(ComplexT<R> z) {
  constexpr R tiny = R(1e-300);
  ComplexT<R> b = z + R(1);
  ComplexT<R> c = R(1) / tiny;
  ComplexT<R> d = R(1) / b;
  ComplexT<R> h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const R a = -R(i) * R(i);
    b += R(2);
    d = a * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = R(1) / d;
    const ComplexT<R> delta = c * d;
    h *= delta;
    if (std::abs(delta - R(1)) <= kEpsT<R>) return h * std::exp(-z);
  }
  throw NumericalError("exp_integral_e1: continued fraction did not converge");
}

template <class R>
ComplexT<R> e1_impl(ComplexT<R> z) {
  const R r = std::abs(z);
  // Near the negative axis the series has no cancellation and the continued
  // fraction converges slowly.
  if (r <= R(kSeriesRadius) || r + z.real() <= R(2 * kSeriesRadius)) return e1_series(z);
  return e1_continued_fraction(z);
}

// Canonical quadrant for the E1 route: Re z >= 0, Im z >= 0 with +0.0 components.
template <class R>
struct Quadrant {
  ComplexT<R> z;
  bool negate;     // z was reflected through the origin
  bool conjugate;  // z was reflected across the real axis
};

template <class R>
Quadrant<R> to_first_quadrant(ComplexT<R> z) {
  const bool neg = z.real() < R(0);
  const bool conj = neg ? z.imag() > R(0) : z.imag() < R(0);
  return {ComplexT<R>(std::fabs(z.real()), std::fabs(z.imag())), neg, conj};
}

// Si and Ci on the closed first quadrant, |z| > kSeriesRadius.
// iz lies in the closed second quadrant and -iz in the closed fourth, so the
// principal branches of E1 give the continuation from the positive real axis.
template <class R>
void si_ci_first_quadrant(ComplexT<R> z, ComplexT<R>* si, ComplexT<R>* ci) {
  const ComplexT<R> iz(-z.imag(), z.real());
  const ComplexT<R> miz(z.imag(), -z.real());
  const ComplexT<R> e_plus = e1_impl(iz);
  const ComplexT<R> e_minus = e1_impl(miz);
  if (si) *si = R(kPiL) / R(2) + (e_plus - e_minus) / ComplexT<R>(R(0), R(2));
  if (ci) *ci = R(-0.5) * (e_plus + e_minus);
}

template <class R>
ComplexT<R> sine_integral_impl(ComplexT<R> z) {
  if (z == ComplexT<R>(R(0), R(0))) return R(0);
  if (std::abs(z) <= R(kSeriesRadius)) return si_series(z);
  const Quadrant<R> q = to_first_quadrant(z);
  ComplexT<R> si;
  si_ci_first_quadrant<R>(q.z, &si, nullptr);
  if (q.conjugate) si = std::conj(si);
  return q.negate ? -si : si;
}

template <class R>
ComplexT<R> cosine_integral_impl(ComplexT<R> z) {
  if (std::abs(z) <= R(kSeriesRadius)) return R(kEulerGammaL) + std::log(z) - cin_series(z);
  const Quadrant<R> q = to_first_quadrant(z);
  ComplexT<R> ci;
  si_ci_first_quadrant<R>(q.z, nullptr, &ci);
  if (q.conjugate) ci = std::conj(ci);
  if (q.negate) {
    // Ci(z) - Ci(-z) = log z - log(-z) = +-i pi
    ci += ComplexT<R>(R(0), z.imag() > R(0) ? R(kPiL) : -R(kPiL));
  }
  return ci;
}

// The half-line combinations cancel to a few ulps, so they are formed in
// extended precision and rounded once.
using ComplexL = ComplexT<long double>;

ComplexL halfline_argument(Complex a, double y, const char* who) {
  if (!(y > 0.0)) throw DomainError(std::string(who) + ": y must be positive");
  if (on_negative_axis(a)) {
    throw DomainError(std::string(who) + ": a on the closed negative real axis");
  }
  require_finite(a * y, who);
  return ComplexL(a) * static_cast<long double>(y);
}

}  // namespace

void LorentzianParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(t)) {
    throw DomainError("LorentzianParams: non-finite parameter");
  }
  if (!(b > 0.0)) throw DomainError("LorentzianParams: b must be positive");
  if (!(t > 0.0)) throw DomainError("LorentzianParams: t must be positive");
}

Complex exp_integral_e1(Complex z) {
  if (z == Complex(0.0, 0.0)) throw DomainError("exp_integral_e1: z = 0");
  return e1_impl(z);
}

Complex sine_integral(Complex z) {
  require_finite(z, "sine_integral");
  return sine_integral_impl(z);
}

Complex cosine_integral(Complex z) {
  require_finite(z, "cosine_integral");
  if (on_negative_axis(z)) {
    throw DomainError("cosine_integral: z on the branch cut (-inf, 0]");
  }
  return cosine_integral_impl(z);
}

Complex si_complement(Complex z) { return kPi / 2.0 - sine_integral(z); }

Complex halfline_cosine_reference(Complex a, double y) {
  const ComplexL z = halfline_argument(a, y, "halfline_cosine_reference");
  const ComplexL si = kPiL / 2.0L - sine_integral_impl(z);
  return Complex(-cosine_integral_impl(z) * std::cos(z) + si * std::sin(z));
}

Complex halfline_sine_reference(Complex a, double y) {
  const ComplexL z = halfline_argument(a, y, "halfline_sine_reference");
  const ComplexL si = kPiL / 2.0L - sine_integral_impl(z);
  return Complex(cosine_integral_impl(z) * std::sin(z) + si * std::cos(z));
}

double lorentzian_sine_reference(const LorentzianParams& p) {
  p.validate();
  // Partial fractions give I = Im S(-a-ib)/b; S(conj c) = conj S(c), so the
  // upper-half-plane argument -a+ib is used with a sign flip.
  const Complex c(-p.a, p.b);
  return -halfline_sine_reference(c, p.t).imag() / p.b;
}

double lorentzian_cosine_reference(const LorentzianParams& p) {
  p.validate();
  const Complex c(-p.a, p.b);
  return -halfline_cosine_reference(c, p.t).imag() / p.b;
}

}  // namespace oscq
