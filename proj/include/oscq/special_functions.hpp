#pragma once

// Trigonometric integrals Si, Ci, si for complex arguments and the closed-form
// values of the half-line transforms built from them.

#include <complex>

namespace oscq {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Largest |Im z| accepted by the trigonometric integrals. Beyond it
/// e^{|Im z|} leaves the double range and OverflowError is thrown.
inline constexpr double kMaxImaginaryPart = 700.0;

/// Pole/frequency data of the model integrand 1/((x-a)^2 + b^2) with sin(tx).
struct LorentzianParams {
  double a = 0.0;
  double b = 1.0;
  double t = 1.0;

  /// Throws DomainError unless b > 0 and t > 0 (and all finite).
  void validate() const;
};

/// Exponential integral E1(z) = \int_z^\infty e^{-s}/s ds, principal branch,
/// |arg z| <= pi (the upper side of the cut is used on the negative axis).
/// Power series for |z| <= 4 or close to the negative axis, Lentz continued
/// fraction elsewhere.
Complex exp_integral_e1(Complex z);

/// Si(z) = \int_0^z sin(s)/s ds. Entire; relative accuracy ~1e-13 for |z| <= 50.
Complex sine_integral(Complex z);

/// Ci(z) = gamma + log z + \int_0^z (cos s - 1)/s ds with the principal log.
/// Throws DomainError for z = 0 or z on the negative real axis.
Complex cosine_integral(Complex z);

/// si(z) = pi/2 - Si(z).
Complex si_complement(Complex z);

/// \int_0^\infty cos(xy)/(a+x) dx = -Ci(ay)cos(ay) + si(ay)sin(ay), |arg a| < pi, y > 0.
Complex halfline_cosine_reference(Complex a, double y);

/// \int_0^\infty sin(xy)/(a+x) dx = Ci(ay)sin(ay) + si(ay)cos(ay), |arg a| < pi, y > 0.
Complex halfline_sine_reference(Complex a, double y);

/// Exact I = \int_0^\infty sin(tx)/((x-a)^2+b^2) dx via partial fractions:
/// I = -Im[S((-a+ib)t)]/b where S is the half-line sine transform of 1/(z+x).
double lorentzian_sine_reference(const LorentzianParams& p);

/// \int_0^\infty cos(tx)/((x-a)^2+b^2) dx = -Im[C((-a+ib)t)]/b, C the half-line
/// cosine transform of 1/(z+x).
double lorentzian_cosine_reference(const LorentzianParams& p);

}  // namespace oscq
