#pragma once

// Truncated trapezoidal (sine transform) and midpoint (cosine transform) rules
// applied after the substitution x = (m/t) phi(u), stepsize h = pi/m:
//
//   f_s(t) ~ T_{n,m} = (pi/m) sum_{k=-n}^{n}   F_m(k pi/m)
//   f_c(t) ~ M_{n,m} = (pi/m) sum_{k=-n}^{n-1} G_m((k+1/2) pi/m)
//
// with F_m(u) = f((m/t)phi(u)) sin(m phi(u)) (m/t) phi'(u) and G_m the same
// with cos in place of sin.

#include <optional>
#include <span>
#include <string>

#include "oscq/transform_maps.hpp"

namespace oscq {

enum class IntegrandKind { Lorentzian, Sinc, ExpDecay };

/// Catalog integrand f on (0, inf).
struct IntegrandSpec {
  IntegrandKind kind = IntegrandKind::Sinc;
  double a = 0.0;       // Lorentzian pole real part
  double b = 1.0;       // Lorentzian pole imaginary part, > 0
  double lambda = 1.0;  // ExpDecay rate, > 0

  /// f(x) = 1/((x-a)^2 + b^2)
  static IntegrandSpec lorentzian(double a, double b);
  /// f(x) = 1/x
  static IntegrandSpec sinc();
  /// f(x) = exp(-lambda x)
  static IntegrandSpec exp_decay(double lambda);

  double value(double x) const;
  /// sup |f| on (0, inf) when finite.
  std::optional<double> bound_cf() const;
  std::string describe() const;
};

/// Rule parameters; the stepsize is always derived as pi/m.
struct QuadratureParams {
  double m = 1.0;
  long n = 4;
  double t = 1.0;

  double step() const;
  void validate() const;
};

/// F_m(u) for the sine transform. For u > 0 the phase m phi(u) is split as
/// m u + m (phi(u) - u) so that the alternating structure survives at large u.
double transformed_integrand(const IntegrandSpec& f, const TransformMap& map, double m,
                             double t, double u);

/// F_m(k pi/m) as summed by sine_transform: sin(m phi) = (-1)^k sin(m (phi(u) - u))
/// for k > 0, so no rounding of k pi enters the phase.
double transformed_node(const IntegrandSpec& f, const TransformMap& map, double m, double t,
                        long k);

/// Cosine-transform analogue of transformed_integrand.
double transformed_cosine_integrand(const IntegrandSpec& f, const TransformMap& map,
                                    double m, double t, double u);

/// Truncated trapezoidal sum T_{n,m}; nodes are summed in ascending magnitude
/// with compensation. At node k > 0 sin(k pi) = 0 and cos(k pi) = (-1)^k are used
/// exactly.
double sine_transform(const IntegrandSpec& f, const TransformMap& map,
                      const QuadratureParams& params);

/// Truncated midpoint sum over k = -n .. n-1.
double cosine_transform(const IntegrandSpec& f, const TransformMap& map,
                        const QuadratureParams& params);

/// m = sqrt(n pi / alpha); balances e^{-alpha m} against e^{-n pi/m}.
double choose_m(long n, double alpha);

/// 2 m C_f e^{-n pi/m}. Throws DomainError when f has no finite bound.
double truncation_bound(const IntegrandSpec& f, double m, long n);

/// ceil(4 m^2).
long default_n(double m);

/// Neumaier-compensated sum of the values sorted by ascending magnitude.
double compensated_sum(std::span<const double> values);

}  // namespace oscq
