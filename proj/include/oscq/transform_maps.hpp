#pragma once

// Changes of variable x = phi(u) from (-inf, inf) onto (0, inf):
//   SingleExp   phi(u)  = log(e^u + 1)
//   OouraMori1  phi1(u) = u / (1 - exp(-K sinh u))
//   OouraMori2  phi2(u) = u / (1 - exp(-2u - alpha(1 - e^{-u}) - beta(e^u - 1)))
// All satisfy phi(u) -> 0 as u -> -inf and phi(u) ~ u as u -> +inf.

#include <complex>
#include <optional>
#include <string_view>

namespace oscq {

using Complex = std::complex<double>;

enum class MapKind { SingleExp, OouraMori1, OouraMori2 };
enum class DecayClass { SingleExponential, DoubleExponential };

// Single-exponential map and its complex continuation. For Re w > 0 the
// continuation is evaluated as w + log(1 + e^{-w}), which is analytic across
// the line Im w = pi to the right of the branch point i*pi.

double se_evaluate(double u);
double se_derivative(double u);
/// phi''(u) = phi'(u)(1 - phi'(u)).
double se_second_derivative(double u);
/// phi(u) - u, accurate for large positive u.
double se_excess(double u);
/// log(e^x - 1); DomainError for x <= 0.
double se_inverse(double x);

/// DomainError within 1e-12 of a branch point (2k+1) i pi.
Complex se_evaluate_complex(Complex w);
Complex se_derivative_complex(Complex w);
Complex se_second_derivative_complex(Complex w);
/// log(e^z - 1), principal log; DomainError within 1e-12 of 2 pi i k.
Complex se_inverse_complex(Complex z);

/// Alpha used by the second Ooura-Mori map for a given M (beta = 1/4).
double om2_alpha(double M);
inline constexpr double kOm2Beta = 0.25;
inline constexpr double kOm1DefaultK = 2.0 * 3.14159265358979323846;

double om1_evaluate(double u, double K = kOm1DefaultK);
double om1_derivative(double u, double K = kOm1DefaultK);
double om1_excess(double u, double K = kOm1DefaultK);

double om2_evaluate(double u, double M);
double om2_derivative(double u, double M);
double om2_excess(double u, double M);

/// Uniform handle over the three maps. Immutable once built.
class TransformMap {
 public:
  static TransformMap single_exponential();
  static TransformMap ooura_mori1(double K = kOm1DefaultK);
  static TransformMap ooura_mori2(double M);
  /// "se", "om1", "om2"; om2 takes its M from the caller (the rule parameter m).
  static TransformMap from_name(std::string_view name, double om2_M = 1.0);

  MapKind kind() const { return kind_; }
  DecayClass decay_class() const;
  std::string_view name() const;
  double parameter() const { return param_; }  // K for OM1, M for OM2, unused for SE

  double evaluate(double u) const;
  double derivative(double u) const;
  /// evaluate(u) - u, computed without cancellation for u > 0.
  double excess(double u) const;
  /// Only the single-exponential map has a closed-form inverse.
  std::optional<double> inverse(double x) const;

 private:
  TransformMap(MapKind kind, double param) : kind_(kind), param_(param) {}

  MapKind kind_;
  double param_;
};

}  // namespace oscq
