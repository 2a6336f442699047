#include "oscq/transform_maps.hpp"

#include <cmath>
#include <string>

#include "oscq/errors.hpp"
#include "oscq/special_functions.hpp"

namespace oscq {
namespace {

constexpr double kBranchTolerance = 1e-12;
// Radius inside which the Ooura-Mori maps use Taylor denominators.
constexpr double kRemovableRadius = 1e-4;

Complex log1p_complex(Complex x) {
  if (std::abs(x) >= 0.5) return std::log(1.0 + x);
  const Complex u = 1.0 + x;
  if (u == Complex(1.0, 0.0)) return x;
  return std::log(u) * x / (u - 1.0);
}

// e^z - 1 without cancellation in either component.
Complex expm1_complex(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double half = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half * half, std::exp(x) * std::sin(y)};
}

void check_phi_branch(Complex w, const char* who) {
  // branch points of log(1 + e^w) sit at (2k+1) i pi
  const double k = std::round((w.imag() / kPi - 1.0) / 2.0);
  const Complex bp(0.0, (2.0 * k + 1.0) * kPi);
  if (std::abs(w - bp) < kBranchTolerance) {
    throw DomainError(std::string(who) + ": argument at a branch point (2k+1) i pi");
  }
}

// Shared machinery for maps of the form phi(u) = u / (1 - exp(-s(u))) with
// s(u) = u (c1 + c2 u + c3 u^2 + ...) near the origin.
struct DeShape {
  double s;
  double ds;
  double c1, c2, c3;
};

// s / (1 - e^{-s}) and its derivative, truncated Bernoulli series.
double bernoulli_ratio(double s) { return 1.0 + s / 2.0 + s * s / 12.0 - s * s * s * s / 720.0; }
double bernoulli_ratio_derivative(double s) { return 0.5 + s / 6.0 - s * s * s / 180.0; }

double de_evaluate(double u, const DeShape& d) {
  if (std::abs(u) < kRemovableRadius) {
    const double q = d.c1 + u * (d.c2 + u * d.c3);
    return bernoulli_ratio(u * q) / q;
  }
  // -expm1(-s) -> -inf for s -> -inf, giving +0 for u < 0
  return u / -std::expm1(-d.s);
}

double de_derivative(double u, const DeShape& d) {
  if (std::abs(u) < kRemovableRadius) {
    const double q = d.c1 + u * (d.c2 + u * d.c3);
    const double dq = d.c2 + 2.0 * u * d.c3;
    const double s = u * q;
    return bernoulli_ratio_derivative(s) * d.ds / q - bernoulli_ratio(s) * dq / (q * q);
  }
  const double denom = -std::expm1(-d.s);
  // e^{-s} / (1 - e^{-s})^2 = 1 / (expm1(s) * (-expm1(-s)))
  const double weight = 1.0 / (std::expm1(d.s) * denom);
  const double tail = weight == 0.0 ? 0.0 : u * d.ds * weight;
  return 1.0 / denom - tail;
}

double de_excess(double u, const DeShape& d) {
  if (std::abs(u) < kRemovableRadius) return de_evaluate(u, d) - u;
  return u / std::expm1(d.s);
}

DeShape om1_shape(double u, double K) {
  if (!(K > 0.0)) throw DomainError("om1: K must be positive");
  return {K * std::sinh(u), K * std::cosh(u), K, 0.0, K / 6.0};
}

DeShape om2_shape(double u, double M) {
  const double alpha = om2_alpha(M);
  const double beta = kOm2Beta;
  const double s = 2.0 * u - alpha * std::expm1(-u) + beta * std::expm1(u);
  const double ds = 2.0 + alpha * std::exp(-u) + beta * std::exp(u);
  return {s, ds, 2.0 + alpha + beta, (beta - alpha) / 2.0, (alpha + beta) / 6.0};
}

}  // namespace

double se_evaluate(double u) {
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

double se_derivative(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double se_second_derivative(double u) {
  const double e = std::exp(-std::abs(u));
  return e / ((1.0 + e) * (1.0 + e));
}

double se_excess(double u) {
  if (u > 0.0) return std::log1p(std::exp(-u));
  return std::log1p(std::exp(u)) - u;
}

double se_inverse(double x) {
  if (!(x > 0.0)) throw DomainError("se_inverse: x must be positive");
  if (x < 1e-4) {
    // log z + log((e^z - 1)/z); the second term is z/2 + O(z^2)
    return std::log(x) + std::log1p(std::expm1(x) / x - 1.0);
  }
  if (x > 1.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

Complex se_evaluate_complex(Complex w) {
  check_phi_branch(w, "se_evaluate_complex");
  if (w.real() > 0.0) return w + log1p_complex(std::exp(-w));
  return log1p_complex(std::exp(w));
}

Complex se_derivative_complex(Complex w) {
  check_phi_branch(w, "se_derivative_complex");
  if (w.real() > 0.0) return 1.0 / (1.0 + std::exp(-w));
  const Complex e = std::exp(w);
  return e / (1.0 + e);
}

Complex se_second_derivative_complex(Complex w) {
  check_phi_branch(w, "se_second_derivative_complex");
  // e/(1+e)^2 is invariant under e -> 1/e
  const Complex e = w.real() > 0.0 ? std::exp(-w) : std::exp(w);
  return e / ((1.0 + e) * (1.0 + e));
}

Complex se_inverse_complex(Complex z) {
  const double k = std::round(z.imag() / (2.0 * kPi));
  if (std::abs(z - Complex(0.0, 2.0 * kPi * k)) < kBranchTolerance) {
    throw DomainError("se_inverse_complex: argument at a branch point 2 pi i k");
  }
  if (z.real() > 1.0) {
    Complex r = z + log1p_complex(-std::exp(-z));
    // back onto the principal sheet
    if (r.imag() > kPi) r -= Complex(0.0, 2.0 * kPi);
    if (r.imag() <= -kPi) r += Complex(0.0, 2.0 * kPi);
    return r;
  }
  return std::log(expm1_complex(z));
}

double om2_alpha(double M) {
  if (!(M > 0.0)) throw DomainError("om2: M must be positive");
  return kOm2Beta / std::sqrt(1.0 + M * std::log1p(M) / (2.0 * kPi));
}

double om1_evaluate(double u, double K) { return de_evaluate(u, om1_shape(u, K)); }
double om1_derivative(double u, double K) { return de_derivative(u, om1_shape(u, K)); }
double om1_excess(double u, double K) { return de_excess(u, om1_shape(u, K)); }

double om2_evaluate(double u, double M) { return de_evaluate(u, om2_shape(u, M)); }
double om2_derivative(double u, double M) { return de_derivative(u, om2_shape(u, M)); }
double om2_excess(double u, double M) { return de_excess(u, om2_shape(u, M)); }

TransformMap TransformMap::single_exponential() { return {MapKind::SingleExp, 0.0}; }

TransformMap TransformMap::ooura_mori1(double K) {
  if (!(K > 0.0)) throw DomainError("ooura_mori1: K must be positive");
  return {MapKind::OouraMori1, K};
}

TransformMap TransformMap::ooura_mori2(double M) {
  if (!(M > 0.0)) throw DomainError("ooura_mori2: M must be positive");
  return {MapKind::OouraMori2, M};
}

TransformMap TransformMap::from_name(std::string_view name, double om2_M) {
  if (name == "se") return single_exponential();
  if (name == "om1") return ooura_mori1();
  if (name == "om2") return ooura_mori2(om2_M);
  throw DomainError("unknown transformation '" + std::string(name) + "'");
}

DecayClass TransformMap::decay_class() const {
  return kind_ == MapKind::SingleExp ? DecayClass::SingleExponential
                                     : DecayClass::DoubleExponential;
}

std::string_view TransformMap::name() const {
  switch (kind_) {
    case MapKind::SingleExp: return "se";
    case MapKind::OouraMori1: return "om1";
    case MapKind::OouraMori2: return "om2";
  }
  return "?";
}

double TransformMap::evaluate(double u) const {
  switch (kind_) {
    case MapKind::SingleExp: return se_evaluate(u);
    case MapKind::OouraMori1: return om1_evaluate(u, param_);
    case MapKind::OouraMori2: return om2_evaluate(u, param_);
  }
  return 0.0;
}

double TransformMap::derivative(double u) const {
  switch (kind_) {
    case MapKind::SingleExp: return se_derivative(u);
    case MapKind::OouraMori1: return om1_derivative(u, param_);
    case MapKind::OouraMori2: return om2_derivative(u, param_);
  }
  return 0.0;
}

double TransformMap::excess(double u) const {
  switch (kind_) {
    case MapKind::SingleExp: return se_excess(u);
    case MapKind::OouraMori1: return om1_excess(u, param_);
    case MapKind::OouraMori2: return om2_excess(u, param_);
  }
  return 0.0;
}

std::optional<double> TransformMap::inverse(double x) const {
  if (kind_ != MapKind::SingleExp) return std::nullopt;
  return se_inverse(x);
}

}  // namespace oscq
