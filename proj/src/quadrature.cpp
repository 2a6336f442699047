#include "oscq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "oscq/errors.hpp"
#include "oscq/special_functions.hpp"

namespace oscq {
namespace {

// f(x) * sin(m phi) for x = (m/t) phi. 1/x is replaced by its limit near 0.
double weighted_sine(const IntegrandSpec& f, double t, double x, double m_phi, double sine) {
  if (f.kind == IntegrandKind::Sinc) {
    if (m_phi < 1e-4) return t * (1.0 - m_phi * m_phi / 6.0);
    return sine / x;
  }
  return f.value(x) * sine;
}

double sign_of_parity(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double sine_node(const IntegrandSpec& f, const TransformMap& map, double m, double t, long k) {
  const double u = double(k) * kPi / m;
  const double dphi = map.derivative(u);
  if (dphi == 0.0) return 0.0;
  const double phi = map.evaluate(u);
  // sin(k pi + m e) = (-1)^k sin(m e)
  const double sine = k > 0 ? sign_of_parity(k) * std::sin(m * map.excess(u)) : std::sin(m * phi);
  const double x = m / t * phi;
  return weighted_sine(f, t, x, m * phi, sine) * (m / t) * dphi;
}

double cosine_node(const IntegrandSpec& f, const TransformMap& map, double m, double t, long k) {
  const double u = (double(k) + 0.5) * kPi / m;
  const double dphi = map.derivative(u);
  if (dphi == 0.0) return 0.0;
  const double phi = map.evaluate(u);
  // cos((k + 1/2) pi + m e) = -(-1)^k sin(m e)
  const double cosine =
      k >= 0 ? -sign_of_parity(k) * std::sin(m * map.excess(u)) : std::cos(m * phi);
  return f.value(m / t * phi) * cosine * (m / t) * dphi;
}

void require_positive_rule(double m, double t) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("rule parameter m must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("frequency t must be positive");
}

}  // namespace

IntegrandSpec IntegrandSpec::lorentzian(double a, double b) {
  if (!std::isfinite(a) || !(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("lorentzian: requires finite a and b > 0");
  }
  IntegrandSpec s;
  s.kind = IntegrandKind::Lorentzian;
  s.a = a;
  s.b = b;
  return s;
}

IntegrandSpec IntegrandSpec::sinc() { return IntegrandSpec{}; }

IntegrandSpec IntegrandSpec::exp_decay(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("expdecay: lambda must be positive");
  }
  IntegrandSpec s;
  s.kind = IntegrandKind::ExpDecay;
  s.lambda = lambda;
  return s;
}

double IntegrandSpec::value(double x) const {
  switch (kind) {
    case IntegrandKind::Lorentzian: {
      const double d = x - a;
      return 1.0 / (d * d + b * b);
    }
    case IntegrandKind::Sinc: return 1.0 / x;
    case IntegrandKind::ExpDecay: return std::exp(-lambda * x);
  }
  return 0.0;
}

std::optional<double> IntegrandSpec::bound_cf() const {
  switch (kind) {
    case IntegrandKind::Lorentzian:
      // the peak at x = a lies inside (0, inf) only for a >= 0
      return a >= 0.0 ? 1.0 / (b * b) : 1.0 / (a * a + b * b);
    case IntegrandKind::Sinc: return std::nullopt;
    case IntegrandKind::ExpDecay: return 1.0;
  }
  return std::nullopt;
}

std::string IntegrandSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case IntegrandKind::Lorentzian: os << "lorentzian:a=" << a << ",b=" << b; break;
    case IntegrandKind::Sinc: os << "sinc"; break;
    case IntegrandKind::ExpDecay: os << "expdecay:lambda=" << lambda; break;
  }
  return os.str();
}

double QuadratureParams::step() const { return kPi / m; }

void QuadratureParams::validate() const {
  require_positive_rule(m, t);
  if (n < 1) throw DomainError("truncation index n must be at least 1");
}

double transformed_integrand(const IntegrandSpec& f, const TransformMap& map, double m,
                             double t, double u) {
  require_positive_rule(m, t);
  const double dphi = map.derivative(u);
  if (dphi == 0.0) return 0.0;
  const double phi = map.evaluate(u);
  double sine;
  if (u > 0.0) {
    const double e = m * map.excess(u);
    sine = std::sin(m * u) * std::cos(e) + std::cos(m * u) * std::sin(e);
  } else {
    sine = std::sin(m * phi);
  }
  return weighted_sine(f, t, m / t * phi, m * phi, sine) * (m / t) * dphi;
}

double transformed_cosine_integrand(const IntegrandSpec& f, const TransformMap& map,
                                    double m, double t, double u) {
  require_positive_rule(m, t);
  const double dphi = map.derivative(u);
  if (dphi == 0.0) return 0.0;
  const double phi = map.evaluate(u);
  double cosine;
  if (u > 0.0) {
    const double e = m * map.excess(u);
    cosine = std::cos(m * u) * std::cos(e) - std::sin(m * u) * std::sin(e);
  } else {
    cosine = std::cos(m * phi);
  }
  return f.value(m / t * phi) * cosine * (m / t) * dphi;
}

double transformed_node(const IntegrandSpec& f, const TransformMap& map, double m, double t,
                        long k) {
  require_positive_rule(m, t);
  return sine_node(f, map, m, t, k);
}

double sine_transform(const IntegrandSpec& f, const TransformMap& map,
                      const QuadratureParams& params) {
  params.validate();
  std::vector<double> nodes;
  nodes.reserve(std::size_t(2 * params.n + 1));
  for (long k = -params.n; k <= params.n; ++k) {
    nodes.push_back(transformed_node(f, map, params.m, params.t, k));
  }
  return params.step() * compensated_sum(nodes);
}

double cosine_transform(const IntegrandSpec& f, const TransformMap& map,
                        const QuadratureParams& params) {
  params.validate();
  if (f.kind == IntegrandKind::Sinc) {
    throw DomainError("cosine_transform: 1/x is not integrable at 0 against cos");
  }
  std::vector<double> nodes;
  nodes.reserve(std::size_t(2 * params.n));
  for (long k = -params.n; k < params.n; ++k) {
    nodes.push_back(cosine_node(f, map, params.m, params.t, k));
  }
  return params.step() * compensated_sum(nodes);
}

double choose_m(long n, double alpha) {
  if (n < 1) throw DomainError("choose_m: n must be at least 1");
  if (!(alpha > 0.0)) throw DomainError("choose_m: alpha must be positive");
  return std::sqrt(double(n) * kPi / alpha);
}

double truncation_bound(const IntegrandSpec& f, double m, long n) {
  const auto cf = f.bound_cf();
  if (!cf) throw DomainError("truncation_bound: " + f.describe() + " has no finite bound C_f");
  if (!(m > 0.0)) throw DomainError("truncation_bound: m must be positive");
  if (n < 1) throw DomainError("truncation_bound: n must be at least 1");
  return 2.0 * m * *cf * std::exp(-double(n) * kPi / m);
}

long default_n(double m) {
  if (!(m > 0.0)) throw DomainError("default_n: m must be positive");
  const double v = 4.0 * m * m;
  const double r = std::round(v);
  // m = sqrt(k) style inputs should not bump the count by one
  if (std::abs(v - r) <= 1e-12 * v) return long(r);
  return long(std::ceil(v));
}

double compensated_sum(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(),
            [](double x, double y) { return std::abs(x) < std::abs(y); });
  double sum = 0.0;
  double carry = 0.0;
  for (double v : sorted) {
    const double s = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - s) + v;
    } else {
      carry += (v - s) + sum;
    }
    sum = s;
  }
  return sum + carry;
}

}  // namespace oscq
