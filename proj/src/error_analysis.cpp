#include "oscq/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oscq/errors.hpp"
#include "oscq/quadrature.hpp"
#include "oscq/transform_maps.hpp"

namespace oscq {
namespace {

constexpr Complex kI(0.0, 1.0);

// Orientation of C' through the upper saddle relative to the descent
// direction alpha: the positively described contour crosses w1 against it.
constexpr double kSaddleOrientation = -1.0;

constexpr double kSaddleTolerance = 1e-12;
constexpr int kSaddleMaxIterations = 50;
constexpr double kSaddleDedupe = 1e-8;
// Above Im w = pi the saddle is still on C' (the continuation of phi is
// analytic there for Re w > 0); it approaches log 2 + i pi from either side.
constexpr double kSaddleImagCeiling = kPi + 1e-6;

// cot z and csc^2 z evaluated through e^{+-2iz} on the decaying side.
Complex cot_stable(Complex z) {
  if (z.imag() > 0.0) {
    const Complex e = std::exp(2.0 * kI * z);
    return kI * (1.0 + e) / (e - 1.0);
  }
  const Complex e = std::exp(-2.0 * kI * z);
  return kI * (1.0 + e) / (1.0 - e);
}

Complex csc2_stable(Complex z) {
  if (z.imag() > 0.0) {
    const Complex e = std::exp(2.0 * kI * z);
    return -4.0 * e / ((e - 1.0) * (e - 1.0));
  }
  const Complex e = std::exp(-2.0 * kI * z);
  return -4.0 * e / ((1.0 - e) * (1.0 - e));
}

void require_off_axis(Complex w, const char* who) {
  if (w.imag() == 0.0) throw DomainError(std::string(who) + ": w on the real axis");
}

void require_rule_parameter(double m, const char* who) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError(std::string(who) + ": m must be positive");
}

// q(w) = f((m/t) phi(w)) (m/t) phi'(w) for the Lorentzian f.
Complex lorentzian_weight(const LorentzianParams& p, double m, Complex w) {
  const double scale = m / p.t;
  const Complex d = scale * se_evaluate_complex(w) - p.a;
  return scale * se_derivative_complex(w) / (d * d + p.b * p.b);
}

Complex steepest_descent_term(const LorentzianParams& p, double m, Complex w) {
  const SaddlePhase ph = saddle_phase_all(m, w);
  const double curvature = std::abs(ph.curvature);
  if (curvature < 1e-14) throw NumericalError("saddle_term: degenerate saddle, |p''| < 1e-14");
  const Complex direction = std::exp(kI * (kPi / 2.0 - 0.5 * std::arg(ph.curvature)));
  return kSaddleOrientation / (2.0 * kPi * kI) * std::sqrt(2.0 * kPi / curvature) * direction *
         std::exp(ph.value) * lorentzian_weight(p, m, w);
}

}  // namespace

Complex kernel_ratio(QuadratureRule rule, double h, Complex w) {
  require_off_axis(w, "kernel_ratio");
  if (!(h > 0.0)) throw DomainError("kernel_ratio: h must be positive");
  const Complex x = (kPi / h) * w;
  const bool upper = w.imag() > 0.0;
  switch (rule) {
    case QuadratureRule::Trapezoidal:
      // upper: -pi (cot x + i); lower: -pi (cot x - i)
      return upper ? -kPi * 2.0 * kI / (1.0 - std::exp(-2.0 * kI * x))
                   : -kPi * 2.0 * kI / (std::exp(2.0 * kI * x) - 1.0);
    case QuadratureRule::Midpoint:
      // upper: -i pi e^{ix}/cos x; lower: i pi e^{-ix}/cos x
      return upper ? -2.0 * kI * kPi / (1.0 + std::exp(-2.0 * kI * x))
                   : 2.0 * kI * kPi / (std::exp(2.0 * kI * x) + 1.0);
  }
  return 0.0;
}

Complex locate_pole(const LorentzianParams& p, double m) {
  p.validate();
  require_rule_parameter(m, "locate_pole");
  const Complex target = Complex(p.a, p.b) * p.t;
  const Complex w0 = se_inverse_complex(target / m);
  const Complex back = m * se_evaluate_complex(w0);
  if (std::abs(back - target) > 1e-12 * std::abs(target)) {
    throw NumericalError("locate_pole: m phi(w0) does not reproduce (a+ib)t");
  }
  return w0;
}

Complex approximate_pole(const LorentzianParams& p, double m) {
  p.validate();
  require_rule_parameter(m, "approximate_pole");
  const Complex z = Complex(p.a, p.b) * p.t / m;
  return std::log(z) + z / 2.0;
}

Complex pole_location(const LorentzianParams& p, double m, PoleLocation where) {
  return where == PoleLocation::Exact ? locate_pole(p, m) : approximate_pole(p, m);
}

double residue_term_exact(const LorentzianParams& p, double m, Complex w0) {
  p.validate();
  require_rule_parameter(m, "residue_term_exact");
  const double u0 = w0.real();
  const double v0 = w0.imag();
  const double at = p.a * p.t;
  const double bt = p.b * p.t;
  const double c2u = std::cos(2.0 * m * u0);
  const double s2u = std::sin(2.0 * m * u0);
  const double numer = (std::exp(-2.0 * m * v0) - c2u) * std::sin(at) * std::cosh(bt) +
                       s2u * std::cos(at) * std::sinh(bt);
  return kPi / p.b * numer / (std::cosh(2.0 * m * v0) - c2u);
}

double residue_term_exact(const LorentzianParams& p, double m, PoleLocation where) {
  return residue_term_exact(p, m, pole_location(p, m, where));
}

std::pair<Complex, Complex> residue_pair(const LorentzianParams& p, double m, Complex w0) {
  p.validate();
  require_rule_parameter(m, "residue_pair");
  const double h = kPi / m;
  const double scale = m / p.t;
  auto term = [&](Complex w) {
    // Res(F_m; w) = sin(m phi(w)) / (2 ((m/t) phi(w) - a)) at a simple pole
    const Complex phi = se_evaluate_complex(w);
    const Complex res = std::sin(m * phi) / (2.0 * (scale * phi - p.a));
    return -kernel_ratio(QuadratureRule::Trapezoidal, h, w) * res;
  };
  return {term(w0), term(std::conj(w0))};
}

double residue_term_asymptotic(const LorentzianParams& p, double m, Complex w0) {
  p.validate();
  if (!(m >= 2.0)) throw DomainError("residue_term_asymptotic: requires m >= 2");
  const double u0 = w0.real();
  const double v0 = w0.imag();
  const double at = p.a * p.t;
  const double bt = p.b * p.t;
  const double bracket = -std::cos(2.0 * m * u0) * std::sin(at) * std::cosh(bt) +
                         std::sin(2.0 * m * u0) * std::cos(at) * std::sinh(bt);
  return 2.0 * kPi / p.b * std::exp(-2.0 * m * v0) * bracket;
}

double residue_term_asymptotic(const LorentzianParams& p, double m, PoleLocation where) {
  return residue_term_asymptotic(p, m, pole_location(p, m, where));
}

SaddlePhase saddle_phase_all(double m, Complex w) {
  require_rule_parameter(m, "saddle_phase");
  require_off_axis(w, "saddle_phase");
  const bool upper = w.imag() > 0.0;
  const Complex phi = se_evaluate_complex(w);
  const Complex dphi = se_derivative_complex(w);
  const Complex d2phi = se_second_derivative_complex(w);
  const Complex s = std::sin(m * phi);
  if (std::abs(s) < 1e-12) throw DomainError("saddle_phase: sin(m phi(w)) vanishes");

  const Complex mw = m * w;
  const Complex kernel = kernel_ratio(QuadratureRule::Trapezoidal, kPi / m, w);
  const Complex cot_phi = cot_stable(m * phi);
  // d/dw log(cot(mw) +- i) = -m (cot(mw) -+ i)
  const Complex shifted = upper ? 2.0 * kI / (std::exp(2.0 * kI * mw) - 1.0)    // cot - i
                                : 2.0 * kI / (1.0 - std::exp(-2.0 * kI * mw));  // cot + i
  SaddlePhase out;
  out.value = std::log(kernel * s);
  out.gradient = -m * shifted + m * dphi * cot_phi;
  out.curvature = m * m * csc2_stable(mw) + m * d2phi * cot_phi -
                  m * m * dphi * dphi * csc2_stable(m * phi);
  return out;
}

Complex saddle_phase(double m, Complex w) { return saddle_phase_all(m, w).value; }
Complex saddle_phase_gradient(double m, Complex w) { return saddle_phase_all(m, w).gradient; }
Complex saddle_phase_curvature(double m, Complex w) { return saddle_phase_all(m, w).curvature; }

SaddleSearch find_saddle(double m, Complex hint) {
  require_rule_parameter(m, "find_saddle");
  const double re_lo = hint.real() - 2.0;
  const double re_hi = std::max(hint.real(), 0.0) + 2.0;
  const double im_lo = std::max(hint.imag(), 0.1);
  const double im_hi = kPi - 0.1;

  std::vector<Complex> roots;
  int converged = 0;
  for (int i = 0; re_lo + 0.25 * i <= re_hi + 1e-12; ++i) {
    for (int j = 0; im_lo + 0.2 * j <= im_hi + 1e-12; ++j) {
      Complex w(re_lo + 0.25 * i, im_lo + 0.2 * j);
      bool ok = false;
      try {
        for (int it = 0; it <= kSaddleMaxIterations; ++it) {
          const SaddlePhase ph = saddle_phase_all(m, w);
          if (std::abs(ph.gradient) < kSaddleTolerance) {
            ok = true;
            break;
          }
          if (it == kSaddleMaxIterations || ph.curvature == Complex(0.0, 0.0)) break;
          w -= ph.gradient / ph.curvature;
          if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || w.imag() <= 0.0 ||
              w.imag() > kPi + 1.0) {
            break;
          }
        }
      } catch (const DomainError&) {
        ok = false;
      }
      if (!ok) continue;
      ++converged;
      if (w.imag() <= hint.imag() || w.imag() > kSaddleImagCeiling) continue;
      const bool seen = std::any_of(roots.begin(), roots.end(),
                                    [&](Complex r) { return std::abs(r - w) < kSaddleDedupe; });
      if (!seen) roots.push_back(w);
    }
  }
  if (roots.empty()) {
    throw NumericalError("find_saddle: no start converged to a saddle above the hint");
  }
  const auto best = std::min_element(roots.begin(), roots.end(),
                                     [](Complex x, Complex y) { return x.imag() < y.imag(); });
  return {*best, converged, int(roots.size())};
}

std::pair<Complex, Complex> saddle_pair(const LorentzianParams& p, double m, Complex w1) {
  p.validate();
  return {steepest_descent_term(p, m, w1), steepest_descent_term(p, m, std::conj(w1))};
}

double saddle_term(const LorentzianParams& p, double m, Complex w1) {
  p.validate();
  return 2.0 * steepest_descent_term(p, m, w1).real();
}

ErrorDecomposition decompose_error(const LorentzianParams& p, double m) {
  p.validate();
  if (!(m >= 1.0 && m <= 12.0)) throw DomainError("decompose_error: m must lie in [1, 12]");

  ErrorDecomposition out;
  out.m = m;
  out.reference = lorentzian_sine_reference(p);
  out.approximation = sine_transform(IntegrandSpec::lorentzian(p.a, p.b),
                                     TransformMap::single_exponential(), {m, default_n(m), p.t});
  out.total = out.reference - out.approximation;
  out.w0 = locate_pole(p, m);
  out.pole_term = residue_term_exact(p, m, PoleLocation::TwoTerm);
  out.pole_term_exact_location = residue_term_exact(p, m, out.w0);
  try {
    const SaddleSearch s = find_saddle(m, out.w0);
    out.w1 = s.root;
    out.saddle_term = saddle_term(p, m, s.root);
    out.saddle_converged = true;
  } catch (const NumericalError&) {
    out.saddle_converged = false;
  }
  return out;
}

}  // namespace oscq
