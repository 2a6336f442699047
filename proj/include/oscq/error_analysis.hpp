#pragma once

// Discretisation error of the single-exponential trapezoidal rule for the
// model problem I = \int_0^\infty sin(tx)/((x-a)^2+b^2) dx.
//
// I - T_m splits into the residues of Psi/Phi * F_m at the poles w0, conj(w0)
// of F_m (R_m) and an integral over a contour C' squeezed between those poles
// and the branch points of phi. The latter is estimated at the saddle w1 of
// p(w) = log(Psi/Phi(w) sin(m phi(w))) (S_m).

#include <complex>
#include <optional>
#include <utility>

#include "oscq/special_functions.hpp"

namespace oscq {

enum class QuadratureRule { Trapezoidal, Midpoint };

/// Psi_h(w)/Phi_h(w) for the given rule; both half planes. DomainError on Im w = 0.
Complex kernel_ratio(QuadratureRule rule, double h, Complex w);

/// Exact pole w0 = phi^{-1}((a+ib)t/m) in the upper half plane. Verifies
/// m phi(w0) = (a+ib)t to 1e-12 relative and throws NumericalError otherwise.
Complex locate_pole(const LorentzianParams& p, double m);

/// Two-term small-argument expansion of the pole: log z + z/2, z = (a+ib)t/m.
Complex approximate_pole(const LorentzianParams& p, double m);

/// Which pole location the residue formulas are evaluated at. The reference
/// error table evaluates the residue formula at the two-term pole.
enum class PoleLocation { Exact, TwoTerm };

Complex pole_location(const LorentzianParams& p, double m, PoleLocation where);

/// R_m = (pi/b) {[e^{-2mv0} - cos 2mu0] sin(at)cosh(bt) + sin 2mu0 cos(at)sinh(bt)}
///       / (cosh 2mv0 - cos 2mu0),  w0 = u0 + i v0.
double residue_term_exact(const LorentzianParams& p, double m, Complex w0);
double residue_term_exact(const LorentzianParams& p, double m,
                          PoleLocation where = PoleLocation::TwoTerm);

/// The two residue terms -Res(Psi/Phi F_m; w) at w0 and conj(w0), computed
/// independently from kernel_ratio and the L'Hopital residue of F_m.
std::pair<Complex, Complex> residue_pair(const LorentzianParams& p, double m, Complex w0);

/// Leading-order R_m with e^{-2mv0} dropped from the denominator. Requires m >= 2.
double residue_term_asymptotic(const LorentzianParams& p, double m, Complex w0);
double residue_term_asymptotic(const LorentzianParams& p, double m,
                               PoleLocation where = PoleLocation::TwoTerm);

/// p, p' and p'' of the saddle phase at w (trapezoidal kernel, h = pi/m).
struct SaddlePhase {
  Complex value;
  Complex gradient;
  Complex curvature;
};

/// p(w) = log(-pi (cot(mw) + i) sin(m phi(w))) for Im w > 0; the lower-half
/// kernel is used for Im w < 0. DomainError on the real axis or where
/// sin(m phi(w)) vanishes.
Complex saddle_phase(double m, Complex w);
/// p'(w) = -m(cot(mw) - i) + m phi'(w) cot(m phi(w)) (upper half plane).
Complex saddle_phase_gradient(double m, Complex w);
/// p''(w) = m^2 csc^2(mw) + m phi''(w) cot(m phi(w)) - m^2 phi'(w)^2 csc^2(m phi(w)).
Complex saddle_phase_curvature(double m, Complex w);
SaddlePhase saddle_phase_all(double m, Complex w);

struct SaddleSearch {
  Complex root;
  int converged_starts = 0;
  int distinct_roots = 0;
};

/// Multistart Newton search for the saddle w1 on C'. Starts on a 0.25 x 0.2
/// grid covering Re w in [Re hint - 2, max(Re hint, 0) + 2] and
/// Im w in [Im hint, pi - 0.1]; convergence |p'| < 1e-12 within 50 steps.
/// Returns the converged root above the hint with the smallest Im w.
/// Throws NumericalError when no start converges.
SaddleSearch find_saddle(double m, Complex hint);

/// Saddle estimate of the C' integral; see saddle_pair for the complex terms.
double saddle_term(const LorentzianParams& p, double m, Complex w1);

/// The steepest-descent terms at w1 and at conj(w1), each evaluated with the
/// kernel of its own half plane. Their sum is S_m. NumericalError when
/// |p''(w1)| < 1e-14.
std::pair<Complex, Complex> saddle_pair(const LorentzianParams& p, double m, Complex w1);

struct ErrorDecomposition {
  double m = 0.0;
  double reference = 0.0;      // I from the closed form
  double approximation = 0.0;  // T_{4m^2, m}
  double total = 0.0;          // I - T_m
  double pole_term = 0.0;      // R_m at the two-term pole (reference table convention)
  double pole_term_exact_location = 0.0;  // R_m at the exact pole
  std::optional<double> saddle_term;      // S_m
  Complex w0;                             // exact pole
  std::optional<Complex> w1;              // saddle
  bool saddle_converged = false;
};

/// Full decomposition for m in [1, 12].
ErrorDecomposition decompose_error(const LorentzianParams& p, double m);

}  // namespace oscq
