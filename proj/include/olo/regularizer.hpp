// Radial potential functions psi(w) = Psi(||w||) built from the shifted
// logarithm F(x) = log(x/alpha + 1), together with their derivatives,
// closed-form values, inverse gradient map, and the induced effective
// step-size eta(x). Two modes:
//
//  * CappedMin:  Psi'(x) = k * min(2*sqrt(V*F(x)), F(x)/eta_cap + V*eta_cap),
//    the curvature-capped potential used by the parameter-free static and
//    scale-free learners (k >= 3 for the stability conditions; the branch
//    switch is at F(x) = V*eta_cap^2, ties resolved to the first branch).
//  * FixedEta:   Psi'(x) = 2*F(x)/eta, the fixed-step potential used by the
//    dynamic-regret sub-learners.
//
// Throughout, x is a radius (x >= 0) and all functions are centered so that
// Psi(0) = Psi'(0) = 0, which makes psi a valid centered regularizer.
#pragma once

#include "olo/core.hpp"

#include <vector>

namespace olo {

enum class RegularizerMode { CappedMin, FixedEta };

struct RadialRegularizerParams {
  RegularizerMode mode = RegularizerMode::CappedMin;
  double k = 3.0;       // CappedMin leading coefficient
  double alpha = 1.0;   // log shift, > 0
  double V = 1.0;       // CappedMin variance term, > 0
  double eta_cap = 1.0; // CappedMin step-size cap, > 0
  double eta = 1.0;     // FixedEta step size, > 0

  static RadialRegularizerParams capped_min(double k, double alpha, double V,
                                            double eta_cap);
  static RadialRegularizerParams fixed_eta(double alpha, double eta);
};

/// F(x) = log(x/alpha + 1), the shared log radius.
double shifted_log(const RadialRegularizerParams& p, double x);

/// Psi(x) >= 0, convex, Psi(0) = 0. Closed form (no quadrature); the
/// CappedMin first branch integrates sqrt(F) via Dawson's integral.
double psi_value(const RadialRegularizerParams& p, double x);

/// Psi'(x) >= 0, Psi'(0) = 0.
double psi_prime(const RadialRegularizerParams& p, double x);

/// Psi''(x) > 0 for x > 0 (diverges at 0+ in CappedMin mode).
double psi_second(const RadialRegularizerParams& p, double x);

/// Psi'''(x) <= 0 for x > 0.
double psi_third(const RadialRegularizerParams& p, double x);

/// The inverse of Psi' on [0, inf): psi_prime_inverse(p, psi_prime(p, x)) = x.
double psi_prime_inverse(const RadialRegularizerParams& p, double r);

/// Gradient of psi(w) = Psi(||w||); zero vector at w = 0.
Vector grad_psi(const RadialRegularizerParams& p, const Vector& w);

/// Bregman divergence D_psi(w | v) = psi(w) - psi(v) - <grad psi(v), w - v>.
double bregman(const RadialRegularizerParams& p, const Vector& w,
               const Vector& v);

/// Effective step size eta(x) = Integral_0^x eta'(v) dv with
/// eta'(x) = min(sqrt(F(x)/V), eta_cap) in CappedMin mode and eta'(x) = eta
/// in FixedEta mode. Satisfies Psi''(x) * eta'(x) <= ... the stability
/// regime; used by the stability-lemma checker.
double eta_fn(const RadialRegularizerParams& p, double x);
double eta_fn_prime(const RadialRegularizerParams& p, double x);

/// Result of sweeping the one-dimensional stability conditions
///   (1) Psi'(x) >= 0, (2) Psi''(x) >= 0, (3) Psi'''(x) <= 0,
///   (4) |Psi'''(x)| <= (eta'(x)/2) * Psi''(x)^2 for x > x0
/// over a grid of radii. `condition` is 0 when all hold, else the 1-based
/// index of the first violated condition.
struct StabilityReport {
  bool pass = true;
  int condition = 0;
  double x = 0.0;    // first violating radius
  double lhs = 0.0;  // violating side values, for diagnostics
  double rhs = 0.0;
};

StabilityReport check_stability_conditions(const RadialRegularizerParams& p,
                                           double x0,
                                           const std::vector<double>& grid);

/// n log-spaced points on [lo, hi] (lo, hi > 0, n >= 2).
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace olo
