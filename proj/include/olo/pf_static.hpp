// Parameter-free learner for static regret: online mirror descent on the
// curvature-capped radial potential, with closed-form dual updates. Plays
//   w_{t+1} = alpha_{t+1} * (theta/||theta||) * (exp(f(||theta||)) - 1),
// where theta = -g_{1:t} is the accumulated dual, V_t = 4G^2 + ||g||^2_{1:t-1}
// tracks observed gradient mass, alpha_t = eps*G / (sqrt(V_t) log^2(V_t/G^2)),
// and f switches from ||theta||^2/(4k^2 V) to ||theta||/(kG) - V/G^2 at
// ||theta|| = 2kV/G. Guarantees regret <= eps*G*O(1) +
// O(||u|| sqrt(V_T log(||u||/alpha_T))) against every comparator u
// simultaneously.
#pragma once

#include "olo/core.hpp"
#include "olo/regularizer.hpp"

namespace olo {

struct PfStaticState {
  std::int64_t t = 1;  // current round (1-based); w is the iterate w_t
  Vector w;
  Vector theta;  // dual: -sum of observed gradients
  double V = 0.0;
  double alpha = 0.0;
  double G = 1.0;
  double eps = 1.0;
  double k = 3.0;
  KahanSum grad_sq;  // compensated sum of ||g||^2
};

/// alpha(V) = eps * G / (sqrt(V) * log^2(V / G^2)).
double pf_alpha(double G, double eps, double V);

/// Initial state: w_1 = 0, theta_1 = 0, V_1 = 4 G^2.
/// k < 3 violates the stability conditions behind the regret bound and is
/// rejected unless allow_unstable_k is set (for experimentation).
PfStaticState pf_init(double G, double eps, double k, Index d,
                      bool allow_unstable_k = false);

/// Observes g_t and advances to w_{t+1}. Rejects ||g|| > G (beyond 1e-12
/// relative). When ||theta|| <= 1e-12 the iterate is set exactly to zero.
void pf_step(PfStaticState& s, const GradientRound& g);

/// Regularizer psi_t of the current state:
/// CappedMin(k, alpha_t, V_t, eta_cap = 1/G).
RadialRegularizerParams pf_params(const PfStaticState& s);

/// Static regret bound against comparator u evaluated at the current state
/// (after T steps the state holds V_{T+1}, alpha_{T+1}):
///   4 eps G + 2 k ||u|| max{ sqrt(V log(||u||/alpha + 1)),
///                            G log(||u||/alpha + 1) }.
double pf_bound_rhs(const PfStaticState& s, const Vector& u);

}  // namespace olo
