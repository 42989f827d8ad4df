// Scale-free, Lipschitz-adaptive learner for unbounded domains. No gradient
// bound is assumed: each round plays inside an artificial ball of radius
// D_t = sqrt(sum_{s<t} ||g_s||/G_s), clips the observed gradient to the hint
// h_t = G_{t-1} (the running max of past norms), and feeds the inner dual
// update the surrogate gradient
//   gtilde = (1/2) gbar + (1/2)||gbar|| * d/dw max{0, ||w|| - D_t},
// so the hint is never wrong and constraint violations are charged back to
// the loss. The inner update is the radial-potential closed form with
// V_tilde = 4 h^2 + ||gtilde||^2_{1:t-1} and alpha_tilde =
// eps / (sqrt(B_tilde) log^2 B_tilde), where B_tilde accumulates the
// range-ratio budget b_tilde = 4 + sum ||gtilde_s||^2 / h_s^2. Every play is
// exactly invariant under a rescaling g -> c*g of all losses.
#pragma once

#include <vector>

#include "olo/core.hpp"

namespace olo {

struct ScaleFreeState {
  std::int64_t t = 1;   // current round (1-based)
  Vector w;             // unprojected inner iterate w_t
  Vector theta_tilde;   // dual: -sum of surrogate gradients
  double h = 0.0;       // hint h_t = G_{t-1}; h_1 = 0
  double h_prev = 0.0;  // hint of the previous round (h_{t-1})
  double G_running = 0.0;     // G_t = max_{tau<=t} ||g_tau||
  double V_tilde = 0.0;       // 4 h_t^2 + ||gtilde||^2_{1:t-1}
  double b_tilde = 4.0;       // 4 + sum_{s<t} ||gtilde_s||^2 / h_s^2
  double B_tilde = 16.0;      // B_{t+1} = B_t + 4 b_t; B_1 = 4 b_1
  double alpha_tilde = 0.0;   // eps / (sqrt(B) log^2 B)
  double eps = 1.0;
  double D_sq_accum = 0.0;  // sum ||g_s||/G_s, so D_t = sqrt(accum)
  double k = 3.0;
  KahanSum gtilde_sq;  // compensated sum of ||gtilde||^2
};

/// Projection onto the ball of radius D: w * min(1, D / ||w||).
Vector sf_project(const Vector& w, double D);

/// Gradient clipping to the hint: g * min(1, h / ||g||); zero when h = 0.
Vector sf_clip(const Vector& g, double h);

/// Subgradient of the surrogate loss
///   (1/2)<gbar, w> + (1/2)||gbar|| max{0, ||w|| - D}
/// at w: (1/2) gbar + (1/2)||gbar|| (w/||w||) [||w|| > D]. The hinge term is
/// taken inactive at the boundary ||w|| = D and at w = 0.
Vector sf_surrogate_grad(const Vector& w, const Vector& g_bar, double D);

/// Initial state: w_1 = 0, h_1 = 0, G_0 = 0, b_1 = 4, B_1 = 16,
/// theta_tilde = 0. k < 3 is rejected unless allow_unstable_k is set.
ScaleFreeState sf_init(double eps, double k, Index d,
                       bool allow_unstable_k = false);

/// One round: returns the projected play for the current round and advances
/// the state. No precondition on ||g|| -- the learner is Lipschitz-free.
/// Round 1 has h_1 = 0, which forces gbar = gtilde = 0 and hence w_2 = 0
/// regardless of g_1; the division ||gtilde||^2 / h^2 treats 0/0 as 0.
Vector sf_step(ScaleFreeState& s, const GradientRound& g);

/// Order-of-growth regret bound against comparator u after T >= 1 rounds
/// (the state then holds V_{T+1}, alpha_{T+1}, h_prev = h_T):
///   4 eps h_T + 2 k ||u|| max{ sqrt(V_{T+1} L), h_T L }
///   + G_T ||u||^3 + G_T ||u|| + G_T sqrt(sum ||g_t||/G_t),
/// with L = log(||u||/alpha_{T+1} + 1). The constants on the last three terms
/// come from an external reduction and are deliberately loose (set to 1);
/// use this for order-of-growth checks, not tight domination.
double sf_bound_rhs(const ScaleFreeState& s, const Vector& u,
                    const std::vector<GradientRound>& gs);

/// Same bound with only the round count: T_observed must equal the number of
/// rounds the state has absorbed (s.t - 1, >= 1).
double sf_bound_rhs(const ScaleFreeState& s, const Vector& u,
                    std::int64_t T_observed);

}  // namespace olo
