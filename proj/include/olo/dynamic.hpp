// Dynamic-regret learner: a small grid of fixed-step mirror-descent
// sub-learners on the shifted-log potential, with a movement penalty
// varphi_t(w) = 2 eta ||g_t||^2 ||w|| folded into each sub-learner's clamp.
// The played iterate is the sum of the sub-learner iterates; against any
// comparator sequence u_1..u_T the aggregate regret is bounded by
// dyn_bound_rhs (path-length adaptive, O(sqrt((M + P_T) T log T))).
#pragma once

#include "olo/core.hpp"
#include "olo/regularizer.hpp"

#include <vector>

namespace olo {

struct DynamicLearnerState {
  std::int64_t t = 1;
  double G = 1.0;
  double varepsilon = 1.0;   // total wealth budget across the grid
  double per_sub_eps = 1.0;  // varepsilon / |grid|
  std::int64_t T = 0;        // planned horizon (fixes the step-size grid)
  std::vector<double> etas;  // step-size grid, ascending, deduplicated
  std::vector<Vector> sub_w; // per-sub-learner iterates
  Vector w;                  // aggregate play: sum of sub_w
  double V = 0.0;            // shared 4G^2 + ||g||^2_{1:t-1}
  double alpha = 0.0;        // shared alpha_t (uses per_sub_eps)
  KahanSum grad_sq;
};

/// Step-size grid S = { min(2^j / (G sqrt(T)), 1/G) : 1 <= j <= ceil(log2 sqrt(T)) },
/// deduplicated and ascending (the clamp at 1/G collapses the top entries).
std::vector<double> dyn_eta_grid(double G, std::int64_t T);

/// alpha(V) = eps_sub * G^2 / (V log^2(V/G^2)).
double dyn_alpha(double G, double eps_sub, double V);

DynamicLearnerState dyn_init(double G, double varepsilon, std::int64_t T,
                             Index d);

/// One fixed-eta sub-learner update (pure helper; the aggregate step calls it
/// for every grid entry). Maps w_t to w_{t+1} given the shared alphas:
///   theta = grad psi_t(w_t) - g,
///   w_{t+1} = (alpha_next/||theta||) expm1((eta/2) max(||theta|| - 2 eta ||g||^2, 0)) theta.
Vector dyn_sub_step(const Vector& w, double eta, const GradientRound& g,
                    double alpha_t, double alpha_next);

/// Observes g_t: advances the shared V/alpha and every sub-learner, refreshes
/// the aggregate play. Rejects ||g|| > G.
void dyn_step(DynamicLearnerState& s, const GradientRound& g);

/// Sub-learner regularizer psi_t = FixedEta(alpha_t, eta).
RadialRegularizerParams dyn_sub_params(const DynamicLearnerState& s,
                                       std::size_t sub_index);

/// Dynamic regret bound for the full run (state after T steps):
///   2 eps_sub G |S| + 6 sqrt(2 (M+P) L sum ||g_t||^2 ||u_t||) + 4 G (M+P) L,
/// where M = max ||u_t||, P = path length, and
/// L = max(log(9 M T^2 / (4 alpha_{T+1}) + 1), 1).
double dyn_bound_rhs(const DynamicLearnerState& s,
                     const ComparatorSequence& us,
                     const std::vector<GradientRound>& gs);

/// The same closed form evaluated from prefix aggregates, for callers that
/// track M = max ||u_t||, P = path length, and gu = sum ||g_t||^2 ||u_t||
/// incrementally. `alpha` is the shared alpha at the prefix end and T the
/// prefix length.
double dyn_bound_terms(double G, double per_sub_eps, std::size_t n_subs,
                       double alpha, double T, double M, double P, double gu);

}  // namespace olo
