// Numerical certification of mirror-descent runs: per-round proof-term
// diagnostics, regret-bound checkers, a brute-force argmin oracle for the
// closed-form updates, and adaptive-sum ("integral") lemma checks.
#pragma once

#include "olo/core.hpp"
#include "olo/regularizer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace olo {

/// One replayable mirror-descent round. The update being certified is
///   w_{t+1} = argmin_w <g_t, w> + D_{psi_t}(w | w_t) + phi_t(w),
/// with composite penalty phi_t(w) = [psi_{t+1}(w) - psi_t(w)] + lambda_t*||w||.
/// A missing psi means psi_t is identically zero (degenerate first round of
/// the scale-free learner).
struct TraceRound {
  GradientRound g;
  Vector w;       // w_t
  Vector w_next;  // w_{t+1}
  std::optional<RadialRegularizerParams> psi;  // psi_t
  RadialRegularizerParams psi_next;            // psi_{t+1}
  double lambda = 0.0;  // coefficient of the ||w|| penalty in phi_t
};

using RunTrace = std::vector<TraceRound>;

/// Optional strong-lemma terms (exact regret decomposition).
struct StrongTerms {
  double P = 0.0;  // <grad psi_t(w_t), u_{t-1} - u_t>, defined for t >= 2
  double L = 0.0;  // -(loss + penalty) divergence terms; 0 for linear losses
                   // with no penalty
};

struct RoundDiagnostics {
  std::int64_t t = 0;
  double delta = 0.0;  // <g,w-w'> - D_{psi_t}(w'|w) - phi_t(w')
  // <grad psi_{t+1}(w_{t+1}), u_t - u_{t+1}>; 0 at t=T. The backward
  // difference is the one the exact decomposition produces (it is P_{t+1} of
  // the strong lemma); with the forward difference the prefix bound is false
  // whenever the comparator jumps away from the current iterate.
  double rho = 0.0;
  double phi_at_u = 0.0;  // phi_t(u_t); 0 when no comparators are given
  std::optional<StrongTerms> strong;
};

/// Per-round proof terms of the mirror-descent regret lemma. Comparators may
/// be omitted (rho and phi_at_u are then zero). When `with_strong_terms` is
/// set and comparators are present, also fills the exact-decomposition terms.
std::vector<RoundDiagnostics> compute_diagnostics(
    const RunTrace& trace, const ComparatorSequence* comparators,
    bool with_strong_terms = false);

struct CheckReport {
  bool pass = true;
  double lhs = 0.0;        // offending (or final) measured value
  double rhs = 0.0;        // bound it was compared against
  std::int64_t witness_t = 0;  // first offending prefix/round, 0 if none
  std::string what;
};

/// Mirror-descent regret lemma on an actual run: for every prefix T',
///   R_{T'}(u) <= psi_{T'+1}(u_{T'}) + sum phi_t(u_t) + sum_{t<T'} rho_t
///               + sum delta_t + slack_per_round * T'.
CheckReport check_centered_md(const RunTrace& trace,
                              const ComparatorSequence& comparators,
                              double slack_per_round = 1e-8);

/// Exact strong decomposition of regret (an equality, up to roundoff):
///   R_T(u) = D_{psi_{T+1}}(u_T|0) - D_{psi_{T+1}}(u_T|w_{T+1})
///            + sum varphi_t(u_t) + sum_{t>=2} P_t + sum delta_t + sum L_t.
/// Returns lhs = measured regret, rhs = decomposition total; pass iff they
/// agree to |lhs - rhs| <= tol * (1 + scale of terms).
CheckReport check_strong_decomposition(const RunTrace& trace,
                                       const ComparatorSequence& comparators,
                                       double tol = 1e-8);

/// Which reference radius x0 the stability bound 2||g||^2 / Psi''_t(x0) uses.
enum class X0Kind {
  AlphaEMinusOne,  // x0 = alpha_t * (e - 1), i.e. F(x0) = 1
  Zero,            // x0 = 0 (finite curvature only in FixedEta mode)
};

/// Stability lemma on a run: per round,
///   deltahat_t = <g,w-w'> - D_{psi_t}(w'|w) - eta_t(||w'||) * ||g||^2
///              <= 2 ||g||^2 / Psi''_t(x0) + slack.
/// Rounds with psi_t absent are skipped (nothing to certify).
CheckReport check_stability_lemma(const RunTrace& trace, X0Kind x0kind,
                                  double slack = 1e-10);

/// Independent oracle for the closed-form updates: minimizes
///   <g, w> + D_{psi_t}(w | w_t) + [psi_next(w) - psi_t(w)] + lambda * ||w||
/// by exploiting that the minimizer is colinear with dual = grad psi_t(w_t) - g
/// and running a bracketed ternary search on the radius (terminating at
/// width 1e-12 * (1 + R)). Throws on bracketing failure.
Vector brute_force_update(const std::optional<RadialRegularizerParams>& psi,
                          const RadialRegularizerParams& psi_next,
                          double lambda, const Vector& w, const Vector& g);

struct IntegralLemmasReport {
  bool pass = true;
  // sum ||g_t||^2 / (V_t log^2(V_t/G^2)) with V_t = 4G^2 + ||g||^2_{1:t-1}
  double log_sum = 0.0;
  double log_bound = 2.0;
  // sum ||g_t||^2 / sqrt(V_t) with V_t = ||g||^2_{1:t} (0/0 terms skipped)
  double sqrt_sum = 0.0;
  double sqrt_bound = 0.0;  // 2 sqrt(sum ||g_t||^2)
};

/// Adaptive-sum lemmas behind the alpha aggregation arguments.
/// Requires ||g_t|| <= G.
IntegralLemmasReport check_integral_lemmas(const std::vector<GradientRound>& gs,
                                           double G, double slack = 1e-9);

/// Range-ratio lemma for the scale-free learner:
///   sum_t alpha_t * ||gtilde_t||^2 / sqrt(V_t) <= 2 * eps * h_T + slack_per_round * T.
/// Rounds with V_t = 0 (forced gtilde_t = 0) are skipped.
CheckReport check_alpha_sum_lemma(const std::vector<double>& alphas,
                                  const std::vector<double>& gtilde_norms,
                                  const std::vector<double>& V_tildes,
                                  double h_T, double eps,
                                  double slack_per_round = 1e-9);

}  // namespace olo
