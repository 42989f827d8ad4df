// Traced experiment runners: drive a learner over a gradient sequence and
// record everything the verification checkers need (iterates, per-round
// regularizer parameters, composite-penalty coefficients).
#pragma once

#include "olo/core.hpp"
#include "olo/dynamic.hpp"
#include "olo/implicit_optimistic.hpp"
#include "olo/pf_static.hpp"
#include "olo/scale_free.hpp"
#include "olo/verification.hpp"

#include <functional>

#include <vector>

namespace olo {

struct PfRunResult {
  std::vector<Vector> plays;  // w_1 .. w_T (play at round t)
  RunTrace trace;             // per-round proof trace (psi_t -> psi_{t+1})
  PfStaticState final_state;  // after T steps: holds V_{T+1}, alpha_{T+1}
};

PfRunResult run_pf(double G, double eps, double k, Index d,
                   const std::vector<GradientRound>& gs,
                   bool with_trace = true);

struct DynRunResult {
  std::vector<Vector> plays;                // aggregate plays
  std::vector<std::vector<Vector>> sub_plays;  // per grid entry
  std::vector<RunTrace> sub_traces;            // per grid entry
  DynamicLearnerState final_state;
};

/// T_planned fixes the step-size grid; gs may be shorter or longer.
DynRunResult run_dynamic(double G, double varepsilon, std::int64_t T_planned,
                         Index d, const std::vector<GradientRound>& gs,
                         bool with_trace = true);

/// Per-round snapshot of the scale-free learner, taken with the values in
/// force when gradient g_t arrives (alpha_t, V_t, h_t index the round of
/// arrival, matching the summation in the range-ratio lemma).
struct SfRoundRecord {
  double alpha;        // alpha_tilde_t
  double V;            // V_tilde_t
  double h;            // hint h_t
  double D;            // ball radius D_t
  double gtilde_norm;  // ||gtilde_t||
  Vector theta_next;   // dual after the round (drives w_{t+1})
  double V_next;       // V_tilde_{t+1}
  double alpha_next;   // alpha_tilde_{t+1}
  double h_next;       // h_{t+1}
  Vector w_next;       // inner iterate w_{t+1} (unprojected)
};

struct SfRunResult {
  std::vector<Vector> plays;           // projected plays
  std::vector<SfRoundRecord> records;  // one per round
  ScaleFreeState final_state;
};

SfRunResult run_scale_free(double eps, double k, Index d,
                           const std::vector<GradientRound>& gs);

struct ImpRunResult {
  std::vector<Vector> plays;  // w_1 .. w_T
  RunTrace x_trace;           // anchor sequence as a mirror-descent trace
  ImplicitState final_state;
};

/// hint_for(t) supplies the guessed loss lhat_t; it is queried for
/// t = 1 .. T+1 (the first call aims w_1, the last one w_{T+1}).
ImpRunResult run_implicit(double G, double eps, double k, Index d,
                          const std::vector<GradientRound>& gs,
                          const std::function<HintFunction(std::int64_t)>& hint_for,
                          bool with_trace = true);

}  // namespace olo
