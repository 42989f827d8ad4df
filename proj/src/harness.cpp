#include "olo/harness.hpp"

#include <cmath>

namespace olo {

PfRunResult run_pf(double G, double eps, double k, Index d,
                   const std::vector<GradientRound>& gs, bool with_trace) {
  PfRunResult res;
  res.final_state = pf_init(G, eps, k, d);
  res.plays.reserve(gs.size());
  if (with_trace) res.trace.reserve(gs.size());
  for (const GradientRound& g : gs) {
    res.plays.push_back(res.final_state.w);
    TraceRound r;
    if (with_trace) {
      r.g = g;
      r.w = res.final_state.w;
      r.psi = pf_params(res.final_state);
    }
    pf_step(res.final_state, g);
    if (with_trace) {
      r.w_next = res.final_state.w;
      r.psi_next = pf_params(res.final_state);
      res.trace.push_back(std::move(r));
    }
  }
  return res;
}

DynRunResult run_dynamic(double G, double varepsilon, std::int64_t T_planned,
                         Index d, const std::vector<GradientRound>& gs,
                         bool with_trace) {
  DynRunResult res;
  res.final_state = dyn_init(G, varepsilon, T_planned, d);
  DynamicLearnerState& s = res.final_state;
  const std::size_t n_subs = s.etas.size();
  res.plays.reserve(gs.size());
  res.sub_plays.assign(n_subs, {});
  if (with_trace) res.sub_traces.assign(n_subs, {});
  for (const GradientRound& g : gs) {
    res.plays.push_back(s.w);
    std::vector<RadialRegularizerParams> psi_before;
    if (with_trace) {
      psi_before.reserve(n_subs);
      for (std::size_t i = 0; i < n_subs; ++i) {
        res.sub_plays[i].push_back(s.sub_w[i]);
        psi_before.push_back(dyn_sub_params(s, i));
      }
    } else {
      for (std::size_t i = 0; i < n_subs; ++i) {
        res.sub_plays[i].push_back(s.sub_w[i]);
      }
    }
    std::vector<Vector> w_before;
    if (with_trace) w_before = s.sub_w;
    dyn_step(s, g);
    if (with_trace) {
      for (std::size_t i = 0; i < n_subs; ++i) {
        TraceRound r;
        r.g = g;
        r.w = w_before[i];
        r.w_next = s.sub_w[i];
        r.psi = psi_before[i];
        r.psi_next = dyn_sub_params(s, i);
        r.lambda = 2.0 * s.etas[i] * g.norm * g.norm;
        res.sub_traces[i].push_back(std::move(r));
      }
    }
  }
  return res;
}

SfRunResult run_scale_free(double eps, double k, Index d,
                           const std::vector<GradientRound>& gs) {
  SfRunResult res;
  res.final_state = sf_init(eps, k, d);
  ScaleFreeState& s = res.final_state;
  res.plays.reserve(gs.size());
  res.records.reserve(gs.size());
  for (const GradientRound& g : gs) {
    SfRoundRecord rec;
    rec.alpha = s.alpha_tilde;
    rec.V = s.V_tilde;
    rec.h = s.h;
    rec.D = std::sqrt(s.D_sq_accum);
    rec.gtilde_norm =
        sf_surrogate_grad(s.w, sf_clip(g.g, s.h), rec.D).norm();
    res.plays.push_back(sf_step(s, g));
    rec.theta_next = s.theta_tilde;
    rec.V_next = s.V_tilde;
    rec.alpha_next = s.alpha_tilde;
    rec.h_next = s.h;
    rec.w_next = s.w;
    res.records.push_back(std::move(rec));
  }
  return res;
}

ImpRunResult run_implicit(double G, double eps, double k, Index d,
                          const std::vector<GradientRound>& gs,
                          const std::function<HintFunction(std::int64_t)>& hint_for,
                          bool with_trace) {
  ImpRunResult res;
  res.final_state = imp_init(G, eps, k, d);
  ImplicitState& s = res.final_state;
  imp_optimistic_step(s, hint_for(1));
  res.plays.reserve(gs.size());
  if (with_trace) res.x_trace.reserve(gs.size());
  for (const GradientRound& g : gs) {
    res.plays.push_back(s.w);
    TraceRound r;
    if (with_trace) {
      r.g = g;
      r.w = s.x;
      r.psi = imp_params(s);
      r.lambda = 0.0;
    }
    imp_x_step(s, g);
    if (with_trace) {
      r.w_next = s.x;
      r.psi_next = imp_params(s);
      res.x_trace.push_back(std::move(r));
    }
    imp_optimistic_step(s, hint_for(s.t));
  }
  return res;
}

}  // namespace olo
