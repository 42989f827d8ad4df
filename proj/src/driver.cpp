#include "olo/driver.hpp"

#include "olo/adversaries.hpp"
#include "olo/harness.hpp"
#include "olo/learner.hpp"
#include "olo/reductions.hpp"
#include "olo/verification.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <string_view>

namespace olo {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
  throw ConfigError(ptr, msg);
}

const Json* find(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void expect_object(const Json& j, const std::string& ptr) {
  if (!j.is_object()) fail(ptr, "expected an object");
}

void reject_unknown(const Json& obj, const std::string& ptr,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(ptr + "/" + it.key(), "unknown key");
  }
}

double number_or(const Json& obj, const std::string& ptr, const char* key,
                 double dflt) {
  const Json* j = find(obj, key);
  if (!j) return dflt;
  if (!j->is_number()) fail(ptr + "/" + key, "expected a number");
  return j->get<double>();
}

std::int64_t integer_or(const Json& obj, const std::string& ptr,
                        const char* key, std::int64_t dflt) {
  const Json* j = find(obj, key);
  if (!j) return dflt;
  if (!j->is_number_integer()) fail(ptr + "/" + key, "expected an integer");
  return j->get<std::int64_t>();
}

std::string string_or(const Json& obj, const std::string& ptr, const char* key,
                      const std::string& dflt) {
  const Json* j = find(obj, key);
  if (!j) return dflt;
  if (!j->is_string()) fail(ptr + "/" + key, "expected a string");
  return j->get<std::string>();
}

const Json& require_key(const Json& obj, const std::string& ptr,
                        const char* key) {
  const Json* j = find(obj, key);
  if (!j) fail(ptr, std::string("missing required key \"") + key + "\"");
  return *j;
}

Vector vector_field(const Json& j, const std::string& ptr, Index dim) {
  if (!j.is_array()) fail(ptr, "expected an array of numbers");
  if (static_cast<Index>(j.size()) != dim) {
    fail(ptr, "expected " + std::to_string(dim) + " entries, got " +
                  std::to_string(j.size()));
  }
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const Json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_number()) fail(ptr + "/" + std::to_string(i), "expected a number");
    v(i) = e.get<double>();
  }
  return v;
}

enum class Alg { Pf, Dyn, Sf, Imp, Lazy, OneDim };

struct ParsedConfig {
  Alg alg = Alg::Pf;
  std::string alg_name;
  double G = 1.0;
  double eps = 1.0;
  double k = 3.0;
  Index dim = 1;
  std::int64_t T_planned = 0;       // dynamic: 0 means "adversary horizon"
  std::string hint = "none";        // implicit_optimistic
  std::int64_t interval_len = 1;    // lazy (uniform schedule)
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;  // lazy
  AdversaryConfig adv;
  std::string adv_kind_name;
  std::string cmp_kind = "zero";
  Vector cmp_point;
  std::vector<std::int64_t> cmp_switches;
  std::vector<Vector> cmp_values;
  std::string out_trace;
  std::string out_report;
  std::vector<std::string> verify;
};

bool alg_has_G(Alg a) { return a != Alg::Sf; }

const std::set<std::string>& applicable_checks(Alg a) {
  static const std::set<std::string> pf = {"centered_md", "strong", "stability",
                                           "bound", "delta_sum", "integral"};
  static const std::set<std::string> dyn = {"centered_md", "stability", "bound",
                                            "integral"};
  static const std::set<std::string> sf = {"bound", "alpha_sum", "integral"};
  static const std::set<std::string> imp = {"centered_md", "strong",
                                            "stability", "bound", "integral"};
  static const std::set<std::string> lazy = {"lazy_decomposition", "integral"};
  static const std::set<std::string> onedim = {"onedim_identity", "integral"};
  switch (a) {
    case Alg::Pf: return pf;
    case Alg::Dyn: return dyn;
    case Alg::Sf: return sf;
    case Alg::Imp: return imp;
    case Alg::Lazy: return lazy;
    case Alg::OneDim: return onedim;
  }
  return pf;  // unreachable
}

bool known_check_name(const std::string& name) {
  static const std::set<std::string> all = {
      "centered_md", "strong",    "stability",          "bound",
      "delta_sum",   "integral",  "lazy_decomposition", "alpha_sum",
      "onedim_identity"};
  return all.count(name) > 0;
}

ParsedConfig parse_config(const Json& config) {
  if (config.is_discarded()) fail("", "config is not valid JSON");
  expect_object(config, "");
  reject_unknown(config, "", {"algorithm", "algorithm_params", "adversary",
                              "comparators", "outputs", "verify"});

  ParsedConfig pc;

  // --- algorithm -----------------------------------------------------------
  const Json& alg = require_key(config, "", "algorithm");
  if (!alg.is_string()) fail("/algorithm", "expected a string");
  pc.alg_name = alg.get<std::string>();
  if (pc.alg_name == "pf_static") pc.alg = Alg::Pf;
  else if (pc.alg_name == "dynamic") pc.alg = Alg::Dyn;
  else if (pc.alg_name == "scale_free") pc.alg = Alg::Sf;
  else if (pc.alg_name == "implicit_optimistic") pc.alg = Alg::Imp;
  else if (pc.alg_name == "lazy") pc.alg = Alg::Lazy;
  else if (pc.alg_name == "onedim") pc.alg = Alg::OneDim;
  else
    fail("/algorithm",
         "unknown algorithm \"" + pc.alg_name +
             "\" (expected pf_static, dynamic, scale_free, "
             "implicit_optimistic, lazy, or onedim)");

  // --- algorithm_params ----------------------------------------------------
  const std::string pptr = "/algorithm_params";
  Json params = Json::object();
  if (const Json* p = find(config, "algorithm_params")) {
    expect_object(*p, pptr);
    params = *p;
  }
  switch (pc.alg) {
    case Alg::Pf:
    case Alg::OneDim:
      reject_unknown(params, pptr, {"G", "eps", "k", "dim"});
      break;
    case Alg::Dyn:
      reject_unknown(params, pptr, {"G", "eps", "dim", "T"});
      break;
    case Alg::Sf:
      reject_unknown(params, pptr, {"eps", "k", "dim"});
      break;
    case Alg::Imp:
      reject_unknown(params, pptr, {"G", "eps", "k", "dim", "hint"});
      break;
    case Alg::Lazy:
      reject_unknown(params, pptr, {"G", "eps", "k", "dim", "base", "schedule"});
      break;
  }
  pc.G = number_or(params, pptr, "G", 1.0);
  pc.eps = number_or(params, pptr, "eps", 1.0);
  pc.k = number_or(params, pptr, "k", 3.0);
  if (alg_has_G(pc.alg) && !(pc.G > 0.0)) fail(pptr + "/G", "must be > 0");
  if (!(pc.eps > 0.0)) fail(pptr + "/eps", "must be > 0");
  if (pc.alg != Alg::Dyn && !(pc.k >= 3.0)) {
    fail(pptr + "/k", "must be >= 3 (stability of the update map)");
  }
  const std::int64_t dim = integer_or(params, pptr, "dim", 1);
  if (dim < 1) fail(pptr + "/dim", "must be >= 1");
  pc.dim = static_cast<Index>(dim);
  if (pc.alg == Alg::Dyn) {
    pc.T_planned = integer_or(params, pptr, "T", 0);
    if (find(params, "T") && pc.T_planned < 1) fail(pptr + "/T", "must be >= 1");
  }
  if (pc.alg == Alg::Imp) {
    pc.hint = string_or(params, pptr, "hint", "none");
    if (pc.hint != "none" && pc.hint != "previous" && pc.hint != "constant") {
      fail(pptr + "/hint",
           "unknown hint kind \"" + pc.hint +
               "\" (expected none, previous, or constant)");
    }
  }
  if (pc.alg == Alg::Lazy) {
    const std::string base = string_or(params, pptr, "base", "pf_static");
    if (base != "pf_static") {
      fail(pptr + "/base", "unsupported base learner \"" + base +
                               "\" (only pf_static can be wrapped here)");
    }
    if (const Json* sched = find(params, "schedule")) {
      const std::string sptr = pptr + "/schedule";
      expect_object(*sched, sptr);
      reject_unknown(*sched, sptr, {"interval_len", "intervals"});
      const bool has_len = find(*sched, "interval_len") != nullptr;
      const bool has_iv = find(*sched, "intervals") != nullptr;
      if (has_len == has_iv) {
        fail(sptr, "expected exactly one of \"interval_len\" or \"intervals\"");
      }
      if (has_len) {
        pc.interval_len = integer_or(*sched, sptr, "interval_len", 1);
        if (pc.interval_len < 1) fail(sptr + "/interval_len", "must be >= 1");
      } else {
        const Json& iv = *find(*sched, "intervals");
        if (!iv.is_array() || iv.empty()) {
          fail(sptr + "/intervals", "expected a nonempty array of [lo, hi]");
        }
        for (std::size_t i = 0; i < iv.size(); ++i) {
          const Json& e = iv[i];
          const std::string eptr = sptr + "/intervals/" + std::to_string(i);
          if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
              !e[1].is_number_integer()) {
            fail(eptr, "expected an integer pair [lo, hi]");
          }
          pc.intervals.emplace_back(e[0].get<std::int64_t>(),
                                    e[1].get<std::int64_t>());
        }
      }
    }
  }

  // --- adversary -----------------------------------------------------------
  const std::string aptr = "/adversary";
  const Json& adv = require_key(config, "", "adversary");
  expect_object(adv, aptr);
  const Json& kind = require_key(adv, aptr, "kind");
  if (!kind.is_string()) fail(aptr + "/kind", "expected a string");
  pc.adv_kind_name = kind.get<std::string>();
  if (pc.adv_kind_name == "constrained_lb") {
    pc.adv.kind = AdversaryKind::CONSTRAINED_LB;
    reject_unknown(adv, aptr, {"kind", "T"});
  } else if (pc.adv_kind_name == "unconstrained_lb") {
    pc.adv.kind = AdversaryKind::UNCONSTRAINED_LB;
    reject_unknown(adv, aptr, {"kind", "T", "C", "eps"});
  } else if (pc.adv_kind_name == "rademacher") {
    pc.adv.kind = AdversaryKind::RADEMACHER;
    reject_unknown(adv, aptr, {"kind", "T", "seed", "dim", "G"});
  } else if (pc.adv_kind_name == "gaussian_clipped") {
    pc.adv.kind = AdversaryKind::GAUSSIAN_CLIPPED;
    reject_unknown(adv, aptr, {"kind", "T", "seed", "dim", "G"});
  } else if (pc.adv_kind_name == "constant") {
    pc.adv.kind = AdversaryKind::CONSTANT;
    reject_unknown(adv, aptr, {"kind", "T", "constant"});
  } else {
    fail(aptr + "/kind",
         "unknown adversary kind \"" + pc.adv_kind_name +
             "\" (expected constrained_lb, unconstrained_lb, rademacher, "
             "gaussian_clipped, or constant)");
  }
  pc.adv.T = integer_or(adv, aptr, "T", 0);
  if (pc.adv.T < 1) {
    fail(find(adv, "T") ? aptr + "/T" : aptr,
         find(adv, "T") ? "must be >= 1" : "missing required key \"T\"");
  }
  const bool lb_adversary = pc.adv.kind == AdversaryKind::CONSTRAINED_LB ||
                            pc.adv.kind == AdversaryKind::UNCONSTRAINED_LB;
  double grad_norm_bound = 1.0;  // lower-bound constructions use unit gradients
  switch (pc.adv.kind) {
    case AdversaryKind::RADEMACHER:
    case AdversaryKind::GAUSSIAN_CLIPPED: {
      const std::int64_t seed = integer_or(adv, aptr, "seed", 0);
      if (seed < 0) fail(aptr + "/seed", "must be >= 0");
      pc.adv.seed = static_cast<std::uint64_t>(seed);
      const std::int64_t adim = integer_or(adv, aptr, "dim", dim);
      if (adim != dim) {
        fail(aptr + "/dim", "must match the algorithm dimension (" +
                                std::to_string(dim) + ")");
      }
      pc.adv.dim = pc.dim;
      pc.adv.G = number_or(adv, aptr, "G", 1.0);
      if (!(pc.adv.G > 0.0)) fail(aptr + "/G", "must be > 0");
      grad_norm_bound = pc.adv.G;
      break;
    }
    case AdversaryKind::CONSTANT: {
      pc.adv.constant =
          vector_field(require_key(adv, aptr, "constant"), aptr + "/constant",
                       pc.dim);
      grad_norm_bound = pc.adv.constant.norm();
      break;
    }
    case AdversaryKind::CONSTRAINED_LB:
      break;
    case AdversaryKind::UNCONSTRAINED_LB: {
      pc.adv.C = number_or(adv, aptr, "C", 0.0);
      if (pc.adv.C < 0.0) fail(aptr + "/C", "must be >= 0 (0 means default)");
      pc.adv.eps = number_or(adv, aptr, "eps", 1.0);
      if (!(pc.adv.eps > 0.0)) fail(aptr + "/eps", "must be > 0");
      break;
    }
  }
  if (lb_adversary && pc.dim != 1) {
    fail(pptr + "/dim", "must be 1 for lower-bound adversaries");
  }
  if (alg_has_G(pc.alg) && pc.G * (1.0 + 1e-12) < grad_norm_bound) {
    fail(pptr + "/G",
         "must be >= the adversary's gradient norm bound (the learner rejects "
         "gradients above its Lipschitz constant)");
  }
  if (pc.alg == Alg::Imp && pc.hint == "constant" &&
      pc.adv.kind != AdversaryKind::CONSTANT) {
    fail(pptr + "/hint",
         "\"constant\" hints take their value from a constant adversary");
  }

  // --- comparators ---------------------------------------------------------
  const std::string cptr = "/comparators";
  if (const Json* cmp = find(config, "comparators")) {
    expect_object(*cmp, cptr);
    const Json& ckind = require_key(*cmp, cptr, "kind");
    if (!ckind.is_string()) fail(cptr + "/kind", "expected a string");
    pc.cmp_kind = ckind.get<std::string>();
    if (pc.cmp_kind == "zero") {
      reject_unknown(*cmp, cptr, {"kind"});
    } else if (pc.cmp_kind == "constant") {
      reject_unknown(*cmp, cptr, {"kind", "point"});
      pc.cmp_point =
          vector_field(require_key(*cmp, cptr, "point"), cptr + "/point",
                       pc.dim);
    } else if (pc.cmp_kind == "piecewise") {
      reject_unknown(*cmp, cptr, {"kind", "switch_points", "values"});
      const Json& sw = require_key(*cmp, cptr, "switch_points");
      if (!sw.is_array()) fail(cptr + "/switch_points", "expected an array");
      for (std::size_t i = 0; i < sw.size(); ++i) {
        if (!sw[i].is_number_integer()) {
          fail(cptr + "/switch_points/" + std::to_string(i),
               "expected an integer");
        }
        pc.cmp_switches.push_back(sw[i].get<std::int64_t>());
      }
      const Json& vals = require_key(*cmp, cptr, "values");
      if (!vals.is_array()) fail(cptr + "/values", "expected an array");
      for (std::size_t i = 0; i < vals.size(); ++i) {
        pc.cmp_values.push_back(vector_field(
            vals[i], cptr + "/values/" + std::to_string(i), pc.dim));
      }
    } else if (pc.cmp_kind == "lower_bound") {
      reject_unknown(*cmp, cptr, {"kind"});
      if (!lb_adversary) {
        fail(cptr + "/kind",
             "lower_bound comparators need a constrained_lb or "
             "unconstrained_lb adversary");
      }
    } else {
      fail(cptr + "/kind",
           "unknown comparator kind \"" + pc.cmp_kind +
               "\" (expected zero, constant, piecewise, or lower_bound)");
    }
  }

  // --- outputs -------------------------------------------------------------
  if (const Json* out = find(config, "outputs")) {
    expect_object(*out, "/outputs");
    reject_unknown(*out, "/outputs", {"trace", "report"});
    pc.out_trace = string_or(*out, "/outputs", "trace", "");
    pc.out_report = string_or(*out, "/outputs", "report", "");
  }

  // --- verify --------------------------------------------------------------
  if (const Json* ver = find(config, "verify")) {
    if (!ver->is_array()) fail("/verify", "expected an array of checker names");
    const std::set<std::string>& ok = applicable_checks(pc.alg);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < ver->size(); ++i) {
      const std::string vptr = "/verify/" + std::to_string(i);
      const Json& e = (*ver)[i];
      if (!e.is_string()) fail(vptr, "expected a string");
      const std::string name = e.get<std::string>();
      if (!known_check_name(name)) fail(vptr, "unknown checker \"" + name + "\"");
      if (!ok.count(name)) {
        fail(vptr, "checker \"" + name + "\" does not apply to algorithm \"" +
                       pc.alg_name + "\"");
      }
      if (!seen.insert(name).second) fail(vptr, "duplicate checker \"" + name + "\"");
      if (name == "bound" && pc.alg != Alg::Dyn && pc.cmp_kind != "zero" &&
          pc.cmp_kind != "constant") {
        fail(vptr,
             "the static regret bound needs a constant comparator sequence "
             "(comparators.kind zero or constant)");
      }
      pc.verify.push_back(name);
    }
  }
  return pc;
}

// --- instance construction --------------------------------------------------

struct Instance {
  std::vector<GradientRound> gs;
  std::vector<double> lb_us;  // nonempty only for lower-bound adversaries
};

Instance build_instance(const ParsedConfig& pc) {
  Instance inst;
  try {
    switch (pc.adv.kind) {
      case AdversaryKind::CONSTRAINED_LB: {
        ConstrainedLb lb = constrained_lb_sequence(pc.adv.T);
        std::vector<Vector> gv;
        gv.reserve(lb.gs.size());
        for (double g : lb.gs) gv.push_back(Vector::Constant(1, g));
        inst.gs = make_rounds(gv);
        inst.lb_us = std::move(lb.us);
        break;
      }
      case AdversaryKind::UNCONSTRAINED_LB: {
        const double C = pc.adv.C == 0.0 ? default_lb_constant() : pc.adv.C;
        UnconstrainedLbSequence seq = unconstrained_lb_sequence(pc.adv.T, C);
        inst.lb_us =
            unconstrained_lb_comparators(pc.adv.T, C, pc.adv.eps, seq.gs);
        std::vector<Vector> gv;
        gv.reserve(seq.gs.size());
        for (double g : seq.gs) gv.push_back(Vector::Constant(1, g));
        inst.gs = make_rounds(gv);
        break;
      }
      default:
        inst.gs = stochastic_gradients(pc.adv);
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/adversary", e.what());
  }
  return inst;
}

ComparatorSequence build_comparators(const ParsedConfig& pc,
                                     const Instance& inst) {
  const std::int64_t T = pc.adv.T;
  if (pc.cmp_kind == "zero") {
    return constant_comparators(T, Vector::Zero(pc.dim));
  }
  if (pc.cmp_kind == "constant") {
    return constant_comparators(T, pc.cmp_point);
  }
  if (pc.cmp_kind == "piecewise") {
    try {
      return piecewise_comparators(T, pc.cmp_switches, pc.cmp_values);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/comparators", e.what());
    }
  }
  // lower_bound
  std::vector<Vector> pts;
  pts.reserve(inst.lb_us.size());
  for (double u : inst.lb_us) pts.push_back(Vector::Constant(1, u));
  return make_comparators(std::move(pts));
}

// --- algorithm runs ---------------------------------------------------------

struct RunData {
  std::vector<Vector> plays;
  std::vector<double> w_norms;  // internal iterate (pre-projection where any)
  std::vector<double> deltas;   // empty => column undefined
  std::vector<double> bounds;   // empty => column undefined
  // checker inputs
  RunTrace trace;                    // pf_static / implicit_optimistic
  std::vector<RunTrace> sub_traces;  // dynamic
  std::vector<SfRoundRecord> sf_records;
  double sf_G_running = 0.0;
  IntervalSchedule schedule;  // lazy
  std::vector<double> od_betas;
  std::vector<Vector> od_xs;
  std::vector<double> od_ghats;
};

void fill_play_norms(RunData& data) {
  data.w_norms.reserve(data.plays.size());
  for (const Vector& w : data.plays) data.w_norms.push_back(w.norm());
}

std::function<HintFunction(std::int64_t)> make_hint_for(
    const ParsedConfig& pc, const std::vector<GradientRound>& gs) {
  if (pc.hint == "previous") {
    const Index d = pc.dim;
    return [&gs, d](std::int64_t t) {
      if (t <= 1) return HintFunction::none(d);
      return HintFunction::linear(gs[static_cast<std::size_t>(t - 2)].g);
    };
  }
  if (pc.hint == "constant") {
    Vector g_hat = pc.adv.constant;
    return [g_hat](std::int64_t) { return HintFunction::linear(g_hat); };
  }
  const Index d = pc.dim;
  return [d](std::int64_t) { return HintFunction::none(d); };
}

RunData run_algorithm(const ParsedConfig& pc,
                      const std::vector<GradientRound>& gs,
                      const ComparatorSequence& us) {
  RunData data;
  const std::size_t T = gs.size();
  // Static bounds certify regret against one fixed point; emit the column
  // only when the comparator sequence never moves.
  const bool static_bounds = pc.cmp_kind == "zero" || pc.cmp_kind == "constant";
  const Vector u0 = us.points.front();

  switch (pc.alg) {
    case Alg::Pf: {
      PfRunResult res = run_pf(pc.G, pc.eps, pc.k, pc.dim, gs, true);
      data.plays = std::move(res.plays);
      fill_play_norms(data);
      const auto diags = compute_diagnostics(res.trace, nullptr);
      data.deltas.reserve(T);
      for (const auto& d : diags) data.deltas.push_back(d.delta);
      if (static_bounds) {
        data.bounds.reserve(T);
        for (std::size_t i = 0; i < T; ++i) {
          PfStaticState s;
          s.V = res.trace[i].psi_next.V;
          s.alpha = res.trace[i].psi_next.alpha;
          s.G = pc.G;
          s.eps = pc.eps;
          s.k = pc.k;
          data.bounds.push_back(pf_bound_rhs(s, u0));
        }
      }
      data.trace = std::move(res.trace);
      break;
    }
    case Alg::Dyn: {
      const std::int64_t planned =
          pc.T_planned > 0 ? pc.T_planned : pc.adv.T;
      DynRunResult res = run_dynamic(pc.G, pc.eps, planned, pc.dim, gs, true);
      data.plays = std::move(res.plays);
      fill_play_norms(data);
      const double per_sub_eps = res.final_state.per_sub_eps;
      const std::size_t n_subs = res.final_state.etas.size();
      KahanSum vsum;
      KahanSum gu;
      double M = 0.0;
      double P = 0.0;
      data.bounds.reserve(T);
      for (std::size_t i = 0; i < T; ++i) {
        vsum.add(gs[i].norm * gs[i].norm);
        const double alpha_next =
            dyn_alpha(pc.G, per_sub_eps, 4.0 * pc.G * pc.G + vsum.value());
        const double un = us.points[i].norm();
        M = std::max(M, un);
        if (i > 0) P += (us.points[i] - us.points[i - 1]).norm();
        gu.add(gs[i].norm * gs[i].norm * un);
        data.bounds.push_back(dyn_bound_terms(pc.G, per_sub_eps, n_subs,
                                              alpha_next,
                                              static_cast<double>(i + 1), M, P,
                                              gu.value()));
      }
      data.sub_traces = std::move(res.sub_traces);
      break;
    }
    case Alg::Sf: {
      SfRunResult res = run_scale_free(pc.eps, pc.k, pc.dim, gs);
      data.plays = std::move(res.plays);
      fill_play_norms(data);
      data.w_norms.clear();
      data.w_norms.reserve(T);
      for (std::size_t i = 0; i < T; ++i) {
        data.w_norms.push_back(i == 0 ? 0.0 : res.records[i - 1].w_next.norm());
      }
      if (static_bounds) {
        double G_run = 0.0;
        double D_acc = 0.0;
        data.bounds.reserve(T);
        for (std::size_t i = 0; i < T; ++i) {
          G_run = std::max(G_run, gs[i].norm);
          if (gs[i].norm > 0.0) D_acc += gs[i].norm / G_run;
          ScaleFreeState s;
          s.t = static_cast<std::int64_t>(i) + 2;
          s.eps = pc.eps;
          s.k = pc.k;
          s.alpha_tilde = res.records[i].alpha_next;
          s.V_tilde = res.records[i].V_next;
          s.h_prev = res.records[i].h;
          s.G_running = G_run;
          s.D_sq_accum = D_acc;
          data.bounds.push_back(
              sf_bound_rhs(s, u0, static_cast<std::int64_t>(i) + 1));
        }
      }
      data.sf_records = std::move(res.records);
      data.sf_G_running = res.final_state.G_running;
      break;
    }
    case Alg::Imp: {
      ImpRunResult res =
          run_implicit(pc.G, pc.eps, pc.k, pc.dim, gs, make_hint_for(pc, gs),
                       true);
      data.plays = std::move(res.plays);
      fill_play_norms(data);
      const auto diags = compute_diagnostics(res.x_trace, nullptr);
      data.deltas.reserve(T);
      for (const auto& d : diags) data.deltas.push_back(d.delta);
      if (static_bounds) {
        data.bounds.reserve(T);
        for (std::size_t i = 0; i < T; ++i) {
          ImplicitState s;
          s.V_hat = res.x_trace[i].psi_next.V;
          s.alpha_hat = res.x_trace[i].psi_next.alpha;
          s.G = pc.G;
          s.eps = pc.eps;
          s.k = pc.k;
          data.bounds.push_back(imp_bound_rhs(s, u0));
        }
      }
      data.trace = std::move(res.x_trace);
      break;
    }
    case Alg::Lazy: {
      IntervalSchedule sched;
      try {
        sched = pc.intervals.empty()
                    ? IntervalSchedule::uniform(pc.adv.T, pc.interval_len)
                    : IntervalSchedule::make(pc.intervals);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("/algorithm_params/schedule/intervals", e.what());
      }
      if (sched.horizon() != pc.adv.T) {
        throw ConfigError("/algorithm_params/schedule",
                          "schedule horizon must equal the adversary horizon");
      }
      auto base = std::make_unique<PfStaticLearner>(
          pc.G * static_cast<double>(sched.max_len()), pc.eps, pc.k, pc.dim);
      auto learner = lazy_wrap(std::move(base), sched);
      data.plays.reserve(T);
      for (std::size_t i = 0; i < T; ++i) {
        data.plays.push_back(learner->play());
        learner->observe(gs[i]);
      }
      fill_play_norms(data);
      data.schedule = std::move(sched);
      break;
    }
    case Alg::OneDim: {
      auto magnitude = std::make_unique<PfStaticLearner>(pc.G, pc.eps, pc.k, 1);
      auto direction = std::make_unique<BallProjectedLearner>(
          std::make_unique<PfStaticLearner>(pc.G, pc.eps, pc.k, pc.dim), 1.0);
      auto learner =
          onedim_combine(std::move(magnitude), std::move(direction));
      data.plays.reserve(T);
      for (std::size_t i = 0; i < T; ++i) {
        data.plays.push_back(learner->play());
        learner->observe(gs[i]);
      }
      fill_play_norms(data);
      data.od_betas = learner->betas();
      data.od_xs = learner->directions();
      data.od_ghats = learner->scalar_grads();
      break;
    }
  }
  return data;
}

// --- checks -----------------------------------------------------------------

void append_g17(std::string& out, double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

std::string fmt_g17(double v) {
  std::string s;
  append_g17(s, v);
  return s;
}

Json check_entry(const std::string& name, const CheckReport& r,
                 const std::string& detail) {
  Json e;
  e["name"] = name;
  e["pass"] = r.pass;
  e["lhs"] = r.lhs;
  e["rhs"] = r.rhs;
  e["witness_t"] = r.witness_t;
  e["detail"] = detail.empty() ? r.what : detail;
  return e;
}

/// Runs `per_sub` over the dynamic grid and keeps the sub-learner with the
/// smallest margin rhs - lhs (any failing sub wins immediately).
template <typename F>
Json aggregate_subs(const std::string& name, std::size_t n, F&& per_sub) {
  CheckReport worst;
  std::size_t worst_index = 0;
  bool have = false;
  bool all_pass = true;
  for (std::size_t j = 0; j < n; ++j) {
    CheckReport rep = per_sub(j);
    if (!rep.pass) {
      rep.what += " (fixed-step sub-learner " + std::to_string(j) + ")";
      Json e = check_entry(name, rep, "");
      e["pass"] = false;
      return e;
    }
    all_pass = all_pass && rep.pass;
    if (!have || rep.rhs - rep.lhs < worst.rhs - worst.lhs) {
      worst = rep;
      worst_index = j;
      have = true;
    }
  }
  worst.pass = all_pass;
  return check_entry(
      name, worst,
      "smallest margin over " + std::to_string(n) +
          " fixed-step sub-learners (index " + std::to_string(worst_index) +
          ")");
}

Json run_checks(const ParsedConfig& pc, const RunData& data,
                const std::vector<GradientRound>& gs,
                const ComparatorSequence& us, const RegretLedger& ledger,
                bool& all_pass) {
  Json checks = Json::array();
  const double T = static_cast<double>(gs.size());
  for (const std::string& name : pc.verify) {
    Json entry;
    if (name == "centered_md") {
      if (pc.alg == Alg::Dyn) {
        entry = aggregate_subs(name, data.sub_traces.size(), [&](std::size_t j) {
          return check_centered_md(data.sub_traces[j], us);
        });
      } else {
        entry = check_entry(name, check_centered_md(data.trace, us), "");
      }
    } else if (name == "strong") {
      entry =
          check_entry(name, check_strong_decomposition(data.trace, us), "");
    } else if (name == "stability") {
      if (pc.alg == Alg::Dyn) {
        entry = aggregate_subs(name, data.sub_traces.size(), [&](std::size_t j) {
          return check_stability_lemma(data.sub_traces[j], X0Kind::Zero);
        });
      } else {
        entry = check_entry(
            name, check_stability_lemma(data.trace, X0Kind::AlphaEMinusOne),
            "");
      }
    } else if (name == "bound") {
      CheckReport r;
      r.lhs = ledger.total;
      r.rhs = data.bounds.back() + 1e-9 * T;
      r.pass = r.lhs <= r.rhs;
      r.what = "measured regret vs closed-form bound (+1e-9 per round)";
      entry = check_entry(name, r, "");
    } else if (name == "delta_sum") {
      KahanSum sum;
      for (double d : data.deltas) sum.add(d);
      CheckReport r;
      r.lhs = sum.value();
      r.rhs = 4.0 * pc.eps * pc.G + 1e-9 * T;
      r.pass = r.lhs <= r.rhs;
      r.what = "sum of stability terms vs 4 eps G (+1e-9 per round)";
      entry = check_entry(name, r, "");
    } else if (name == "integral") {
      const double G_eff = pc.alg == Alg::Sf ? data.sf_G_running : pc.G;
      CheckReport r;
      if (G_eff == 0.0) {
        r.pass = true;
        r.what = "all gradients are zero; both adaptive sums are vacuous";
      } else {
        const IntegralLemmasReport ir = check_integral_lemmas(gs, G_eff);
        r.pass = ir.pass;
        r.lhs = ir.log_sum;
        r.rhs = ir.log_bound;
        r.what = "log-form sum vs 2; sqrt-form " + fmt_g17(ir.sqrt_sum) +
                 " vs " + fmt_g17(ir.sqrt_bound);
      }
      entry = check_entry(name, r, "");
    } else if (name == "alpha_sum") {
      std::vector<double> alphas, gnorms, Vs;
      alphas.reserve(data.sf_records.size());
      gnorms.reserve(data.sf_records.size());
      Vs.reserve(data.sf_records.size());
      for (const SfRoundRecord& rec : data.sf_records) {
        alphas.push_back(rec.alpha);
        gnorms.push_back(rec.gtilde_norm);
        Vs.push_back(rec.V);
      }
      entry = check_entry(
          name,
          check_alpha_sum_lemma(alphas, gnorms, Vs, data.sf_records.back().h,
                                pc.eps),
          "");
    } else if (name == "onedim_identity") {
      entry = check_entry(name,
                          check_onedim_identity(data.od_betas, data.od_xs,
                                                data.od_ghats, gs, us),
                          "");
    } else {  // lazy_decomposition
      entry = check_entry(
          name, check_lazy_decomposition(data.plays, gs, us, data.schedule),
          "");
    }
    all_pass = all_pass && entry["pass"].get<bool>();
    checks.push_back(std::move(entry));
  }
  return checks;
}

std::string build_trace_csv(const std::vector<GradientRound>& gs,
                            const RunData& data, const RegretLedger& ledger) {
  std::string csv =
      "t,g_norm,w_norm,play_norm,inst_regret,cum_regret,delta_t,bound_rhs\n";
  char head[32];
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::snprintf(head, sizeof head, "%lld",
                  static_cast<long long>(gs[i].t));
    csv += head;
    csv += ',';
    append_g17(csv, gs[i].norm);
    csv += ',';
    append_g17(csv, data.w_norms[i]);
    csv += ',';
    append_g17(csv, data.plays[i].norm());
    csv += ',';
    append_g17(csv, ledger.instantaneous[i]);
    csv += ',';
    append_g17(csv, ledger.cumulative[i]);
    csv += ',';
    if (!data.deltas.empty()) append_g17(csv, data.deltas[i]);
    csv += ',';
    if (!data.bounds.empty()) append_g17(csv, data.bounds[i]);
    csv += '\n';
  }
  return csv;
}

}  // namespace

ExperimentResult run_experiment(const nlohmann::ordered_json& config) {
  const ParsedConfig pc = parse_config(config);
  const Instance inst = build_instance(pc);
  const ComparatorSequence us = build_comparators(pc, inst);
  RunData data = run_algorithm(pc, inst.gs, us);
  const RegretLedger ledger = compute_regret(data.plays, inst.gs, us);

  ExperimentResult out;
  out.trace_csv = build_trace_csv(inst.gs, data, ledger);

  Json report;
  report["algorithm"] = pc.alg_name;
  report["T"] = pc.adv.T;
  report["dim"] = static_cast<std::int64_t>(pc.dim);
  report["adversary"] = pc.adv_kind_name;
  report["comparators"] = pc.cmp_kind;

  Json summary;
  summary["total_regret"] = ledger.total;
  summary["regret_over_T"] = ledger.total / static_cast<double>(pc.adv.T);
  double max_play = 0.0;
  for (const Vector& w : data.plays) max_play = std::max(max_play, w.norm());
  summary["max_play_norm"] = max_play;
  KahanSum gsq;
  for (const GradientRound& g : inst.gs) gsq.add(g.norm * g.norm);
  summary["sum_grad_norm_sq"] = gsq.value();
  summary["comparator_max_norm"] = us.max_norm;
  summary["comparator_path_length"] = us.path_length;
  if (!data.bounds.empty()) {
    summary["final_bound_rhs"] = data.bounds.back();
    if (data.bounds.back() > 0.0) {
      summary["bound_ratio"] = ledger.total / data.bounds.back();
    }
  }
  report["summary"] = std::move(summary);

  bool all_pass = true;
  report["checks"] = run_checks(pc, data, inst.gs, us, ledger, all_pass);
  report["all_pass"] = all_pass;
  report["config"] = config;

  out.report = std::move(report);
  out.all_pass = all_pass;
  out.plays = std::move(data.plays);
  return out;
}

SweepResult run_sweep(
    const std::vector<std::pair<std::string, nlohmann::ordered_json>>& configs) {
  if (configs.empty()) {
    throw std::invalid_argument("run_sweep: config list must be nonempty");
  }
  SweepResult out;
  Json runs = Json::array();
  bool all_pass = true;
  std::int64_t num_ok = 0;
  std::int64_t num_check_failures = 0;
  std::vector<double> totals;
  for (const auto& [name, cfg] : configs) {
    Json entry;
    entry["name"] = name;
    try {
      ExperimentResult res = run_experiment(cfg);
      entry["status"] = "ok";
      entry["all_pass"] = res.all_pass;
      entry["summary"] = res.report["summary"];
      if (!res.all_pass) {
        all_pass = false;
        ++num_check_failures;
      }
      ++num_ok;
      totals.push_back(res.report["summary"]["total_regret"].get<double>());
      out.runs.emplace_back(std::move(res));
    } catch (const std::exception& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
      all_pass = false;
      out.runs.emplace_back(std::nullopt);
    }
    runs.push_back(std::move(entry));
  }

  Json agg;
  agg["num_runs"] = static_cast<std::int64_t>(configs.size());
  agg["num_ok"] = num_ok;
  agg["num_check_failures"] = num_check_failures;
  agg["all_pass"] = all_pass;
  if (!totals.empty()) {
    const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
    agg["total_regret_min"] = *lo;
    agg["total_regret_max"] = *hi;
    agg["total_regret_spread"] = *hi - *lo;
  }
  // Pairwise play comparison, defined when at least two runs succeeded and
  // all successful runs share horizon and dimension.
  std::vector<std::size_t> ok_idx;
  for (std::size_t i = 0; i < out.runs.size(); ++i) {
    if (out.runs[i].has_value()) ok_idx.push_back(i);
  }
  if (ok_idx.size() >= 2) {
    bool comparable = true;
    const auto& first = out.runs[ok_idx[0]]->plays;
    for (std::size_t i : ok_idx) {
      const auto& p = out.runs[i]->plays;
      if (p.size() != first.size() ||
          (!p.empty() && p[0].size() != first[0].size())) {
        comparable = false;
        break;
      }
    }
    if (comparable && !first.empty()) {
      double max_abs = 0.0;
      double max_rel = 0.0;
      for (std::size_t a = 0; a < ok_idx.size(); ++a) {
        for (std::size_t b = a + 1; b < ok_idx.size(); ++b) {
          const auto& pa = out.runs[ok_idx[a]]->plays;
          const auto& pb = out.runs[ok_idx[b]]->plays;
          for (std::size_t t = 0; t < pa.size(); ++t) {
            for (Index c = 0; c < pa[t].size(); ++c) {
              const double diff = std::abs(pa[t](c) - pb[t](c));
              const double denom =
                  std::max(std::abs(pa[t](c)), std::abs(pb[t](c)));
              max_abs = std::max(max_abs, diff);
              if (denom > 0.0) max_rel = std::max(max_rel, diff / denom);
            }
          }
        }
      }
      Json cmp;
      cmp["max_abs_diff"] = max_abs;
      cmp["max_rel_diff"] = max_rel;
      agg["play_comparison"] = std::move(cmp);
    }
  }

  Json report;
  report["runs"] = std::move(runs);
  report["aggregate"] = std::move(agg);
  out.report = std::move(report);
  out.all_pass = all_pass;
  return out;
}

namespace {

constexpr const char* kTraceHeader =
    "t,g_norm,w_norm,play_norm,inst_regret,cum_regret,delta_t,bound_rhs";

struct TraceRow {
  std::int64_t t = 0;
  std::optional<double> fields[7];  // columns after t, in header order
};

std::optional<double> parse_field(std::string_view f, std::size_t row,
                                  std::size_t col) {
  if (f.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
    throw std::runtime_error("trace row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ": not a number: \"" +
                             std::string(f) + "\"");
  }
  return v;
}

std::vector<TraceRow> parse_trace(const std::string& csv) {
  std::vector<TraceRow> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string::npos) end = csv.size();
    std::string_view line(csv.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kTraceHeader) {
        throw std::runtime_error(
            "trace header mismatch: expected \"" + std::string(kTraceHeader) +
            "\"");
      }
      continue;
    }
    if (line.empty()) continue;  // trailing newline
    TraceRow row;
    std::size_t field = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        std::string_view f = line.substr(start, i - start);
        if (field == 0) {
          std::int64_t t = 0;
          const auto res = std::from_chars(f.data(), f.data() + f.size(), t);
          if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
            throw std::runtime_error("trace row " + std::to_string(line_no - 1) +
                                     ": bad round index \"" + std::string(f) +
                                     "\"");
          }
          row.t = t;
        } else if (field <= 7) {
          row.fields[field - 1] = parse_field(f, line_no - 1, field);
        }
        ++field;
        start = i + 1;
      }
    }
    if (field != 8) {
      throw std::runtime_error("trace row " + std::to_string(line_no - 1) +
                               ": expected 8 columns, got " +
                               std::to_string(field));
    }
    if (row.t != static_cast<std::int64_t>(rows.size()) + 1) {
      throw std::runtime_error("trace row " + std::to_string(line_no - 1) +
                               ": round index out of order");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw std::runtime_error("trace has no data rows");
  return rows;
}

}  // namespace

nlohmann::ordered_json verify_trace_csv(const std::string& csv_content,
                                        const std::string& check,
                                        std::optional<double> limit) {
  // Column offsets within TraceRow::fields.
  constexpr std::size_t kInst = 3, kCum = 4, kDelta = 5, kBound = 6;
  const std::vector<TraceRow> rows = parse_trace(csv_content);
  const double T = static_cast<double>(rows.size());

  Json out;
  out["check"] = check;
  bool pass = true;
  double lhs = 0.0;
  double rhs = 0.0;
  std::int64_t witness = 0;
  std::string detail;

  if (check == "ledger") {
    KahanSum acc;
    for (const TraceRow& row : rows) {
      if (!row.fields[kInst] || !row.fields[kCum]) {
        pass = false;
        witness = row.t;
        detail = "row is missing inst_regret or cum_regret";
        break;
      }
      acc.add(*row.fields[kInst]);
      const double tol = 1e-9 * (1.0 + std::abs(acc.value()));
      if (std::abs(*row.fields[kCum] - acc.value()) > tol) {
        pass = false;
        lhs = *row.fields[kCum];
        rhs = acc.value();
        witness = row.t;
        detail = "cum_regret deviates from the running sum of inst_regret";
        break;
      }
    }
    if (pass) {
      lhs = rows.back().fields[kCum].value_or(0.0);
      rhs = acc.value();
      detail = "cum_regret matches the compensated running sum";
    }
  } else if (check == "bound") {
    std::int64_t present = 0;
    for (const TraceRow& row : rows) {
      if (!row.fields[kBound]) continue;
      ++present;
      const double cum = row.fields[kCum].value_or(0.0);
      const double b = *row.fields[kBound] + 1e-9 * static_cast<double>(row.t);
      if (cum > b) {
        pass = false;
        lhs = cum;
        rhs = b;
        witness = row.t;
        detail = "cum_regret exceeds bound_rhs (+1e-9 per round)";
        break;
      }
      lhs = cum;
      rhs = b;
    }
    if (present == 0) {
      pass = false;
      detail = "trace has no bound_rhs values";
    } else if (pass) {
      detail = "cum_regret <= bound_rhs on all " + std::to_string(present) +
               " rows with a bound";
    }
  } else if (check == "delta_sum") {
    if (!limit.has_value()) {
      throw std::invalid_argument(
          "delta_sum needs an explicit limit (the bound on the sum)");
    }
    KahanSum sum;
    std::int64_t present = 0;
    for (const TraceRow& row : rows) {
      if (!row.fields[kDelta]) continue;
      ++present;
      sum.add(*row.fields[kDelta]);
    }
    if (present == 0) {
      pass = false;
      detail = "trace has no delta_t values";
    } else {
      lhs = sum.value();
      rhs = *limit + 1e-9 * T;
      pass = lhs <= rhs;
      detail = "sum of delta_t over " + std::to_string(present) +
               " rows vs limit (+1e-9 per round)";
    }
  } else {
    throw std::invalid_argument("unknown trace check \"" + check +
                                "\" (expected ledger, bound, or delta_sum)");
  }

  out["pass"] = pass;
  out["lhs"] = lhs;
  out["rhs"] = rhs;
  out["witness_t"] = witness;
  out["detail"] = detail;
  return out;
}

std::string lowerbound_csv(const std::string& kind, std::int64_t T, double C,
                           double eps) {
  std::vector<double> gs;
  std::vector<double> us;
  if (kind == "constrained") {
    ConstrainedLb lb = constrained_lb_sequence(T);
    gs = std::move(lb.gs);
    us = std::move(lb.us);
  } else if (kind == "unconstrained") {
    const double c = C == 0.0 ? default_lb_constant() : C;
    UnconstrainedLbSequence seq = unconstrained_lb_sequence(T, c);
    us = unconstrained_lb_comparators(T, c, eps, seq.gs);
    gs = std::move(seq.gs);
  } else {
    throw std::invalid_argument("unknown lower-bound kind \"" + kind +
                                "\" (expected constrained or unconstrained)");
  }
  std::string csv = "t,g,u\n";
  char head[32];
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::snprintf(head, sizeof head, "%lld", static_cast<long long>(i + 1));
    csv += head;
    csv += ',';
    append_g17(csv, gs[i]);
    csv += ',';
    append_g17(csv, us[i]);
    csv += '\n';
  }
  return csv;
}

}  // namespace olo
