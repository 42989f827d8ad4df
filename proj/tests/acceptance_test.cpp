// Acceptance gate: eleven numbered end-to-end criteria over the learners,
// bounds, reductions, and checkers, each printed as one [PASS]/[FAIL] line
// with its measured wall-clock time. Tolerances are pinned as literals next
// to each check; criteria with a runtime budget fail when they exceed it.
// Exit status is 0 iff every criterion passes.
#include "olo/adversaries.hpp"
#include "olo/harness.hpp"
#include "olo/learner.hpp"
#include "olo/reductions.hpp"
#include "olo/rng.hpp"
#include "olo/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace olo;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, ...) {
  va_list args;
  va_start(args, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return std::string(buf);
}

Vector vec1(double x) { return Vector::Constant(1, x); }

/// Random direction scaled to a uniform norm in (0, bound].
Vector random_grad(CounterRng& rng, Index d, double bound) {
  Vector g(d);
  for (Index i = 0; i < d; ++i) g[i] = rng.next_gaussian();
  const double n = g.norm();
  if (n == 0.0) return g;
  return g * (bound * rng.next_unit_open() / n);
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// --- criterion 1 -------------------------------------------------------------
// Every closed-form update (pf_static, dynamic sub-learner, scale-free inner
// step, implicit x-step, linear-hint optimistic step) matches the independent
// ternary-search oracle to radial relative error <= 1e-8 on 1000 seeded
// random rounds per family.
Outcome criterion1() {
  constexpr double kTol = 1e-8;
  bool ok = true;
  double worst = 0.0;
  const char* worst_family = "none";
  std::int64_t counts[5] = {0, 0, 0, 0, 0};
  const char* families[5] = {"pf_static", "dynamic sub", "scale-free inner",
                             "implicit x-step", "optimistic step"};
  auto note = [&](int family, double rcf, double rbf) {
    ++counts[family];
    const double rel = std::abs(rcf - rbf) / (1.0 + std::max(rcf, rbf));
    if (rel > worst) {
      worst = rel;
      worst_family = families[family];
    }
    if (!(rel <= kTol)) ok = false;
  };

  // pf_static: 5 seeds x 200 rounds, d = 2, ||g|| <= 1.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CounterRng rng(1000 + seed);
    auto s = pf_init(1.0, 1.0, 3.0, 2);
    for (std::int64_t t = 1; t <= 200; ++t) {
      const Vector g = random_grad(rng, 2, 1.0);
      const GradientRound round{t, g, g.norm()};
      const auto psi_before = pf_params(s);
      const Vector w_before = s.w;
      pf_step(s, round);
      const Vector bf =
          brute_force_update(psi_before, pf_params(s), 0.0, w_before, g);
      note(0, s.w.norm(), bf.norm());
    }
  }

  // dynamic sub-learners: the 5-entry step grid at horizon 2^10,
  // 2 seeds x 100 rounds x 5 grid entries.
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    CounterRng rng(2000 + seed);
    auto s = dyn_init(1.0, 1.0, std::int64_t{1} << 10, 2);
    const std::size_t n = s.etas.size();
    for (std::int64_t t = 1; t <= 100; ++t) {
      const Vector g = random_grad(rng, 2, 1.0);
      const GradientRound round{t, g, g.norm()};
      std::vector<RadialRegularizerParams> before;
      before.reserve(n);
      for (std::size_t i = 0; i < n; ++i) before.push_back(dyn_sub_params(s, i));
      const std::vector<Vector> w_before = s.sub_w;
      dyn_step(s, round);
      for (std::size_t i = 0; i < n; ++i) {
        const Vector bf = brute_force_update(
            before[i], dyn_sub_params(s, i),
            2.0 * s.etas[i] * round.norm * round.norm, w_before[i], g);
        note(1, s.sub_w[i].norm(), bf.norm());
      }
    }
  }

  // scale-free inner step: 5 seeds x 200 rounds, d = 2, free norms in (0, 5].
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CounterRng rng(3000 + seed);
    auto s = sf_init(1.0, 3.0, 2);
    for (std::int64_t t = 1; t <= 200; ++t) {
      const Vector g = random_grad(rng, 2, 5.0);
      const GradientRound round{t, g, g.norm()};
      const Vector w_before = s.w;
      const double h_before = s.h;
      const double D_before = std::sqrt(s.D_sq_accum);
      const double alpha_before = s.alpha_tilde;
      const double V_before = s.V_tilde;
      const Vector g_tilde =
          sf_surrogate_grad(w_before, sf_clip(g, h_before), D_before);
      sf_step(s, round);
      std::optional<RadialRegularizerParams> psi;
      if (h_before > 0.0) {
        psi = RadialRegularizerParams::capped_min(s.k, alpha_before, V_before,
                                                  1.0 / h_before);
      }
      const auto psi_next = RadialRegularizerParams::capped_min(
          s.k, s.alpha_tilde, s.V_tilde, 1.0 / s.h);
      const Vector bf =
          brute_force_update(psi, psi_next, 0.0, w_before, g_tilde);
      note(2, s.w.norm(), bf.norm());
    }
  }

  // implicit anchor step and linear-hint optimistic step: 5 seeds x 200
  // rounds, d = 2; the random hints keep the hint-error statistic moving.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CounterRng rng(4000 + seed);
    auto s = imp_init(1.0, 1.0, 3.0, 2);
    for (std::int64_t t = 1; t <= 200; ++t) {
      const Vector g_hat = random_grad(rng, 2, 1.0);
      imp_optimistic_step(s, HintFunction::linear(g_hat));
      {
        const auto psi = imp_params(s);
        const Vector bf = brute_force_update(psi, psi, 0.0, s.x, g_hat);
        note(4, s.w.norm(), bf.norm());
      }
      const Vector g = random_grad(rng, 2, 1.0);
      const auto psi_before = imp_params(s);
      const Vector x_before = s.x;
      imp_x_step(s, GradientRound{t, g, g.norm()});
      const Vector bf = brute_force_update(psi_before, imp_params(s), 0.0,
                                           x_before, g);
      note(3, s.x.norm(), bf.norm());
    }
  }

  for (std::int64_t c : counts) {
    if (c != 1000) {
      ok = false;
      return {false, fmt("family round count %lld != 1000",
                         static_cast<long long>(c))};
    }
  }
  return {ok, fmt("5 families x 1000 rounds, max radial rel err %.2e (%s), "
                  "tol 1e-8",
                  worst, worst_family)};
}

// --- criteria 2 and 3 --------------------------------------------------------
// Criterion 2: on 100 seeded stochastic gradient sequences (50 Rademacher,
// 50 clipped Gaussian; G = 1, eps = 1, k = 3, T = 1e4, d = 1), the measured
// static regret against every probe comparator u in {0, +-0.1, +-1, +-10,
// +-100} is dominated by the closed-form bound plus 1e-9 * T.
// Criterion 3: on every one of those runs the summed per-round stability
// terms stay below 4 * eps * G + 1e-9 * T.
struct Bundle23 {
  Outcome c2;
  Outcome c3;
};

Bundle23 run_criteria_2_3() {
  const std::int64_t T = 10000;
  const double G = 1.0, eps = 1.0, k = 3.0;
  const double probes[] = {0.0, 0.1, -0.1, 1.0, -1.0, 10.0, -10.0,
                           100.0, -100.0};

  std::vector<ComparatorSequence> probe_seqs;
  for (double u : probes) probe_seqs.push_back(constant_comparators(T, vec1(u)));

  bool ok2 = true, ok3 = true;
  double min_margin = kInf;   // bound rhs minus measured regret
  double worst_probe = 0.0;
  double max_delta_sum = -kInf;
  const double delta_rhs = 4.0 * eps * G + 1e-9 * static_cast<double>(T);

  for (int run = 0; run < 100; ++run) {
    AdversaryConfig cfg;
    cfg.kind = run < 50 ? AdversaryKind::RADEMACHER
                        : AdversaryKind::GAUSSIAN_CLIPPED;
    cfg.T = T;
    cfg.seed = 9000 + static_cast<std::uint64_t>(run);
    cfg.dim = 1;
    cfg.G = G;
    const auto gs = stochastic_gradients(cfg);
    const auto res = run_pf(G, eps, k, 1, gs, /*with_trace=*/true);

    for (std::size_t p = 0; p < probe_seqs.size(); ++p) {
      const auto ledger = compute_regret(res.plays, gs, probe_seqs[p]);
      const double rhs = pf_bound_rhs(res.final_state, vec1(probes[p])) +
                         1e-9 * static_cast<double>(T);
      if (!(ledger.total <= rhs)) ok2 = false;
      if (rhs - ledger.total < min_margin) {
        min_margin = rhs - ledger.total;
        worst_probe = probes[p];
      }
    }

    const auto diags = compute_diagnostics(res.trace, nullptr);
    KahanSum delta_sum;
    for (const auto& d : diags) delta_sum.add(d.delta);
    if (!(delta_sum.value() <= delta_rhs)) ok3 = false;
    max_delta_sum = std::max(max_delta_sum, delta_sum.value());
  }

  Bundle23 out;
  out.c2 = {ok2, fmt("100 runs x 9 probes at T=1e4, min bound margin %.3g "
                     "(u=%g)",
                     min_margin, worst_probe)};
  out.c3 = {ok3, fmt("max stability sum %.6f <= %.6f on all 100 runs "
                     "(shares criterion 2's runs)",
                     max_delta_sum, delta_rhs)};
  return out;
}

// --- criterion 4 -------------------------------------------------------------
// Dynamic-regret bound domination: 50 seeded runs at T = 2^10 (d = 2,
// alternating Rademacher / clipped Gaussian) against piecewise-constant
// comparators with 1..16 switches; measured dynamic regret is dominated by
// the path-length-adaptive bound plus 1e-9 * T.
Outcome criterion4() {
  const std::int64_t T = std::int64_t{1} << 10;
  bool ok = true;
  double min_margin = kInf;
  int worst_run = -1;

  for (int run = 0; run < 50; ++run) {
    AdversaryConfig cfg;
    cfg.kind = run % 2 ? AdversaryKind::GAUSSIAN_CLIPPED
                       : AdversaryKind::RADEMACHER;
    cfg.T = T;
    cfg.seed = 500 + static_cast<std::uint64_t>(run);
    cfg.dim = 2;
    cfg.G = 1.0;
    const auto gs = stochastic_gradients(cfg);

    CounterRng rng(12000 + static_cast<std::uint64_t>(run));
    const int n_switch = 1 + run % 16;  // covers every count in 1..16
    std::set<std::int64_t> points;
    while (static_cast<int>(points.size()) < n_switch) {
      points.insert(2 + static_cast<std::int64_t>(
                            rng.next_u64() % static_cast<std::uint64_t>(T - 1)));
    }
    std::vector<Vector> values;
    for (int i = 0; i <= n_switch; ++i) values.push_back(random_grad(rng, 2, 3.0));
    const auto us = piecewise_comparators(
        T, std::vector<std::int64_t>(points.begin(), points.end()), values);

    const auto res = run_dynamic(1.0, 1.0, T, 2, gs, /*with_trace=*/false);
    const auto ledger = compute_regret(res.plays, gs, us);
    const double rhs =
        dyn_bound_rhs(res.final_state, us, gs) + 1e-9 * static_cast<double>(T);
    if (!(ledger.total <= rhs)) ok = false;
    if (rhs - ledger.total < min_margin) {
      min_margin = rhs - ledger.total;
      worst_run = run;
    }
  }
  return {ok, fmt("50 runs at T=2^10, 1..16 switches, min bound margin %.3g "
                  "(run %d)",
                  min_margin, worst_run)};
}

// --- criterion 5 -------------------------------------------------------------
// Separation on the constrained lower-bound instance: the ball-projected
// static learner pays regret >= 0.45 * T at T = 2^12 against the instance's
// drifting comparators (path length exactly 2), while the dynamic learner's
// regret / T strictly decreases over T in {2^6, 2^8, 2^10, 2^12} and ends
// below 0.1.
Outcome criterion5() {
  const std::int64_t TA = std::int64_t{1} << 12;
  const auto lb = constrained_lb_sequence(TA);
  std::vector<Vector> gvecs, upts;
  for (double g : lb.gs) gvecs.push_back(vec1(g));
  for (double u : lb.us) upts.push_back(vec1(u));
  const auto rounds = make_rounds(gvecs);
  const auto us = make_comparators(upts);

  BallProjectedLearner proj(std::make_unique<PfStaticLearner>(1.0, 1.0, 3.0, 1),
                            1.0);
  std::vector<Vector> plays;
  plays.reserve(static_cast<std::size_t>(TA));
  for (const auto& r : rounds) {
    plays.push_back(proj.play());
    proj.observe(r);
  }
  const double proj_regret = compute_regret(plays, rounds, us).total;
  const bool okA = us.path_length == 2.0 &&
                   proj_regret >= 0.45 * static_cast<double>(TA);

  std::vector<double> ratios;
  for (int p : {6, 8, 10, 12}) {
    const std::int64_t T = std::int64_t{1} << p;
    const auto lbT = constrained_lb_sequence(T);
    std::vector<Vector> gT, uT;
    for (double g : lbT.gs) gT.push_back(vec1(g));
    for (double u : lbT.us) uT.push_back(vec1(u));
    const auto roundsT = make_rounds(gT);
    const auto res = run_dynamic(1.0, 1.0, T, 1, roundsT, /*with_trace=*/false);
    const double total =
        compute_regret(res.plays, roundsT, make_comparators(uT)).total;
    ratios.push_back(total / static_cast<double>(T));
  }
  const bool okB = ratios[1] < ratios[0] && ratios[2] < ratios[1] &&
                   ratios[3] < ratios[2] && ratios.back() < 0.1;

  return {okA && okB,
          fmt("projected regret/T %.4f >= 0.45; dynamic regret/T {%.3g, %.3g, "
              "%.3g, %.3g} decreasing",
              proj_regret / static_cast<double>(TA), ratios[0], ratios[1],
              ratios[2], ratios[3])};
}

// --- criteria 6 and 7 --------------------------------------------------------
// Criterion 6: for 20 seeded gradient sequences (T = 200, d = 3) and every
// scaling c = 2^j, j in -10..10, rescaling all gradients by c leaves the
// scale-free learner's plays equal per-coordinate to relative 1e-12.
// Criterion 7: on every one of those runs the alpha-weighted surrogate sum
// stays below 2 * eps * h_T + 1e-9 * T.
struct Bundle67 {
  Outcome c6;
  Outcome c7;
};

Bundle67 run_criteria_6_7() {
  const std::int64_t T = 200;
  const Index d = 3;
  const double eps = 1.0;

  bool ok6 = true, ok7 = true;
  double worst_rel = 0.0;
  double min_margin7 = kInf;
  int runs7 = 0;

  auto check_alpha_sum = [&](const SfRunResult& res) {
    ++runs7;
    std::vector<double> alphas, gns, vts;
    for (const auto& r : res.records) {
      alphas.push_back(r.alpha);
      gns.push_back(r.gtilde_norm);
      vts.push_back(r.V);
    }
    const auto rep = check_alpha_sum_lemma(alphas, gns, vts,
                                           res.records.back().h, eps, 1e-9);
    if (!rep.pass) ok7 = false;
    min_margin7 = std::min(min_margin7, rep.rhs - rep.lhs);
  };

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CounterRng rng(42000 + seed);
    std::vector<Vector> base;
    for (std::int64_t t = 0; t < T; ++t) base.push_back(random_grad(rng, d, 2.0));
    const auto res1 = run_scale_free(eps, 3.0, d, make_rounds(base));
    check_alpha_sum(res1);

    for (int j = -10; j <= 10; ++j) {
      if (j == 0) continue;  // the unscaled run is the baseline itself
      const double c = std::ldexp(1.0, j);
      std::vector<Vector> scaled;
      for (const auto& g : base) scaled.push_back(c * g);
      const auto resc = run_scale_free(eps, 3.0, d, make_rounds(scaled));
      check_alpha_sum(resc);

      for (std::size_t t = 0; t < resc.plays.size(); ++t) {
        for (Index i = 0; i < d; ++i) {
          const double a = res1.plays[t][i];
          const double b = resc.plays[t][i];
          const double diff = std::abs(a - b);
          if (diff == 0.0) continue;
          const double rel = diff / std::max(std::abs(a), std::abs(b));
          worst_rel = std::max(worst_rel, rel);
          if (!(rel <= 1e-12)) ok6 = false;
        }
      }
    }
  }

  Bundle67 out;
  out.c6 = {ok6, fmt("20 seeds x 21 scalings 2^-10..2^10, max per-coordinate "
                     "rel diff %.2g, tol 1e-12",
                     worst_rel)};
  out.c7 = {ok7, fmt("alpha-weighted sum <= 2*eps*h_T on all %d runs, min "
                     "margin %.3g (shares criterion 6's runs)",
                     runs7, min_margin7)};
  return out;
}

// --- criterion 8 -------------------------------------------------------------
// Horizon-free regret under exact hints: with the hint "replay last round's
// loss", a constant linear loss makes every hint from round 2 exact. On the
// zero constant loss (where the hint is exact from round 1 and the measured
// regret itself is the O(1) constant) the regrets at T in {1e2, 1e3, 1e4,
// 1e5} differ pairwise by < 1e-6 for u in {+-1, +-10}. On a nonzero constant
// loss the measured regret diverges to -infinity with T (the learner keeps
// profiting), so "O(1)" is one-sided there: the supplement certifies the
// T-independent upper bound instead -- the curvature statistic freezes after
// round 1 (exactly equal across horizons) and the measured regret stays
// below the closed-form bound at both probe horizons.
Outcome criterion8() {
  const std::vector<std::int64_t> Ts = {100, 1000, 10000, 100000};
  const double probes[] = {1.0, -1.0, 10.0, -10.0};
  bool ok = true;

  std::vector<std::vector<double>> regrets;  // [horizon][probe]
  for (const std::int64_t T : Ts) {
    const std::vector<Vector> gs(static_cast<std::size_t>(T), vec1(0.0));
    const auto rounds = make_rounds(gs);
    const auto hint_for = [&rounds](std::int64_t t) {
      return t >= 2 ? HintFunction::linear(rounds[static_cast<std::size_t>(t - 2)].g)
                    : HintFunction::none(1);
    };
    const auto res =
        run_implicit(1.0, 1.0, 3.0, 1, rounds, hint_for, /*with_trace=*/false);
    std::vector<double> r;
    for (const double u : probes) {
      r.push_back(
          compute_regret(res.plays, rounds, constant_comparators(T, vec1(u)))
              .total);
    }
    regrets.push_back(std::move(r));
  }
  double max_pair_diff = 0.0;
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t i = 0; i < Ts.size(); ++i) {
      for (std::size_t j = i + 1; j < Ts.size(); ++j) {
        max_pair_diff =
            std::max(max_pair_diff, std::abs(regrets[i][p] - regrets[j][p]));
      }
    }
  }
  if (!(max_pair_diff < 1e-6)) ok = false;

  // Supplement on the nonzero constant loss g = 0.5.
  double v_hat[2] = {0.0, 0.0};
  bool sup_ok = true;
  int idx = 0;
  for (const std::int64_t T : {std::int64_t{200}, std::int64_t{400}}) {
    const std::vector<Vector> gs(static_cast<std::size_t>(T), vec1(0.5));
    const auto rounds = make_rounds(gs);
    const auto hint_for = [&rounds](std::int64_t t) {
      return t >= 2 ? HintFunction::linear(rounds[static_cast<std::size_t>(t - 2)].g)
                    : HintFunction::none(1);
    };
    const auto res =
        run_implicit(1.0, 1.0, 3.0, 1, rounds, hint_for, /*with_trace=*/false);
    v_hat[idx++] = res.final_state.V_hat;
    for (const double u : probes) {
      const double total =
          compute_regret(res.plays, rounds, constant_comparators(T, vec1(u)))
              .total;
      const double rhs = imp_bound_rhs(res.final_state, vec1(u)) +
                         1e-9 * static_cast<double>(T);
      if (!(total <= rhs)) sup_ok = false;
    }
  }
  sup_ok = sup_ok && (v_hat[0] == v_hat[1]);  // frozen statistic, bit-equal
  ok = ok && sup_ok;

  return {ok, fmt("zero loss: max pairwise regret diff %.2g over T=1e2..1e5; "
                  "nonzero loss: V_hat frozen (%.4f == %.4f), regret <= bound",
                  max_pair_diff, v_hat[0], v_hat[1])};
}

// --- criterion 9 -------------------------------------------------------------
// Adaptive integral bounds: on 1000 randomized norm sequences, the
// log-weighted sum stays below 2 and the inverse-sqrt-weighted sum below
// 2 * sqrt(total gradient mass), both with 1e-9 slack.
Outcome criterion9() {
  bool ok = true;
  double min_margin = kInf;
  CounterRng rng(77000);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t len = 5 + i % 120;
    const double G = std::pow(10.0, 2.0 * rng.next_unit() - 1.0);  // 0.1..10
    std::vector<Vector> gs;
    for (std::int64_t t = 0; t < len; ++t) {
      double frac = rng.next_unit();
      if (frac < 0.05) frac = 0.0;  // zero rounds exercise the skip rules
      if (frac > 0.95) frac = 1.0;  // saturated rounds hit the norm cap
      gs.push_back(vec1(G * frac * (rng.next_unit() < 0.5 ? -1.0 : 1.0)));
    }
    const auto rep = check_integral_lemmas(make_rounds(gs), G, 1e-9);
    if (!rep.pass) ok = false;
    min_margin = std::min({min_margin, rep.log_bound - rep.log_sum,
                           rep.sqrt_bound - rep.sqrt_sum});
  }
  return {ok, fmt("1000 sequences (len 5..124, G in [0.1,10]), min slack "
                  "margin %.3g",
                  min_margin)};
}

// --- criterion 10 ------------------------------------------------------------
// Reduction identities: the magnitude-times-direction decomposition is an
// equality to 1e-9 * T on 100 seeded runs (constant, piecewise, and zero
// comparators), and the lazy wrapper with singleton intervals reproduces the
// bare learner's plays bit for bit.
Outcome criterion10() {
  bool ok = true;
  double worst_resid = 0.0;

  for (int run = 0; run < 100; ++run) {
    CounterRng rng(88000 + static_cast<std::uint64_t>(run));
    const std::int64_t T = 150;
    const Index d = 3;
    std::vector<Vector> gs;
    for (std::int64_t t = 0; t < T; ++t) gs.push_back(random_grad(rng, d, 1.0));
    const auto rounds = make_rounds(gs);

    auto learner = onedim_combine(
        std::make_unique<PfStaticLearner>(1.0, 1.0, 3.0, 1),
        std::make_unique<BallProjectedLearner>(
            std::make_unique<PfStaticLearner>(1.0, 1.0, 3.0, d), 1.0));
    for (const auto& r : rounds) {
      (void)learner->play();
      learner->observe(r);
    }

    ComparatorSequence us;
    if (run % 10 == 9) {
      us = constant_comparators(T, Vector::Zero(d));  // degenerate max norm 0
    } else if (run % 2 == 0) {
      us = constant_comparators(T, random_grad(rng, d, 2.0));
    } else {
      us = piecewise_comparators(
          T, {T / 3, (2 * T) / 3},
          {random_grad(rng, d, 2.0), random_grad(rng, d, 2.0),
           random_grad(rng, d, 2.0)});
    }
    const auto rep =
        check_onedim_identity(learner->betas(), learner->directions(),
                              learner->scalar_grads(), rounds, us, 1e-9);
    if (!rep.pass) ok = false;
    worst_resid = std::max(worst_resid, std::abs(rep.lhs - rep.rhs));
  }

  bool exact = true;
  {
    const std::int64_t T = 128;
    CounterRng rng(88888);
    std::vector<Vector> gs;
    for (std::int64_t t = 0; t < T; ++t) gs.push_back(random_grad(rng, 2, 1.0));
    const auto rounds = make_rounds(gs);
    auto wrapped =
        lazy_wrap(std::make_unique<PfStaticLearner>(1.0, 1.0, 3.0, 2),
                  IntervalSchedule::singletons(T));
    PfStaticLearner bare(1.0, 1.0, 3.0, 2);
    for (const auto& r : rounds) {
      const Vector a = wrapped->play();
      const Vector b = bare.play();
      for (Index i = 0; i < 2; ++i) {
        if (a[i] != b[i]) exact = false;
      }
      wrapped->observe(r);
      bare.observe(r);
    }
  }
  ok = ok && exact;

  return {ok, fmt("identity residual <= %.2e over 100 runs; singleton lazy "
                  "plays %s the bare learner's",
                  worst_resid, exact ? "bit-equal to" : "DIFFER from")};
}

// --- criterion 11 ------------------------------------------------------------
// Structural update-map conditions: the static learner's one-dimensional map
// passes all four conditions (sum dependence, sign opposition, oddness,
// monotonicity) on 1000 seeded probes; a dynamic fixed-step sub-learner
// provably violates sum dependence on the constructed prefix pair
// [+1,+1,-1] vs [-1,+1,+1] (equal sums and norms, different iterates), and
// the checker flags it.
Outcome criterion11() {
  const auto probes = make_ftrl_probes(13, 1000, 16);
  const auto rep = check_ftrl_conditions(pf_update_map(1.0, 1.0, 3.0), probes);
  bool ok = rep.all_ok();

  const UpdateMap F = dyn_sub_update_map(4.0, 1.0, 0.25);
  const double a = F({1.0, 1.0, -1.0});
  const double b = F({-1.0, 1.0, 1.0});
  const bool violated = a == 0.0 && b < -1e-4;
  FtrlProbeSet pair;
  pair.sequences = {{1.0, 1.0, -1.0}};
  const auto drep = check_ftrl_conditions(F, pair);
  ok = ok && violated && !drep.sum_dependence.ok;

  return {ok, fmt("static map: 4/4 conditions on 1000 probes; dynamic sub "
                  "map: F(++-)=%g vs F(-++)=%.4g breaks sum dependence",
                  a, b)};
}

}  // namespace

int main() {
  int failures = 0;

  // limit_s <= 0 means the criterion has no runtime budget of its own (it is
  // evaluated inside another criterion's timed runs).
  const auto emit = [&](int id, const char* title, double limit_s,
                        const Outcome& out, double secs) {
    const bool pass = out.pass && (limit_s <= 0.0 || secs < limit_s);
    if (!pass) ++failures;
    std::string timing;
    if (limit_s > 0.0) {
      timing = fmt("%.2f s / %.0f s", secs, limit_s);
    } else {
      timing = "no separate budget";
    }
    std::printf("[%s] criterion %2d: %s | %s | %s\n", pass ? "PASS" : "FAIL",
                id, title, out.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  };

  const auto timed = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto out = fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return std::make_pair(std::move(out), secs);
  };

  {
    auto [out, secs] = timed(criterion1);
    emit(1, "closed-form updates match the ternary-search oracle", 60.0, out,
         secs);
  }
  {
    auto [bundle, secs] = timed(run_criteria_2_3);
    emit(2, "static regret bound dominates on stochastic runs", 30.0,
         bundle.c2, secs);
    emit(3, "stability-term sums stay below 4*eps*G", 0.0, bundle.c3, 0.0);
  }
  {
    auto [out, secs] = timed(criterion4);
    emit(4, "dynamic regret bound dominates with drifting comparators", 60.0,
         out, secs);
  }
  {
    auto [out, secs] = timed(criterion5);
    emit(5, "constrained-baseline vs dynamic-learner separation", 30.0, out,
         secs);
  }
  {
    auto [bundle, secs] = timed(run_criteria_6_7);
    emit(6, "plays are invariant under constant gradient rescaling", 30.0,
         bundle.c6, secs);
    emit(7, "alpha-weighted surrogate sums stay below 2*eps*h_T", 0.0,
         bundle.c7, 0.0);
  }
  {
    auto [out, secs] = timed(criterion8);
    emit(8, "exact hints give horizon-independent regret", 60.0, out, secs);
  }
  {
    auto [out, secs] = timed(criterion9);
    emit(9, "adaptive integral bounds hold on randomized sequences", 10.0, out,
         secs);
  }
  {
    auto [out, secs] = timed(criterion10);
    emit(10, "reduction identities (decomposition equality, singleton lazy)",
         30.0, out, secs);
  }
  {
    auto [out, secs] = timed(criterion11);
    emit(11, "structural update-map conditions separate the learners", 10.0,
         out, secs);
  }

  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
