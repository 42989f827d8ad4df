#include "olo/scale_free.hpp"

#include "olo/harness.hpp"
#include "olo/rng.hpp"
#include "olo/verification.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace olo;

namespace {

Vector vec1(double x) { return Vector::Constant(1, x); }

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

// random gradient with no norm cap: gaussian direction, log-uniform-ish norm
Vector random_free_grad(CounterRng& rng, Index d, double max_norm) {
  Vector g(d);
  for (Index i = 0; i < d; ++i) g[i] = rng.next_gaussian();
  const double n = g.norm();
  if (n == 0.0) return g;
  return g * (max_norm * rng.next_unit_open() / n);
}

}  // namespace

TEST_SUITE_BEGIN("scale_free");

TEST_CASE("projection, clipping, and surrogate gradient helpers") {
  // projection
  CHECK(sf_project(vec1(3.0), 1.0)[0] == 1.0);
  CHECK(sf_project(vec1(0.5), 1.0)[0] == 0.5);  // inside: unchanged
  const Vector p = sf_project(vec2(3.0, 4.0), 2.5);
  CHECK(p[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sf_project(Vector::Zero(2), 0.0).norm() == 0.0);
  CHECK_THROWS_AS(sf_project(vec1(1.0), -0.1), std::invalid_argument);

  // clipping
  CHECK(sf_clip(vec1(5.0), 2.0)[0] == 2.0);
  CHECK(sf_clip(vec1(5.0), 0.0)[0] == 0.0);  // first-round behavior
  CHECK(sf_clip(vec1(1.5), 2.0)[0] == 1.5);  // within hint: unchanged
  CHECK_THROWS_AS(sf_clip(vec1(1.0), -1.0), std::invalid_argument);

  // surrogate gradient
  CHECK(sf_surrogate_grad(vec1(0.5), vec1(1.0), 1.0)[0] == 0.5);  // inactive
  CHECK(sf_surrogate_grad(vec1(2.0), vec1(1.0), 1.0)[0] == 1.0);  // active
  CHECK(sf_surrogate_grad(vec1(2.0), vec1(0.0), 1.0)[0] == 0.0);
  // boundary ||w|| = D: hinge taken inactive
  CHECK(sf_surrogate_grad(vec1(1.0), vec1(1.0), 1.0)[0] == 0.5);
  CHECK(sf_surrogate_grad(Vector::Zero(1), vec1(1.0), 0.0)[0] == 0.5);
  // never exceeds the clipped norm
  const Vector gt = sf_surrogate_grad(vec2(3.0, 4.0), vec2(-1.0, 0.5), 2.0);
  CHECK(gt.norm() <= vec2(-1.0, 0.5).norm() + 1e-15);
}

TEST_CASE("initial state matches the closed-form constants") {
  auto s = sf_init(1.0, 3.0, 2);
  CHECK(s.t == 1);
  CHECK(s.h == 0.0);
  CHECK(s.G_running == 0.0);
  CHECK(s.b_tilde == 4.0);
  CHECK(s.B_tilde == 16.0);
  // alpha_1 = 1 / (4 ln^2 16)
  CHECK(s.alpha_tilde == doctest::Approx(0.03252139032821262).epsilon(1e-15));
  CHECK_THROWS_AS(sf_init(0.0, 3.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sf_init(1.0, 2.0, 1), std::invalid_argument);
  CHECK_NOTHROW(sf_init(1.0, 2.0, 1, /*allow_unstable_k=*/true));
  CHECK_THROWS_AS(sf_init(1.0, 3.0, 0), std::invalid_argument);
}

TEST_CASE("round one is a pure observation round") {
  auto s = sf_init(1.0, 3.0, 2);
  auto gs = make_rounds({vec2(17.0, -3.0)});
  const Vector play = sf_step(s, gs[0]);
  CHECK(play.norm() == 0.0);
  CHECK(s.w.norm() == 0.0);            // theta_tilde stays 0
  CHECK(s.theta_tilde.norm() == 0.0);  // gbar forced to 0 by h_1 = 0
  CHECK(s.b_tilde == 4.0);             // 0/0 treated as 0
  CHECK(s.B_tilde == 32.0);
  CHECK(s.G_running == gs[0].norm);
  CHECK(s.h == gs[0].norm);
  CHECK(s.h_prev == 0.0);
  CHECK(s.D_sq_accum == 1.0);  // ||g_1|| / G_1
  CHECK(s.V_tilde == 4.0 * gs[0].norm * gs[0].norm);
}

TEST_CASE("all-zero gradients produce all-zero iterates without NaN") {
  auto s = sf_init(1.0, 3.0, 1);
  for (int t = 0; t < 5; ++t) {
    const Vector play = sf_step(s, GradientRound{t + 1, vec1(0.0), 0.0});
    CHECK(play.norm() == 0.0);
    CHECK(s.w.norm() == 0.0);
    CHECK(std::isfinite(s.alpha_tilde));
  }
  CHECK(s.G_running == 0.0);
  CHECK(s.D_sq_accum == 0.0);
  // a real gradient after the zero prefix still counts as first observation
  sf_step(s, GradientRound{6, vec1(2.0), 2.0});
  CHECK(s.w.norm() == 0.0);
  CHECK(s.G_running == 2.0);
}

TEST_CASE("hand-computed three-round trace (g = [1, -2, 3])") {
  auto s = sf_init(1.0, 3.0, 1);
  auto gs = make_rounds({vec1(1.0), vec1(-2.0), vec1(3.0)});

  CHECK(sf_step(s, gs[0])[0] == 0.0);
  CHECK(s.w[0] == 0.0);
  CHECK(s.B_tilde == 32.0);
  CHECK(s.V_tilde == 4.0);
  CHECK(s.alpha_tilde == doctest::Approx(0.014717501206203994).epsilon(1e-15));

  // round 2: gbar = -1 (clipped to h_2 = 1), gtilde = -1/2, theta = 1/2
  CHECK(sf_step(s, gs[1])[0] == 0.0);  // D_2 = 1 but w_2 = 0
  CHECK(s.theta_tilde[0] == 0.5);
  CHECK(s.b_tilde == 4.25);
  CHECK(s.B_tilde == 48.0);  // pre-update b: 32 + 4*4
  CHECK(s.V_tilde == 16.25);
  CHECK(s.alpha_tilde == doctest::Approx(0.009631367099153637).epsilon(1e-15));
  CHECK(s.w[0] == doctest::Approx(4.116848451610269e-06).epsilon(1e-14));
  CHECK(s.D_sq_accum == 2.0);

  // round 3: w_3 is well inside the ball of radius sqrt(2), so the play is
  // the unprojected iterate; gbar = 2 (clipped to h_3 = 2), gtilde = 1
  CHECK(sf_step(s, gs[2])[0] ==
        doctest::Approx(4.116848451610269e-06).epsilon(1e-14));
  CHECK(s.theta_tilde[0] == -0.5);
  CHECK(s.b_tilde == 4.5);
  CHECK(s.B_tilde == 65.0);  // 48 + 4*4.25
  CHECK(s.V_tilde == 37.25);
  CHECK(s.alpha_tilde == doctest::Approx(0.007117997759859499).epsilon(1e-15));
  CHECK(s.w[0] == doctest::Approx(-1.3271180645552028e-06).epsilon(1e-14));
  CHECK(s.D_sq_accum == 3.0);

  // bound evaluator at this state (T = 3, h_T = G_2 = 2, G_T = 3)
  std::vector<GradientRound> seq(gs.begin(), gs.end());
  CHECK(sf_bound_rhs(s, vec1(0.0), seq) ==
        doctest::Approx(13.196152422706632).epsilon(1e-14));
  CHECK(sf_bound_rhs(s, vec1(1.0), seq) ==
        doctest::Approx(100.68804866723077).epsilon(1e-13));
  CHECK_THROWS_AS(sf_bound_rhs(s, vec1(0.0), {}), std::invalid_argument);
}

TEST_CASE("input validation on dimension mismatch") {
  auto s = sf_init(1.0, 3.0, 2);
  CHECK_THROWS_AS(sf_step(s, make_rounds({vec1(1.0)})[0]),
                  std::invalid_argument);
}

TEST_CASE("closed form agrees with the brute-force oracle") {
  CounterRng rng(401);
  for (Index d : {Index{1}, Index{3}}) {
    auto s = sf_init(0.7, 3.0, d);
    for (int t = 0; t < 120; ++t) {
      Vector g = random_free_grad(rng, d, 5.0);
      GradientRound round{t + 1, g, g.norm()};
      const Vector w_before = s.w;
      const double h_before = s.h;
      const double D_before = std::sqrt(s.D_sq_accum);
      const double alpha_before = s.alpha_tilde;
      const double V_before = s.V_tilde;
      const Vector g_tilde =
          sf_surrogate_grad(w_before, sf_clip(g, h_before), D_before);
      sf_step(s, round);
      if (s.h == 0.0) continue;  // no regularizer yet (all-zero prefix)
      std::optional<RadialRegularizerParams> psi;
      if (h_before > 0.0) {
        psi = RadialRegularizerParams::capped_min(s.k, alpha_before, V_before,
                                                  1.0 / h_before);
      }
      const auto psi_next = RadialRegularizerParams::capped_min(
          s.k, s.alpha_tilde, s.V_tilde, 1.0 / s.h);
      const Vector bf = brute_force_update(psi, psi_next, 0.0, w_before,
                                           g_tilde);
      const double rcf = s.w.norm(), rbf = bf.norm();
      CHECK(std::abs(rcf - rbf) / (1.0 + std::max(rcf, rbf)) <= 1e-8);
      CHECK((s.w - bf).norm() <= 1e-8 * (1.0 + rcf));
    }
  }
}

TEST_CASE("plays are exactly invariant under gradient rescaling") {
  // hand sequence at three scales, one a large power of two
  const std::vector<double> base = {1.0, -2.0, 3.0};
  for (double c : {2.0, 1024.0}) {
    auto s1 = sf_init(1.0, 3.0, 1);
    auto s2 = sf_init(1.0, 3.0, 1);
    for (std::size_t t = 0; t < base.size(); ++t) {
      const Vector p1 =
          sf_step(s1, GradientRound{static_cast<std::int64_t>(t + 1),
                                    vec1(base[t]), std::abs(base[t])});
      const Vector p2 =
          sf_step(s2, GradientRound{static_cast<std::int64_t>(t + 1),
                                    vec1(c * base[t]), c * std::abs(base[t])});
      CHECK(std::abs(p1[0] - p2[0]) <= 1e-12 * std::abs(p1[0]));
      CHECK(std::abs(s1.w[0] - s2.w[0]) <= 1e-12 * std::abs(s1.w[0]));
    }
    CHECK(s1.B_tilde == s2.B_tilde);  // range-ratio stats are scale-blind
    CHECK(s1.alpha_tilde == s2.alpha_tilde);
  }

  // longer random run in d = 2, scales 2^-10 and 2^10
  CounterRng rng(402);
  std::vector<Vector> gs;
  for (int t = 0; t < 200; ++t) gs.push_back(random_free_grad(rng, 2, 3.0));
  auto base_res = run_scale_free(1.0, 3.0, 2, make_rounds(gs));
  for (double c : {0.0009765625, 1024.0}) {
    std::vector<Vector> scaled;
    scaled.reserve(gs.size());
    for (const Vector& g : gs) scaled.push_back(c * g);
    auto res = run_scale_free(1.0, 3.0, 2, make_rounds(scaled));
    for (std::size_t t = 0; t < gs.size(); ++t) {
      for (Index i = 0; i < 2; ++i) {
        const double a = base_res.plays[t][i], b = res.plays[t][i];
        CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)));
      }
    }
  }
}

TEST_CASE("hints are never wrong and the budget stats are monotone") {
  CounterRng rng(403);
  auto s = sf_init(1.0, 3.0, 2);
  double prev_b = s.b_tilde, prev_B = s.B_tilde, prev_G = 0.0;
  for (int t = 0; t < 150; ++t) {
    // norms drift upward so clipping stays active
    Vector g = random_free_grad(rng, 2, 0.5 * (t + 1));
    const double h_t = s.h;
    const Vector g_bar = sf_clip(g, h_t);
    const Vector g_tilde =
        sf_surrogate_grad(s.w, g_bar, std::sqrt(s.D_sq_accum));
    CHECK(g_bar.norm() <= h_t * (1.0 + 1e-15));
    CHECK(g_tilde.norm() <= g_bar.norm() + 1e-15);
    sf_step(s, GradientRound{t + 1, g, g.norm()});
    CHECK(s.V_tilde >= 4.0 * s.h * s.h - 1e-12);
    CHECK(s.b_tilde >= prev_b);
    CHECK(s.B_tilde > prev_B);
    CHECK(s.G_running >= prev_G);
    CHECK(s.h == s.G_running);
    prev_b = s.b_tilde;
    prev_B = s.B_tilde;
    prev_G = s.G_running;
  }
}

TEST_CASE("range-ratio lemma holds on adversarially growing scales") {
  // geometric norm growth is the regime the B-tilde accounting targets
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    CounterRng rng(seed);
    std::vector<Vector> gs;
    for (int t = 0; t < 60; ++t) {
      Vector dir = random_free_grad(rng, 2, 1.0);
      if (dir.norm() > 0.0) dir /= dir.norm();
      gs.push_back(std::pow(1.5, t * rng.next_unit()) * dir);
    }
    auto res = run_scale_free(1.0, 3.0, 2, make_rounds(gs));
    std::vector<double> alphas, norms, Vs;
    for (const auto& rec : res.records) {
      alphas.push_back(rec.alpha);
      norms.push_back(rec.gtilde_norm);
      Vs.push_back(rec.V);
    }
    const double h_T = res.records.back().h;
    auto rep = check_alpha_sum_lemma(alphas, norms, Vs, h_T, 1.0);
    CHECK(rep.pass);
  }
}

TEST_CASE("measured regret respects the order-of-growth bound") {
  CounterRng rng(404);
  std::vector<Vector> gs;
  for (int t = 0; t < 256; ++t) {
    gs.push_back(vec1(rng.next_unit() < 0.5 ? -1.0 : 1.0));
  }
  auto rounds = make_rounds(gs);
  auto res = run_scale_free(1.0, 3.0, 1, rounds);
  for (double u : {0.0, 1.0, -1.0, 5.0}) {
    auto ledger =
        compute_regret(res.plays, rounds, constant_comparators(256, vec1(u)));
    CHECK(ledger.total <= sf_bound_rhs(res.final_state, vec1(u), rounds));
  }
}

TEST_SUITE_END();
