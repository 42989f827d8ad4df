#include "olo/dynamic.hpp"

#include "olo/harness.hpp"
#include "olo/rng.hpp"
#include "olo/verification.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

using namespace olo;

namespace {

Vector vec1(double x) { return Vector::Constant(1, x); }

// piecewise-constant comparators with `switches` uniform change points
ComparatorSequence random_piecewise(CounterRng& rng, int T, int switches,
                                    double radius) {
  std::vector<Vector> us;
  double level = radius * (2.0 * rng.next_unit() - 1.0);
  int next_switch = 1 + static_cast<int>(rng.next_unit() * T / (switches + 1));
  for (int t = 0; t < T; ++t) {
    if (t == next_switch && switches > 0) {
      level = radius * (2.0 * rng.next_unit() - 1.0);
      next_switch += 1 + static_cast<int>(rng.next_unit() * T / (switches + 1));
    }
    us.push_back(vec1(level));
  }
  return make_comparators(us);
}

}  // namespace

TEST_SUITE_BEGIN("dynamic");

TEST_CASE("step-size grid construction") {
  // T = 16: 2^1/4 = 0.5, 2^2/4 = 1.0 (at the 1/G clamp)
  CHECK(dyn_eta_grid(1.0, 16) == std::vector<double>{0.5, 1.0});
  // T = 4: single entry clamped to 1/G
  CHECK(dyn_eta_grid(1.0, 4) == std::vector<double>{1.0});
  // clamping deduplicates the top of the grid
  auto g64 = dyn_eta_grid(2.0, 64);
  CHECK(g64 == std::vector<double>{0.125, 0.25, 0.5});
  // tiny horizons still yield a nonempty grid
  CHECK(dyn_eta_grid(1.0, 1) == std::vector<double>{1.0});
  CHECK(dyn_eta_grid(1.0, 2) == std::vector<double>{1.0});
}

TEST_CASE("initial state and hand-computed first step") {
  auto s = dyn_init(1.0, 1.0, 16, 1);
  CHECK(s.etas.size() == 2);
  CHECK(s.per_sub_eps == 0.5);
  CHECK(s.V == 4.0);
  CHECK(s.alpha == doctest::Approx(0.06504278065642524).epsilon(1e-15));
  CHECK(s.w.norm() == 0.0);

  auto g = make_rounds({vec1(0.3)})[0];
  dyn_step(s, g);
  CHECK(s.alpha == doctest::Approx(0.06161766860870099).epsilon(1e-15));
  CHECK(s.sub_w[0][0] ==
        doctest::Approx(-0.0033213502073152464).epsilon(1e-14));
  CHECK(s.sub_w[1][0] ==
        doctest::Approx(-0.003810223832938483).epsilon(1e-14));
  CHECK(s.w[0] == doctest::Approx(-0.007131574040253729).epsilon(1e-14));
}

TEST_CASE("movement clamp freezes sub-learners at the origin") {
  // from w = 0 with ||g|| = 1: ||theta|| = 1 <= 2 eta ||g||^2 for eta >= 0.5,
  // so every grid entry >= 0.5 stays exactly at 0
  auto s = dyn_init(1.0, 1.0, 16, 1);
  for (int t = 0; t < 5; ++t) {
    dyn_step(s, make_rounds({vec1(t % 2 ? -1.0 : 1.0)})[0]);
    CHECK(s.sub_w[0][0] == 0.0);
    CHECK(s.sub_w[1][0] == 0.0);
  }
}

TEST_CASE("gradient guard") {
  auto s = dyn_init(0.5, 1.0, 16, 1);
  CHECK_THROWS_AS(dyn_step(s, make_rounds({vec1(0.7)})[0]),
                  std::invalid_argument);
}

TEST_CASE("sub-learner closed form agrees with the brute-force oracle") {
  CounterRng rng(31);
  auto res_state = dyn_init(1.0, 1.0, 1 << 10, 2);
  const std::size_t n = res_state.etas.size();
  for (int t = 0; t < 150; ++t) {
    Vector g(2);
    g << 0.6 * (2 * rng.next_unit() - 1), 0.6 * (2 * rng.next_unit() - 1);
    GradientRound round{t + 1, g, g.norm()};
    std::vector<RadialRegularizerParams> before;
    std::vector<Vector> w_before = res_state.sub_w;
    for (std::size_t i = 0; i < n; ++i) before.push_back(dyn_sub_params(res_state, i));
    dyn_step(res_state, round);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector bf = brute_force_update(
          before[i], dyn_sub_params(res_state, i),
          2.0 * res_state.etas[i] * round.norm * round.norm, w_before[i], g);
      const double rcf = res_state.sub_w[i].norm(), rbf = bf.norm();
      INFO("t = ", t, " eta = ", res_state.etas[i]);
      CHECK(std::abs(rcf - rbf) / (1.0 + std::max(rcf, rbf)) <= 1e-8);
      CHECK((res_state.sub_w[i] - bf).norm() <= 1e-8 * (1.0 + rcf));
    }
  }
}

TEST_CASE("proof-term checkers pass on sub-learner traces") {
  CounterRng rng(53);
  const int T = 200;
  std::vector<Vector> gs;
  for (int t = 0; t < T; ++t) gs.push_back(vec1(0.8 * (2 * rng.next_unit() - 1)));
  auto rounds = make_rounds(gs);
  auto res = run_dynamic(1.0, 1.0, T, 1, rounds);

  auto moving = random_piecewise(rng, T, 4, 1.5);
  auto fixed = constant_comparators(T, vec1(-0.9));
  for (std::size_t i = 0; i < res.sub_traces.size(); ++i) {
    CHECK(check_centered_md(res.sub_traces[i], fixed).pass);
    CHECK(check_centered_md(res.sub_traces[i], moving).pass);
    CHECK(check_stability_lemma(res.sub_traces[i], X0Kind::Zero).pass);
    CHECK(check_strong_decomposition(res.sub_traces[i], moving).pass);
    // per-sub wealth control: regret against 0 stays below 2 eps_sub G
    auto ledger = compute_regret(res.sub_plays[i], rounds,
                                 constant_comparators(T, vec1(0.0)));
    CHECK(ledger.total <= 2.0 * res.final_state.per_sub_eps * 1.0 + 1e-9 * T);
  }
}

TEST_CASE("aggregate regret obeys the dynamic bound") {
  CounterRng rng(71);
  const int T = 256;
  for (int run = 0; run < 10; ++run) {
    std::vector<Vector> gs;
    for (int t = 0; t < T; ++t) {
      gs.push_back(vec1(rng.next_unit() < 0.5 ? -1.0 : 1.0));
    }
    auto rounds = make_rounds(gs);
    auto res = run_dynamic(1.0, 1.0, T, 1, rounds, /*with_trace=*/false);
    auto us = random_piecewise(rng, T, 1 + run % 8, 2.0);
    auto ledger = compute_regret(res.plays, rounds, us);
    const double rhs = dyn_bound_rhs(res.final_state, us, rounds);
    INFO("run ", run, ": regret = ", ledger.total, " bound = ", rhs);
    CHECK(ledger.total <= rhs + 1e-9 * T);
  }
}

TEST_CASE("zero comparators collapse the bound to the wealth term") {
  const int T = 8;
  auto gs = make_rounds(std::vector<Vector>(T, vec1(0.5)));
  auto res = run_dynamic(1.0, 1.0, T, 1, gs, false);
  auto us = constant_comparators(T, vec1(0.0));
  // M = P = 0: only 2 eps_sub G |S| survives (= 2 varepsilon G)
  CHECK(dyn_bound_rhs(res.final_state, us, gs) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_SUITE_END();
