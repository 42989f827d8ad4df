// Generic wrappers over any Learner:
//  - LazyLearner re-plays one iterate across each interval of a schedule and
//    forwards the interval's summed gradient at its end, cutting the base
//    learner's update count from T to K while inflating regret only by the
//    interval length (amortized-computation reduction).
//  - OneDimLearner composes a scalar learner (magnitude) with a unit-ball
//    learner (direction): it plays beta_t * x_t, feeds <g_t, x_t> to the
//    scalar learner and g_t to the direction learner. The regret of the
//    composite splits exactly as
//      sum <g_t, w_t - u_t> = sum ghat_t (beta_t - M) + M sum <g_t, x_t - u_t/M>
//    for M = max ||u_t||.
#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "olo/core.hpp"
#include "olo/learner.hpp"
#include "olo/verification.hpp"

namespace olo {

/// Ascending, contiguous, inclusive integer ranges covering [1, T].
struct IntervalSchedule {
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;

  /// Validates: nonempty, first starts at 1, each lo <= hi, consecutive
  /// intervals adjoin (no gaps, no overlap). Throws std::invalid_argument.
  static IntervalSchedule make(
      std::vector<std::pair<std::int64_t, std::int64_t>> ranges);
  /// T singleton intervals [t, t] (the identity reduction).
  static IntervalSchedule singletons(std::int64_t T);
  /// ceil(T / len) intervals of the given length (last one clipped).
  static IntervalSchedule uniform(std::int64_t T, std::int64_t len);

  std::int64_t max_len() const;
  std::int64_t horizon() const { return intervals.back().second; }
};

/// Lazy wrapper. The base learner sees one aggregated gradient per interval,
/// whose norm can reach max_len * G: construct the base with its Lipschitz
/// bound scaled accordingly. Steps past the schedule horizon throw
/// std::out_of_range.
class LazyLearner final : public Learner {
 public:
  LazyLearner(std::unique_ptr<Learner> base, IntervalSchedule schedule);
  Index dim() const override { return base_->dim(); }
  Vector play() const override { return cached_; }
  void observe(const GradientRound& g) override;
  const Learner& base() const { return *base_; }

 private:
  std::unique_ptr<Learner> base_;
  IntervalSchedule schedule_;
  std::size_t k_ = 0;   // current interval
  std::int64_t t_ = 1;  // current round
  Vector sum_;          // gradient sum within the current interval
  Vector cached_;       // play held fixed across the interval
};

std::unique_ptr<LazyLearner> lazy_wrap(std::unique_ptr<Learner> base,
                                       IntervalSchedule schedule);

/// Composite magnitude-times-direction learner with per-round logs.
class OneDimLearner final : public Learner {
 public:
  /// a1d must be one-dimensional; as_learner's plays must stay in the unit
  /// ball (up to 1e-12 relative), checked every round.
  OneDimLearner(std::unique_ptr<Learner> a1d,
                std::unique_ptr<Learner> as_learner);
  Index dim() const override { return as_->dim(); }
  Vector play() const override;
  void observe(const GradientRound& g) override;

  const std::vector<double>& betas() const { return betas_; }
  const std::vector<Vector>& directions() const { return xs_; }
  const std::vector<double>& scalar_grads() const { return ghats_; }

 private:
  std::unique_ptr<Learner> a1d_;
  std::unique_ptr<Learner> as_;
  std::vector<double> betas_;
  std::vector<Vector> xs_;
  std::vector<double> ghats_;
};

std::unique_ptr<OneDimLearner> onedim_combine(
    std::unique_ptr<Learner> a1d, std::unique_ptr<Learner> as_learner);

/// Verifies the exact one-dimensional regret decomposition on logged runs:
///   sum <g_t, beta_t x_t - u_t>
///     = sum ghat_t (beta_t - M) + M sum <g_t, x_t - u_t / M>,
/// with M = max ||u_t||. For M = 0 the right side degenerates to
/// sum ghat_t beta_t. Passes when the two sides agree to slack_per_round * T.
CheckReport check_onedim_identity(const std::vector<double>& betas,
                                  const std::vector<Vector>& xs,
                                  const std::vector<double>& ghats,
                                  const std::vector<GradientRound>& gs,
                                  const ComparatorSequence& us,
                                  double slack_per_round = 1e-9);

/// Per-interval accounting of a lazily wrapped run. For each interval
/// I = [a, b]:
///   sum_{t in I} <g_t, w_t - u_t>
///     = sum_{t in I} <g_t, w_t - u_b>  +  sum_{t in I} <g_t, u_b - u_t>,
/// checked as an equality, and the drift term (second sum) obeys
///   <= sqrt(2 ||g||^2_{a+1:b} S_I) * |I|,   S_I = sum_{a<t<=b} ||u_t-u_{t-1}||^2.
/// The drift bound excludes the interval's first gradient, following the
/// derivation it is quoted from; it is meaningful when gradients inside the
/// interval are not concentrated on the first round.
CheckReport check_lazy_decomposition(const std::vector<Vector>& plays,
                                     const std::vector<GradientRound>& gs,
                                     const ComparatorSequence& us,
                                     const IntervalSchedule& schedule,
                                     double slack_per_round = 1e-9);

}  // namespace olo
