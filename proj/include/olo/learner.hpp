// Uniform stepping interface over the concrete learners, so reductions and
// drivers can wrap any of them interchangeably. A learner exposes the play
// for the current round and advances when it observes the round's gradient;
// play() is const and stable between observations.
#pragma once

#include <functional>
#include <memory>

#include "olo/core.hpp"
#include "olo/dynamic.hpp"
#include "olo/implicit_optimistic.hpp"
#include "olo/pf_static.hpp"
#include "olo/scale_free.hpp"

namespace olo {

class Learner {
 public:
  virtual ~Learner() = default;
  virtual Index dim() const = 0;
  /// Iterate for the current round; repeated calls return the same point.
  virtual Vector play() const = 0;
  /// Consume the round's gradient and advance to the next round.
  virtual void observe(const GradientRound& g) = 0;
};

class PfStaticLearner final : public Learner {
 public:
  PfStaticLearner(double G, double eps, double k, Index d);
  Index dim() const override { return state_.w.size(); }
  Vector play() const override { return state_.w; }
  void observe(const GradientRound& g) override { pf_step(state_, g); }
  const PfStaticState& state() const { return state_; }

 private:
  PfStaticState state_;
};

class DynamicLearner final : public Learner {
 public:
  DynamicLearner(double G, double varepsilon, std::int64_t T_planned, Index d);
  Index dim() const override { return state_.w.size(); }
  Vector play() const override { return state_.w; }
  void observe(const GradientRound& g) override { dyn_step(state_, g); }
  const DynamicLearnerState& state() const { return state_; }

 private:
  DynamicLearnerState state_;
};

class ScaleFreeLearner final : public Learner {
 public:
  ScaleFreeLearner(double eps, double k, Index d);
  Index dim() const override { return state_.w.size(); }
  Vector play() const override;  // projected onto the current ball
  void observe(const GradientRound& g) override { sf_step(state_, g); }
  const ScaleFreeState& state() const { return state_; }

 private:
  ScaleFreeState state_;
};

class ImplicitLearner final : public Learner {
 public:
  /// hint_for(t) supplies the guessed loss for round t (queried for round 1
  /// at construction and for t+1 after each observation).
  ImplicitLearner(double G, double eps, double k, Index d,
                  std::function<HintFunction(std::int64_t)> hint_for);
  Index dim() const override { return state_.w.size(); }
  Vector play() const override { return state_.w; }
  void observe(const GradientRound& g) override;
  const ImplicitState& state() const { return state_; }

 private:
  ImplicitState state_;
  std::function<HintFunction(std::int64_t)> hint_for_;
};

/// Plays the base learner's iterate projected onto the ball of the given
/// radius; gradients pass through unchanged. This is the classical
/// constrained baseline (no gradient correction), and also adapts an
/// unconstrained learner to the unit-ball contract of the one-dimensional
/// reduction.
class BallProjectedLearner final : public Learner {
 public:
  BallProjectedLearner(std::unique_ptr<Learner> base, double radius);
  Index dim() const override { return base_->dim(); }
  Vector play() const override;
  void observe(const GradientRound& g) override { base_->observe(g); }
  const Learner& base() const { return *base_; }

 private:
  std::unique_ptr<Learner> base_;
  double radius_;
};

}  // namespace olo
