#include "olo/learner.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace olo {

PfStaticLearner::PfStaticLearner(double G, double eps, double k, Index d)
    : state_(pf_init(G, eps, k, d)) {}

DynamicLearner::DynamicLearner(double G, double varepsilon,
                               std::int64_t T_planned, Index d)
    : state_(dyn_init(G, varepsilon, T_planned, d)) {}

ScaleFreeLearner::ScaleFreeLearner(double eps, double k, Index d)
    : state_(sf_init(eps, k, d)) {}

Vector ScaleFreeLearner::play() const {
  return sf_project(state_.w, std::sqrt(state_.D_sq_accum));
}

ImplicitLearner::ImplicitLearner(
    double G, double eps, double k, Index d,
    std::function<HintFunction(std::int64_t)> hint_for)
    : state_(imp_init(G, eps, k, d)), hint_for_(std::move(hint_for)) {
  if (!hint_for_) throw std::invalid_argument("hint provider must be set");
  imp_optimistic_step(state_, hint_for_(1));
}

void ImplicitLearner::observe(const GradientRound& g) {
  imp_x_step(state_, g);
  imp_optimistic_step(state_, hint_for_(state_.t));
}

BallProjectedLearner::BallProjectedLearner(std::unique_ptr<Learner> base,
                                           double radius)
    : base_(std::move(base)), radius_(radius) {
  if (!base_) throw std::invalid_argument("base learner must be set");
  if (!(radius_ > 0.0)) throw std::invalid_argument("radius must be > 0");
}

Vector BallProjectedLearner::play() const {
  const Vector w = base_->play();
  const double n = w.norm();
  if (n <= radius_) return w;
  return w * (radius_ / n);
}

}  // namespace olo
