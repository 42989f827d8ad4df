#include "olo/reductions.hpp"

#include <cmath>
#include <stdexcept>

namespace olo {

IntervalSchedule IntervalSchedule::make(
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges) {
  if (ranges.empty()) {
    throw std::invalid_argument("schedule must have at least one interval");
  }
  if (ranges.front().first != 1) {
    throw std::invalid_argument("schedule must start at round 1");
  }
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].first > ranges[i].second) {
      throw std::invalid_argument("intervals must be nonempty");
    }
    if (i > 0 && ranges[i].first != ranges[i - 1].second + 1) {
      throw std::invalid_argument("intervals must adjoin in ascending order");
    }
  }
  IntervalSchedule s;
  s.intervals = std::move(ranges);
  return s;
}

IntervalSchedule IntervalSchedule::singletons(std::int64_t T) {
  std::vector<std::pair<std::int64_t, std::int64_t>> r;
  r.reserve(static_cast<std::size_t>(T));
  for (std::int64_t t = 1; t <= T; ++t) r.emplace_back(t, t);
  return make(std::move(r));
}

IntervalSchedule IntervalSchedule::uniform(std::int64_t T, std::int64_t len) {
  if (len < 1) throw std::invalid_argument("interval length must be >= 1");
  std::vector<std::pair<std::int64_t, std::int64_t>> r;
  for (std::int64_t lo = 1; lo <= T; lo += len) {
    r.emplace_back(lo, std::min(lo + len - 1, T));
  }
  return make(std::move(r));
}

std::int64_t IntervalSchedule::max_len() const {
  std::int64_t m = 0;
  for (const auto& [lo, hi] : intervals) m = std::max(m, hi - lo + 1);
  return m;
}

LazyLearner::LazyLearner(std::unique_ptr<Learner> base,
                         IntervalSchedule schedule)
    : base_(std::move(base)), schedule_(std::move(schedule)) {
  if (!base_) throw std::invalid_argument("base learner must be set");
  if (schedule_.intervals.empty()) {
    throw std::invalid_argument("schedule must have at least one interval");
  }
  sum_ = Vector::Zero(base_->dim());
  cached_ = base_->play();
}

void LazyLearner::observe(const GradientRound& g) {
  if (t_ > schedule_.horizon()) {
    throw std::out_of_range("LazyLearner: round past the schedule horizon");
  }
  if (g.g.size() != sum_.size()) {
    throw std::invalid_argument("LazyLearner: dimension mismatch");
  }
  sum_ += g.g;
  if (t_ == schedule_.intervals[k_].second) {  // interval ends: flush
    base_->observe(GradientRound{static_cast<std::int64_t>(k_ + 1), sum_,
                                 sum_.norm()});
    sum_.setZero();
    ++k_;
    cached_ = base_->play();
  }
  ++t_;
}

std::unique_ptr<LazyLearner> lazy_wrap(std::unique_ptr<Learner> base,
                                       IntervalSchedule schedule) {
  return std::make_unique<LazyLearner>(std::move(base), std::move(schedule));
}

OneDimLearner::OneDimLearner(std::unique_ptr<Learner> a1d,
                             std::unique_ptr<Learner> as_learner)
    : a1d_(std::move(a1d)), as_(std::move(as_learner)) {
  if (!a1d_ || !as_) throw std::invalid_argument("both learners must be set");
  if (a1d_->dim() != 1) {
    throw std::invalid_argument("magnitude learner must be one-dimensional");
  }
}

Vector OneDimLearner::play() const {
  const Vector x = as_->play();
  if (x.norm() > 1.0 + 1e-12) {
    throw std::domain_error(
        "OneDimLearner: direction learner left the unit ball");
  }
  return a1d_->play()[0] * x;
}

void OneDimLearner::observe(const GradientRound& g) {
  if (g.g.size() != as_->dim()) {
    throw std::invalid_argument("OneDimLearner: dimension mismatch");
  }
  const Vector x = as_->play();
  if (x.norm() > 1.0 + 1e-12) {
    throw std::domain_error(
        "OneDimLearner: direction learner left the unit ball");
  }
  const double beta = a1d_->play()[0];
  const double ghat = g.g.dot(x);
  betas_.push_back(beta);
  xs_.push_back(x);
  ghats_.push_back(ghat);
  a1d_->observe(
      GradientRound{g.t, Vector::Constant(1, ghat), std::abs(ghat)});
  as_->observe(g);
}

std::unique_ptr<OneDimLearner> onedim_combine(
    std::unique_ptr<Learner> a1d, std::unique_ptr<Learner> as_learner) {
  return std::make_unique<OneDimLearner>(std::move(a1d),
                                         std::move(as_learner));
}

CheckReport check_onedim_identity(const std::vector<double>& betas,
                                  const std::vector<Vector>& xs,
                                  const std::vector<double>& ghats,
                                  const std::vector<GradientRound>& gs,
                                  const ComparatorSequence& us,
                                  double slack_per_round) {
  const std::size_t T = gs.size();
  if (betas.size() != T || xs.size() != T || ghats.size() != T ||
      us.points.size() != T) {
    throw std::invalid_argument("check_onedim_identity: length mismatch");
  }
  CheckReport rep;
  rep.what = "onedim_identity";
  const double M = us.max_norm;
  KahanSum lhs, scalar_part, ball_part;
  for (std::size_t t = 0; t < T; ++t) {
    lhs.add(gs[t].g.dot(betas[t] * xs[t] - us.points[t]));
    if (M == 0.0) {
      scalar_part.add(ghats[t] * betas[t]);
    } else {
      scalar_part.add(ghats[t] * (betas[t] - M));
      ball_part.add(gs[t].g.dot(xs[t] - us.points[t] / M));
    }
  }
  rep.lhs = lhs.value();
  rep.rhs = scalar_part.value() + M * ball_part.value();
  rep.pass = std::abs(rep.lhs - rep.rhs) <=
             slack_per_round * static_cast<double>(T);
  return rep;
}

CheckReport check_lazy_decomposition(const std::vector<Vector>& plays,
                                     const std::vector<GradientRound>& gs,
                                     const ComparatorSequence& us,
                                     const IntervalSchedule& schedule,
                                     double slack_per_round) {
  const std::size_t T = gs.size();
  if (plays.size() != T || us.points.size() != T) {
    throw std::invalid_argument("check_lazy_decomposition: length mismatch");
  }
  CheckReport rep;
  rep.what = "lazy_decomposition";
  for (const auto& [lo, hi] : schedule.intervals) {
    if (static_cast<std::size_t>(lo) > T) break;
    const std::size_t a = static_cast<std::size_t>(lo) - 1;
    const std::size_t b =
        std::min(static_cast<std::size_t>(hi), T) - 1;  // inclusive, 0-based
    const Vector& u_end = us.points[b];
    KahanSum whole, anchored, drift, grad_sq, path_sq;
    for (std::size_t t = a; t <= b; ++t) {
      whole.add(gs[t].g.dot(plays[t] - us.points[t]));
      anchored.add(gs[t].g.dot(plays[t] - u_end));
      drift.add(gs[t].g.dot(u_end - us.points[t]));
      if (t > a) {
        grad_sq.add(gs[t].norm * gs[t].norm);
        path_sq.add((us.points[t] - us.points[t - 1]).squaredNorm());
      }
    }
    const double len = static_cast<double>(b - a + 1);
    const double scale =
        1.0 + std::abs(whole.value()) + std::abs(drift.value());
    if (std::abs(whole.value() - (anchored.value() + drift.value())) >
        slack_per_round * len * scale) {
      rep.pass = false;
      rep.witness_t = static_cast<std::int64_t>(lo);
      rep.lhs = whole.value();
      rep.rhs = anchored.value() + drift.value();
      return rep;
    }
    const double drift_cap =
        std::sqrt(2.0 * grad_sq.value() * path_sq.value()) * len;
    if (drift.value() > drift_cap + slack_per_round * len) {
      rep.pass = false;
      rep.witness_t = static_cast<std::int64_t>(lo);
      rep.lhs = drift.value();
      rep.rhs = drift_cap;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

}  // namespace olo
