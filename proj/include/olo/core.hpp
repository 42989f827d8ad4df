// Core types for online linear optimization experiments: gradient rounds,
// comparator sequences, and compensated regret accounting.
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace olo {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Kahan–Neumaier compensated accumulator. Keeps the running error of a long
/// sum of doubles near one ulp of the true sum, independent of length.
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// One adversary round: the (sub)gradient revealed after the learner commits
/// to its iterate, with the Euclidean norm cached once at construction.
struct GradientRound {
  std::int64_t t = 0;  // 1-based round index
  Vector g;
  double norm = 0.0;
};

/// Builds a round sequence from raw gradient vectors (t = 1..n, norms cached).
std::vector<GradientRound> make_rounds(const std::vector<Vector>& gs);

/// Comparator sequence u_1..u_T with its path length P = sum_t ||u_{t+1}-u_t||
/// and max norm M = max_t ||u_t|| precomputed.
struct ComparatorSequence {
  std::vector<Vector> points;
  double path_length = 0.0;
  double max_norm = 0.0;
};

ComparatorSequence make_comparators(std::vector<Vector> points);

/// T copies of the same comparator point (path length zero).
ComparatorSequence constant_comparators(std::int64_t T, const Vector& u);

/// Per-round and cumulative linear regret sum_t <g_t, w_t - u_t>, accumulated
/// with compensated summation.
struct RegretLedger {
  std::vector<double> instantaneous;
  std::vector<double> cumulative;
  double total = 0.0;
};

/// Computes the regret ledger of plays against a comparator sequence.
/// Throws std::invalid_argument on length or dimension mismatch.
RegretLedger compute_regret(const std::vector<Vector>& plays,
                            const std::vector<GradientRound>& rounds,
                            const ComparatorSequence& comparators);

}  // namespace olo
