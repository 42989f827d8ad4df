// Gradient-sequence generators and checkers for lower-bound experiments:
// deterministic constrained/unconstrained lower-bound constructions with
// their comparator sequences, seeded stochastic gradient streams, piecewise
// comparator builders, and a black-box checker for the four structural
// conditions (sum dependence, sign opposition, oddness, monotonicity) that
// any FTRL-style one-dimensional update map satisfies.
#pragma once

#include "olo/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace olo {

enum class AdversaryKind {
  CONSTRAINED_LB,
  UNCONSTRAINED_LB,
  RADEMACHER,
  GAUSSIAN_CLIPPED,
  CONSTANT,
};

/// Default C for the unconstrained lower-bound construction:
/// sqrt(2/pi), the asymptotic value of E|g_{1:t}|/sqrt(t) for Rademacher
/// gradients. The construction is valid for any C > 0; this is a documented,
/// reproducible default rather than a derived constant.
double default_lb_constant();

/// Configuration for a gradient-sequence generator. Generators are pure
/// functions of this struct: identical configs reproduce identical sequences
/// bit for bit.
struct AdversaryConfig {
  AdversaryKind kind = AdversaryKind::RADEMACHER;
  std::int64_t T = 0;
  std::uint64_t seed = 0;
  Index dim = 1;     // stochastic kinds
  double G = 1.0;    // stochastic kinds: norm bound
  double eps = 1.0;  // UNCONSTRAINED_LB comparator scale
  double C = 0.0;    // UNCONSTRAINED_LB constant; 0 means default_lb_constant()
  Vector constant;   // CONSTANT kind: the repeated vector
};

/// Constrained lower bound (domain [-1,1]): g_t = +1 for t <= T/2 and -1
/// afterwards; comparators u_t = -1 for t <= T/2 and +1 afterwards. The
/// comparator path length is 2 and sum_t g_t u_t = -T, so any learner whose
/// plays stay in [-1,1] and whose running loss is kept small suffers regret
/// about T against this sequence.
struct ConstrainedLb {
  std::vector<double> gs;
  std::vector<double> us;
};

/// Throws std::invalid_argument unless T is even and >= 2.
ConstrainedLb constrained_lb_sequence(std::int64_t T);

/// Unconstrained lower bound gradients: an alternating +1,-1 prefix (ending
/// on a zero running sum) followed by sign blocks of length
/// block_len = floor(C sqrt(T/2) / 2), i.e. g_t = (-1)^k within block k. The
/// construction keeps g_{1:t} >= 0 for every t and |g_{1:t}| <= block_len for
/// all t >= ceil(T/2); both properties are verified at generation time.
struct UnconstrainedLbSequence {
  std::vector<double> gs;
  std::int64_t block_len = 0;
};

/// Throws std::invalid_argument when floor(C sqrt(T/2) / 2) < 1 (T too small
/// for the given C).
UnconstrainedLbSequence unconstrained_lb_sequence(std::int64_t T, double C);

/// Comparators for the unconstrained lower bound: u_t = 0 for
/// t <= ceil(T/2) - 1 and u_t = -(2 eps / C^2) sign(g_t) afterwards, so every
/// late round contributes exactly -2 eps / C^2 to sum_t g_t u_t, giving
/// sum_t g_t u_t = -2 (T - ceil(T/2) + 1) eps / C^2 <= -T eps / C^2.
/// When T satisfies the construction's largeness conditions the sandwich
///   eps sqrt(2T) / C^3 <= path_length + max|u_t| <= 8 eps sqrt(T) / C^3
/// is asserted at generation time. `gs` must be the exact output of
/// unconstrained_lb_sequence(T, C); anything else throws
/// std::invalid_argument.
std::vector<double> unconstrained_lb_comparators(std::int64_t T, double C,
                                                 double eps,
                                                 const std::vector<double>& gs);

/// A one-dimensional prefix-to-iterate map: F(g_1..g_{t-1}) = w_t. This is
/// the black-box view of a learner used by the structural-conditions checker.
using UpdateMap = std::function<double(const std::vector<double>&)>;

/// pf_static's update map (1-D) as a black box.
UpdateMap pf_update_map(double G, double eps, double k);

/// A single fixed-step sub-learner from the dynamic-regret grid (1-D),
/// run with the shared alpha schedule it would see inside the aggregate.
UpdateMap dyn_sub_update_map(double G, double eps_sub, double eta);

/// Seeded set of +-1 probe prefixes for the conditions checker.
struct FtrlProbeSet {
  std::vector<std::vector<double>> sequences;
};

/// `count` Rademacher prefixes with lengths cycling over 1..max_len.
FtrlProbeSet make_ftrl_probes(std::uint64_t seed, std::int64_t count,
                              std::int64_t max_len);

/// Result of checking one structural condition.
struct FtrlConditionCheck {
  bool ok = true;
  std::int64_t checks = 0;
  std::int64_t violations = 0;
  std::string first_violation;  // empty when ok
};

/// Report for the four conditions an FTRL-style 1-D update map satisfies:
///  1. w_t is a function of the gradient sum and the norm sequence alone,
///  2. sign(F(g_{1:t})) = -sign(g_{1:t}),
///  3. F is odd: F(s) = -F(-s),
///  4. F(-x) is non-decreasing for positive x.
struct FtrlConditionsReport {
  FtrlConditionCheck sum_dependence;   // condition 1
  FtrlConditionCheck sign_opposition;  // condition 2
  FtrlConditionCheck oddness;          // condition 3
  FtrlConditionCheck monotonicity;     // condition 4

  bool all_ok() const {
    return sum_dependence.ok && sign_opposition.ok && oddness.ok &&
           monotonicity.ok;
  }
};

/// Numerically tests the four conditions on the probe set. Condition 1 is
/// tested by re-evaluating each probe under sum- and norm-preserving
/// rearrangements (sorted ascending/descending and one seeded shuffle);
/// conditions 2 and 3 are tested on every prefix of every probe; condition 4
/// walks a canonical grid of prefixes with running sums -x for increasing
/// x > 0 at each probe length. Violations are collected in the report, never
/// thrown.
FtrlConditionsReport check_ftrl_conditions(const UpdateMap& F,
                                           const FtrlProbeSet& probes);

/// Seeded stochastic gradient streams:
///   RADEMACHER:       i.i.d. coordinates +-G/sqrt(d) (so every ||g_t|| = G),
///   GAUSSIAN_CLIPPED: i.i.d. standard normal coordinates, rescaled onto the
///                     ball ||g|| <= G when the draw lands outside it,
///   CONSTANT:         config.constant repeated T times.
/// Throws std::invalid_argument for lower-bound kinds (those are the
/// deterministic constructions above) and on invalid T/dim/G.
std::vector<GradientRound> stochastic_gradients(const AdversaryConfig& config);

/// Piecewise-constant comparator sequence over t = 1..T: u_t = values[j]
/// where j counts the switch points <= t. Switch points must be strictly
/// ascending within [1, T] and values must have exactly one more entry than
/// switch_points; the result's path length is the sum of jump norms.
ComparatorSequence piecewise_comparators(std::int64_t T,
                                         const std::vector<std::int64_t>& switch_points,
                                         const std::vector<Vector>& values);

}  // namespace olo
