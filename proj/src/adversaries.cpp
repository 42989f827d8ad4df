#include "olo/adversaries.hpp"

#include "olo/dynamic.hpp"
#include "olo/pf_static.hpp"
#include "olo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace olo {

namespace {

constexpr double kTol = 1e-9;

std::int64_t half_point(std::int64_t T) { return (T + 1) / 2; }  // ceil(T/2)

std::string describe(const char* what, std::int64_t t, double lhs,
                      double rhs) {
  std::ostringstream os;
  os << what << " at t=" << t << ": " << lhs << " vs " << rhs;
  return os.str();
}

void note_violation(FtrlConditionCheck& c, const std::string& detail) {
  c.ok = false;
  ++c.violations;
  if (c.first_violation.empty()) c.first_violation = detail;
}

}  // namespace

double default_lb_constant() { return std::sqrt(2.0 / M_PI); }

ConstrainedLb constrained_lb_sequence(std::int64_t T) {
  if (T < 2 || T % 2 != 0) {
    throw std::invalid_argument(
        "constrained_lb_sequence: T must be even and >= 2");
  }
  ConstrainedLb out;
  out.gs.resize(static_cast<std::size_t>(T));
  out.us.resize(static_cast<std::size_t>(T));
  for (std::int64_t t = 1; t <= T; ++t) {
    const bool first_half = t <= T / 2;
    out.gs[static_cast<std::size_t>(t - 1)] = first_half ? 1.0 : -1.0;
    out.us[static_cast<std::size_t>(t - 1)] = first_half ? -1.0 : 1.0;
  }
  return out;
}

UnconstrainedLbSequence unconstrained_lb_sequence(std::int64_t T, double C) {
  if (T < 1) throw std::invalid_argument("unconstrained_lb_sequence: T < 1");
  if (!(C > 0.0)) {
    throw std::invalid_argument("unconstrained_lb_sequence: C must be > 0");
  }
  const std::int64_t blk = static_cast<std::int64_t>(
      std::floor(C * std::sqrt(static_cast<double>(T) / 2.0) / 2.0));
  if (blk < 1) {
    throw std::invalid_argument(
        "unconstrained_lb_sequence: T too small for C (need C sqrt(T/2) >= 2)");
  }
  const std::int64_t half = half_point(T);
  // The alternating prefix must end on a zero running sum so the block
  // region's partial sums stay inside [0, blk]; it therefore stops at the
  // largest even index <= ceil(T/2), and the blocks cover the rest.
  const std::int64_t prefix_end = half - (half % 2);
  UnconstrainedLbSequence out;
  out.block_len = blk;
  out.gs.resize(static_cast<std::size_t>(T));
  for (std::int64_t t = 1; t <= prefix_end; ++t) {
    out.gs[static_cast<std::size_t>(t - 1)] = (t % 2 == 1) ? 1.0 : -1.0;
  }
  for (std::int64_t t = prefix_end + 1; t <= T; ++t) {
    const std::int64_t k = (t - prefix_end - 1) / blk;
    out.gs[static_cast<std::size_t>(t - 1)] = (k % 2 == 0) ? 1.0 : -1.0;
  }
  // Generation-time verification of the two proof properties.
  std::int64_t sum = 0;
  for (std::int64_t t = 1; t <= T; ++t) {
    sum += out.gs[static_cast<std::size_t>(t - 1)] > 0.0 ? 1 : -1;
    if (sum < 0) {
      throw std::logic_error("unconstrained_lb_sequence: negative running sum");
    }
    if (t >= half && sum > blk) {
      throw std::logic_error(
          "unconstrained_lb_sequence: running sum exceeds block length");
    }
  }
  return out;
}

std::vector<double> unconstrained_lb_comparators(std::int64_t T, double C,
                                                 double eps,
                                                 const std::vector<double>& gs) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("unconstrained_lb_comparators: eps must be > 0");
  }
  const UnconstrainedLbSequence expect = unconstrained_lb_sequence(T, C);
  if (gs != expect.gs) {
    throw std::invalid_argument(
        "unconstrained_lb_comparators: gs does not match "
        "unconstrained_lb_sequence(T, C)");
  }
  const std::int64_t half = half_point(T);
  const double mag = 2.0 * eps / (C * C);
  std::vector<double> us(static_cast<std::size_t>(T), 0.0);
  for (std::int64_t t = half; t <= T; ++t) {
    us[static_cast<std::size_t>(t - 1)] = -mag * gs[static_cast<std::size_t>(t - 1)];
  }

  // Every active round contributes exactly -mag, so the loss gap is
  // -2 (T - ceil(T/2) + 1) eps / C^2.
  KahanSum gu;
  for (std::int64_t t = 1; t <= T; ++t) {
    gu.add(gs[static_cast<std::size_t>(t - 1)] * us[static_cast<std::size_t>(t - 1)]);
  }
  const double expected = -mag * static_cast<double>(T - half + 1);
  if (std::abs(gu.value() - expected) > 1e-12 * (1.0 + std::abs(expected))) {
    throw std::logic_error("unconstrained_lb_comparators: loss-gap identity failed");
  }

  // Sandwich on path length + max norm. The construction makes roughly
  // T / (2 blk) sign flips of size 2 mag, so the upper constant 8 only
  // clears the floor-induced slack in blk once T is large enough; the last
  // gate condition (a jump-count budget: even ceil((T/2+1)/blk) + 1 flips
  // fit under 8 eps sqrt(T)/C^3) makes that precise. It holds at the
  // canonical T=32, C=1 instance and for every large T.
  const std::int64_t blk = expect.block_len;
  const double sqrtT = std::sqrt(static_cast<double>(T));
  const bool large_enough =
      2 * (T - blk) >= T &&
      2.0 + (2.0 / C) * std::sqrt(2.0 * static_cast<double>(T)) <=
          (4.0 / C) * sqrtT &&
      static_cast<double>(blk) * (4.0 * sqrtT / C - 4.0) >=
          static_cast<double>(T) + 2.0;
  if (large_enough) {
    double path = 0.0;
    for (std::size_t i = 0; i + 1 < us.size(); ++i) {
      path += std::abs(us[i + 1] - us[i]);
    }
    const double pm = path + mag;
    const double lo =
        eps * std::sqrt(2.0 * static_cast<double>(T)) / (C * C * C);
    const double hi = 8.0 * eps * std::sqrt(static_cast<double>(T)) / (C * C * C);
    if (!(pm >= lo * (1.0 - 1e-12) && pm <= hi * (1.0 + 1e-12))) {
      throw std::logic_error(
          "unconstrained_lb_comparators: path-length sandwich failed");
    }
  }
  return us;
}

UpdateMap pf_update_map(double G, double eps, double k) {
  return [G, eps, k](const std::vector<double>& prefix) {
    PfStaticState s = pf_init(G, eps, k, 1);
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      Vector g(1);
      g << prefix[i];
      pf_step(s, GradientRound{static_cast<std::int64_t>(i + 1), g,
                               std::abs(prefix[i])});
    }
    return s.w(0);
  };
}

UpdateMap dyn_sub_update_map(double G, double eps_sub, double eta) {
  return [G, eps_sub, eta](const std::vector<double>& prefix) {
    // Mirrors the bookkeeping of dyn_step for a single grid entry: the
    // shared V starts at 4 G^2 and absorbs ||g_t||^2 before each sub-step.
    double V = 4.0 * G * G;
    KahanSum grad_sq;
    Vector w = Vector::Zero(1);
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      const double alpha_t = dyn_alpha(G, eps_sub, V);
      grad_sq.add(prefix[i] * prefix[i]);
      V = 4.0 * G * G + grad_sq.value();
      const double alpha_next = dyn_alpha(G, eps_sub, V);
      Vector g(1);
      g << prefix[i];
      w = dyn_sub_step(w, eta,
                       GradientRound{static_cast<std::int64_t>(i + 1), g,
                                     std::abs(prefix[i])},
                       alpha_t, alpha_next);
    }
    return w(0);
  };
}

FtrlProbeSet make_ftrl_probes(std::uint64_t seed, std::int64_t count,
                              std::int64_t max_len) {
  if (count < 1 || max_len < 1) {
    throw std::invalid_argument("make_ftrl_probes: count and max_len must be >= 1");
  }
  CounterRng rng(seed);
  FtrlProbeSet out;
  out.sequences.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t len = 1 + (i % max_len);
    std::vector<double> seq(static_cast<std::size_t>(len));
    for (auto& v : seq) v = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
    out.sequences.push_back(std::move(seq));
  }
  return out;
}

namespace {

double prefix_sum(const std::vector<double>& seq, std::size_t len) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s += seq[i];
  return s;
}

void check_sum_dependence(const UpdateMap& F,
                          const std::vector<double>& probe, CounterRng& rng,
                          FtrlConditionCheck& out) {
  if (probe.size() < 2) return;
  std::vector<std::vector<double>> variants;
  std::vector<double> v = probe;
  std::sort(v.begin(), v.end());
  variants.push_back(v);
  std::reverse(v.begin(), v.end());
  variants.push_back(v);
  v = probe;
  for (std::size_t i = v.size() - 1; i > 0; --i) {
    std::swap(v[i], v[rng.next_u64() % (i + 1)]);
  }
  variants.push_back(v);

  const double base = F(probe);
  for (const auto& variant : variants) {
    if (variant == probe) continue;
    ++out.checks;
    const double other = F(variant);
    if (std::abs(other - base) > kTol * (1.0 + std::abs(base))) {
      note_violation(out,
                     describe("equal-sum rearrangement changed the iterate",
                              static_cast<std::int64_t>(probe.size()) + 1,
                              base, other));
    }
  }
}

}  // namespace

FtrlConditionsReport check_ftrl_conditions(const UpdateMap& F,
                                           const FtrlProbeSet& probes) {
  FtrlConditionsReport report;
  CounterRng shuffle_rng(0x9d5c0a3b1ULL);

  std::int64_t max_len = 0;
  for (const auto& probe : probes.sequences) {
    max_len = std::max<std::int64_t>(max_len,
                                     static_cast<std::int64_t>(probe.size()));
    check_sum_dependence(F, probe, shuffle_rng, report.sum_dependence);

    std::vector<double> prefix;
    std::vector<double> negated;
    prefix.reserve(probe.size());
    negated.reserve(probe.size());
    for (std::size_t j = 0; j < probe.size(); ++j) {
      prefix.push_back(probe[j]);
      negated.push_back(-probe[j]);
      const double s = prefix_sum(prefix, prefix.size());
      const double w = F(prefix);
      const double w_neg = F(negated);

      ++report.sign_opposition.checks;
      if (w * s > kTol) {
        note_violation(report.sign_opposition,
                       describe("sign(w) matches sign(g_{1:t})",
                                static_cast<std::int64_t>(j) + 2, w, s));
      }
      ++report.oddness.checks;
      if (std::abs(w + w_neg) > kTol) {
        note_violation(report.oddness,
                       describe("F(s) + F(-s) != 0",
                                static_cast<std::int64_t>(j) + 2, w, w_neg));
      }
    }
  }

  // Condition 4: at each probe length walk canonical prefixes whose running
  // sums are -x for increasing x > 0 and require F to be non-decreasing.
  for (std::int64_t n = 1; n <= max_len; ++n) {
    double prev = 0.0;
    bool have_prev = false;
    for (std::int64_t x = (n % 2 == 0) ? 2 : 1; x <= n; x += 2) {
      std::vector<double> prefix(static_cast<std::size_t>(n), 1.0);
      for (std::int64_t i = 0; i < (n + x) / 2; ++i) {
        prefix[static_cast<std::size_t>(i)] = -1.0;
      }
      const double w = F(prefix);
      if (have_prev) {
        ++report.monotonicity.checks;
        if (w < prev - kTol) {
          note_violation(report.monotonicity,
                         describe("F(-x) decreased in x", n + 1, prev, w));
        }
      }
      prev = w;
      have_prev = true;
    }
  }
  return report;
}

std::vector<GradientRound> stochastic_gradients(const AdversaryConfig& config) {
  if (config.T < 0) {
    throw std::invalid_argument("stochastic_gradients: T must be >= 0");
  }
  std::vector<Vector> gs;
  gs.reserve(static_cast<std::size_t>(config.T));
  CounterRng rng(config.seed);
  switch (config.kind) {
    case AdversaryKind::RADEMACHER: {
      if (config.dim < 1 || !(config.G > 0.0)) {
        throw std::invalid_argument("stochastic_gradients: need dim >= 1, G > 0");
      }
      const double scale =
          config.G / std::sqrt(static_cast<double>(config.dim));
      for (std::int64_t t = 0; t < config.T; ++t) {
        Vector g(config.dim);
        for (Index i = 0; i < config.dim; ++i) {
          g(i) = (rng.next_u64() & 1ULL) ? scale : -scale;
        }
        gs.push_back(std::move(g));
      }
      break;
    }
    case AdversaryKind::GAUSSIAN_CLIPPED: {
      if (config.dim < 1 || !(config.G > 0.0)) {
        throw std::invalid_argument("stochastic_gradients: need dim >= 1, G > 0");
      }
      for (std::int64_t t = 0; t < config.T; ++t) {
        Vector g(config.dim);
        for (Index i = 0; i < config.dim; ++i) g(i) = rng.next_gaussian();
        const double n = g.norm();
        if (n > config.G) g *= config.G / n;
        gs.push_back(std::move(g));
      }
      break;
    }
    case AdversaryKind::CONSTANT: {
      if (config.constant.size() < 1) {
        throw std::invalid_argument(
            "stochastic_gradients: CONSTANT kind requires a constant vector");
      }
      for (std::int64_t t = 0; t < config.T; ++t) gs.push_back(config.constant);
      break;
    }
    case AdversaryKind::CONSTRAINED_LB:
    case AdversaryKind::UNCONSTRAINED_LB:
      throw std::invalid_argument(
          "stochastic_gradients: lower-bound kinds use the dedicated "
          "constrained_lb_sequence / unconstrained_lb_sequence generators");
  }
  return make_rounds(gs);
}

ComparatorSequence piecewise_comparators(std::int64_t T,
                                         const std::vector<std::int64_t>& switch_points,
                                         const std::vector<Vector>& values) {
  if (T < 1) throw std::invalid_argument("piecewise_comparators: T must be >= 1");
  if (values.size() != switch_points.size() + 1) {
    throw std::invalid_argument(
        "piecewise_comparators: need exactly one more value than switch point");
  }
  for (std::size_t i = 0; i < switch_points.size(); ++i) {
    if (switch_points[i] < 1 || switch_points[i] > T) {
      throw std::invalid_argument(
          "piecewise_comparators: switch points must lie in [1, T]");
    }
    if (i > 0 && switch_points[i] <= switch_points[i - 1]) {
      throw std::invalid_argument(
          "piecewise_comparators: switch points must be strictly ascending");
    }
  }
  const Index d = values.front().size();
  for (const auto& v : values) {
    if (v.size() != d) {
      throw std::invalid_argument("piecewise_comparators: value dimensions differ");
    }
  }
  std::vector<Vector> points;
  points.reserve(static_cast<std::size_t>(T));
  std::size_t seg = 0;
  for (std::int64_t t = 1; t <= T; ++t) {
    while (seg < switch_points.size() && switch_points[seg] <= t) ++seg;
    points.push_back(values[seg]);
  }
  return make_comparators(std::move(points));
}

}  // namespace olo
