#include "olo/core.hpp"

#include <stdexcept>

namespace olo {

std::vector<GradientRound> make_rounds(const std::vector<Vector>& gs) {
  std::vector<GradientRound> rounds;
  rounds.reserve(gs.size());
  std::int64_t t = 1;
  for (const Vector& g : gs) {
    rounds.push_back(GradientRound{t++, g, g.norm()});
  }
  return rounds;
}

ComparatorSequence make_comparators(std::vector<Vector> points) {
  ComparatorSequence seq;
  seq.points = std::move(points);
  KahanSum path;
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    seq.max_norm = std::max(seq.max_norm, seq.points[i].norm());
    if (i + 1 < seq.points.size()) {
      path.add((seq.points[i + 1] - seq.points[i]).norm());
    }
  }
  seq.path_length = path.value();
  return seq;
}

ComparatorSequence constant_comparators(std::int64_t T, const Vector& u) {
  return make_comparators(std::vector<Vector>(static_cast<std::size_t>(T), u));
}

RegretLedger compute_regret(const std::vector<Vector>& plays,
                            const std::vector<GradientRound>& rounds,
                            const ComparatorSequence& comparators) {
  if (plays.size() != rounds.size() ||
      plays.size() != comparators.points.size()) {
    throw std::invalid_argument("compute_regret: length mismatch");
  }
  RegretLedger ledger;
  ledger.instantaneous.reserve(plays.size());
  ledger.cumulative.reserve(plays.size());
  KahanSum acc;
  for (std::size_t i = 0; i < plays.size(); ++i) {
    const Vector& w = plays[i];
    const Vector& u = comparators.points[i];
    const Vector& g = rounds[i].g;
    if (w.size() != g.size() || u.size() != g.size()) {
      throw std::invalid_argument("compute_regret: dimension mismatch");
    }
    const double inst = g.dot(w - u);
    acc.add(inst);
    ledger.instantaneous.push_back(inst);
    ledger.cumulative.push_back(acc.value());
  }
  ledger.total = acc.value();
  return ledger;
}

}  // namespace olo
