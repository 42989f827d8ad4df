#include "olo/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace olo {

std::vector<double> dyn_eta_grid(double G, std::int64_t T) {
  if (!(G > 0.0)) throw std::invalid_argument("G must be > 0");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  const double sqrtT = std::sqrt(static_cast<double>(T));
  const int jmax = std::max(1, static_cast<int>(std::ceil(std::log2(sqrtT))));
  std::vector<double> grid;
  for (int j = 1; j <= jmax; ++j) {
    grid.push_back(
        std::min(std::pow(2.0, j) / (G * sqrtT), 1.0 / G));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double dyn_alpha(double G, double eps_sub, double V) {
  const double l = std::log(V / (G * G));
  return eps_sub * G * G / (V * l * l);
}

DynamicLearnerState dyn_init(double G, double varepsilon, std::int64_t T,
                             Index d) {
  if (!(varepsilon > 0.0)) throw std::invalid_argument("varepsilon must be > 0");
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  DynamicLearnerState s;
  s.G = G;
  s.varepsilon = varepsilon;
  s.T = T;
  s.etas = dyn_eta_grid(G, T);
  s.per_sub_eps = varepsilon / static_cast<double>(s.etas.size());
  s.sub_w.assign(s.etas.size(), Vector::Zero(d));
  s.w = Vector::Zero(d);
  s.V = 4.0 * G * G;
  s.alpha = dyn_alpha(G, s.per_sub_eps, s.V);
  return s;
}

Vector dyn_sub_step(const Vector& w, double eta, const GradientRound& g,
                    double alpha_t, double alpha_next) {
  const double wn = w.norm();
  Vector theta;
  if (wn == 0.0) {
    theta = -g.g;
  } else {
    theta = (2.0 * std::log1p(wn / alpha_t) / (eta * wn)) * w - g.g;
  }
  const double tn = theta.norm();
  if (tn <= 1e-12) return Vector::Zero(w.size());
  const double r = std::max(tn - 2.0 * eta * g.norm * g.norm, 0.0);
  // r = 0 (movement clamp active) gives expm1(0) = 0: exactly the origin
  return (alpha_next * std::expm1(0.5 * eta * r) / tn) * theta;
}

void dyn_step(DynamicLearnerState& s, const GradientRound& g) {
  if (g.g.size() != s.w.size()) {
    throw std::invalid_argument("dyn_step: dimension mismatch");
  }
  if (g.norm > s.G * (1.0 + 1e-12)) {
    throw std::invalid_argument("dyn_step: ||g|| exceeds the Lipschitz bound G");
  }
  const double alpha_t = s.alpha;
  s.grad_sq.add(g.norm * g.norm);
  s.V = 4.0 * s.G * s.G + s.grad_sq.value();
  s.alpha = dyn_alpha(s.G, s.per_sub_eps, s.V);
  s.w.setZero();
  for (std::size_t i = 0; i < s.etas.size(); ++i) {
    s.sub_w[i] = dyn_sub_step(s.sub_w[i], s.etas[i], g, alpha_t, s.alpha);
    s.w += s.sub_w[i];
  }
  ++s.t;
}

RadialRegularizerParams dyn_sub_params(const DynamicLearnerState& s,
                                       std::size_t sub_index) {
  return RadialRegularizerParams::fixed_eta(s.alpha, s.etas.at(sub_index));
}

double dyn_bound_rhs(const DynamicLearnerState& s,
                     const ComparatorSequence& us,
                     const std::vector<GradientRound>& gs) {
  if (us.points.size() != gs.size()) {
    throw std::invalid_argument("dyn_bound_rhs: length mismatch");
  }
  const double T = static_cast<double>(gs.size());
  KahanSum gu;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    gu.add(gs[i].norm * gs[i].norm * us.points[i].norm());
  }
  return dyn_bound_terms(s.G, s.per_sub_eps, s.etas.size(), s.alpha, T,
                         us.max_norm, us.path_length, gu.value());
}

double dyn_bound_terms(double G, double per_sub_eps, std::size_t n_subs,
                       double alpha, double T, double M, double P, double gu) {
  const double L = std::max(std::log1p(9.0 * M * T * T / (4.0 * alpha)), 1.0);
  return 2.0 * per_sub_eps * G * static_cast<double>(n_subs) +
         6.0 * std::sqrt(2.0 * (M + P) * L * gu) + 4.0 * G * (M + P) * L;
}

}  // namespace olo
