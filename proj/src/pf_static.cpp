#include "olo/pf_static.hpp"

#include <cmath>
#include <stdexcept>

namespace olo {

double pf_alpha(double G, double eps, double V) {
  const double l = std::log(V / (G * G));
  return eps * G / (std::sqrt(V) * l * l);
}

PfStaticState pf_init(double G, double eps, double k, Index d,
                      bool allow_unstable_k) {
  if (!(G > 0.0)) throw std::invalid_argument("G must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(k >= 3.0) && !allow_unstable_k) {
    throw std::invalid_argument("k < 3 breaks the stability conditions");
  }
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  PfStaticState s;
  s.G = G;
  s.eps = eps;
  s.k = k;
  s.w = Vector::Zero(d);
  s.theta = Vector::Zero(d);
  s.V = 4.0 * G * G;
  s.alpha = pf_alpha(G, eps, s.V);
  return s;
}

void pf_step(PfStaticState& s, const GradientRound& g) {
  if (g.g.size() != s.w.size()) {
    throw std::invalid_argument("pf_step: dimension mismatch");
  }
  if (g.norm > s.G * (1.0 + 1e-12)) {
    throw std::invalid_argument("pf_step: ||g|| exceeds the Lipschitz bound G");
  }
  s.theta -= g.g;
  s.grad_sq.add(g.norm * g.norm);
  s.V = 4.0 * s.G * s.G + s.grad_sq.value();
  s.alpha = pf_alpha(s.G, s.eps, s.V);

  const double tn = s.theta.norm();
  if (tn <= 1e-12) {
    s.w.setZero();
  } else {
    const double f = tn <= 2.0 * s.k * s.V / s.G
                         ? tn * tn / (4.0 * s.k * s.k * s.V)
                         : tn / (s.k * s.G) - s.V / (s.G * s.G);
    s.w = (s.alpha * std::expm1(f) / tn) * s.theta;
  }
  ++s.t;
}

RadialRegularizerParams pf_params(const PfStaticState& s) {
  return RadialRegularizerParams::capped_min(s.k, s.alpha, s.V, 1.0 / s.G);
}

double pf_bound_rhs(const PfStaticState& s, const Vector& u) {
  const double un = u.norm();
  const double F = std::log1p(un / s.alpha);
  return 4.0 * s.eps * s.G +
         2.0 * s.k * un * std::max(std::sqrt(s.V * F), s.G * F);
}

}  // namespace olo
