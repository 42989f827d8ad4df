#include "olo/implicit_optimistic.hpp"

#include <cmath>
#include <stdexcept>

namespace olo {

HintFunction HintFunction::linear(Vector g_hat) {
  HintFunction h;
  h.g_hat = std::move(g_hat);
  return h;
}

HintFunction HintFunction::general(Oracle oracle) {
  HintFunction h;
  h.oracle = std::move(oracle);
  return h;
}

HintFunction HintFunction::none(Index d) { return linear(Vector::Zero(d)); }

double imp_alpha(double G, double eps, double V) {
  const double l = std::log(V / (G * G));
  return eps * G / (std::sqrt(V) * l * l);
}

ImplicitState imp_init(double G, double eps, double k, Index d,
                       bool allow_unstable_k) {
  if (!(G > 0.0)) throw std::invalid_argument("G must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(k >= 3.0) && !allow_unstable_k) {
    throw std::invalid_argument("k < 3 breaks the stability conditions");
  }
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  ImplicitState s;
  s.G = G;
  s.eps = eps;
  s.k = k;
  s.eta_cap = 1.0 / (2.0 * G);
  s.x = Vector::Zero(d);
  s.w = Vector::Zero(d);
  s.theta = Vector::Zero(d);
  s.h_hat = Vector::Zero(d);
  s.V_hat = 16.0 * G * G;
  s.alpha_hat = imp_alpha(G, eps, s.V_hat);
  return s;
}

RadialRegularizerParams imp_params(const ImplicitState& s) {
  return RadialRegularizerParams::capped_min(s.k, s.alpha_hat, s.V_hat,
                                             s.eta_cap);
}

namespace {

// closed-form radial solution of argmin -<dual, v> + psi(v)
Vector dual_solve(const RadialRegularizerParams& psi, const Vector& dual) {
  const double tn = dual.norm();
  if (tn <= 1e-12) return Vector::Zero(dual.size());
  return (psi_prime_inverse(psi, tn) / tn) * dual;
}

}  // namespace

void imp_x_step(ImplicitState& s, const GradientRound& g) {
  if (g.g.size() != s.x.size()) {
    throw std::invalid_argument("imp_x_step: dimension mismatch");
  }
  if (g.norm > s.G * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "imp_x_step: ||g|| exceeds the Lipschitz bound G");
  }
  const double diff = (g.g - s.h_hat).norm();
  s.diff_sq.add(diff * diff);
  s.V_hat = 16.0 * s.G * s.G + s.diff_sq.value();
  s.alpha_hat = imp_alpha(s.G, s.eps, s.V_hat);
  s.theta -= g.g;
  s.x = dual_solve(imp_params(s), s.theta);
  ++s.t;
}

void imp_optimistic_step(ImplicitState& s, const HintFunction& hint) {
  const auto psi = imp_params(s);
  if (hint.is_linear()) {
    const Vector& g_hat = *hint.g_hat;
    if (g_hat.size() != s.x.size()) {
      throw std::invalid_argument("imp_optimistic_step: dimension mismatch");
    }
    if (g_hat.norm() > s.G * (1.0 + 1e-12)) {
      throw std::invalid_argument(
          "imp_optimistic_step: hint gradient exceeds G");
    }
    s.w = dual_solve(psi, s.theta - g_hat);
    s.h_hat = g_hat;
    return;
  }
  if (!hint.oracle) {
    throw std::invalid_argument("imp_optimistic_step: empty hint");
  }

  // First-order condition: grad lhat(w) + grad psi(w) - grad psi(x) = 0.
  const Vector target = grad_psi(psi, s.x);
  const double tol = 1e-10 * (1.0 + target.norm());
  auto residual = [&](const Vector& v) {
    return (hint.oracle(v).second + grad_psi(psi, v) - target).norm();
  };

  Vector w = s.x;
  double res = residual(w);
  double damp = 1.0;
  bool converged = res <= tol;
  for (int iter = 0; iter < 200 && !converged; ++iter) {
    const Vector candidate = dual_solve(psi, target - hint.oracle(w).second);
    const Vector proposal = w + damp * (candidate - w);
    const double prop_res = residual(proposal);
    if (prop_res <= res) {
      w = proposal;
      res = prop_res;
    } else {
      damp *= 0.5;  // overshoot: reject and soften the step
    }
    converged = res <= tol;
  }
  if (!converged) {
    throw std::runtime_error(
        "imp_optimistic_step: fixed-point solver did not converge in 200 "
        "iterations (is the hint convex with Lipschitz constant <= G?)");
  }
  s.w = w;
  s.h_hat = target - grad_psi(psi, w);
}

double imp_bound_rhs(const ImplicitState& s, const Vector& u) {
  const double un = u.norm();
  const double L = std::log1p(un / s.alpha_hat);
  return 4.0 * s.eps * s.G +
         2.0 * s.k * un * std::max(std::sqrt(s.V_hat * L), 2.0 * s.G * L);
}

}  // namespace olo
