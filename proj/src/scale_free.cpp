#include "olo/scale_free.hpp"

#include <cmath>
#include <stdexcept>

namespace olo {

Vector sf_project(const Vector& w, double D) {
  if (!(D >= 0.0)) throw std::invalid_argument("sf_project: D must be >= 0");
  const double wn = w.norm();
  if (wn <= D) return w;
  return w * (D / wn);
}

Vector sf_clip(const Vector& g, double h) {
  if (!(h >= 0.0)) throw std::invalid_argument("sf_clip: h must be >= 0");
  const double gn = g.norm();
  if (gn <= h) return g;
  if (h == 0.0) return Vector::Zero(g.size());
  return g * (h / gn);
}

Vector sf_surrogate_grad(const Vector& w, const Vector& g_bar, double D) {
  if (!(D >= 0.0)) {
    throw std::invalid_argument("sf_surrogate_grad: D must be >= 0");
  }
  Vector out = 0.5 * g_bar;
  const double wn = w.norm();
  if (wn > D) out += (0.5 * g_bar.norm() / wn) * w;
  return out;
}

ScaleFreeState sf_init(double eps, double k, Index d, bool allow_unstable_k) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(k >= 3.0) && !allow_unstable_k) {
    throw std::invalid_argument("k < 3 breaks the stability conditions");
  }
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  ScaleFreeState s;
  s.eps = eps;
  s.k = k;
  s.w = Vector::Zero(d);
  s.theta_tilde = Vector::Zero(d);
  const double lB = std::log(s.B_tilde);
  s.alpha_tilde = eps / (std::sqrt(s.B_tilde) * lB * lB);
  return s;
}

Vector sf_step(ScaleFreeState& s, const GradientRound& g) {
  if (g.g.size() != s.w.size()) {
    throw std::invalid_argument("sf_step: dimension mismatch");
  }
  const double D = std::sqrt(s.D_sq_accum);
  const Vector play = sf_project(s.w, D);

  const Vector g_bar = sf_clip(g.g, s.h);
  s.G_running = std::max(g.norm, s.G_running);
  const double h_next = s.G_running;

  const Vector g_tilde = sf_surrogate_grad(s.w, g_bar, D);
  const double gt_norm = g_tilde.norm();

  s.theta_tilde -= g_tilde;
  s.gtilde_sq.add(gt_norm * gt_norm);
  const double b_old = s.b_tilde;
  if (gt_norm > 0.0) s.b_tilde += gt_norm * gt_norm / (s.h * s.h);
  s.B_tilde += 4.0 * b_old;
  s.V_tilde = 4.0 * h_next * h_next + s.gtilde_sq.value();
  const double lB = std::log(s.B_tilde);
  s.alpha_tilde = s.eps / (std::sqrt(s.B_tilde) * lB * lB);

  const double tn = s.theta_tilde.norm();
  if (tn <= 1e-12) {
    s.w.setZero();
  } else {
    const double f = tn <= 2.0 * s.k * s.V_tilde / h_next
                         ? tn * tn / (4.0 * s.k * s.k * s.V_tilde)
                         : tn / (s.k * h_next) - s.V_tilde / (h_next * h_next);
    s.w = (s.alpha_tilde * std::expm1(f) / tn) * s.theta_tilde;
  }

  if (g.norm > 0.0) s.D_sq_accum += g.norm / s.G_running;
  s.h_prev = s.h;
  s.h = h_next;
  ++s.t;
  return play;
}

double sf_bound_rhs(const ScaleFreeState& s, const Vector& u,
                    const std::vector<GradientRound>& gs) {
  return sf_bound_rhs(s, u, static_cast<std::int64_t>(gs.size()));
}

double sf_bound_rhs(const ScaleFreeState& s, const Vector& u,
                    std::int64_t T_observed) {
  if (T_observed + 1 != s.t) {
    throw std::invalid_argument(
        "sf_bound_rhs: gradient count does not match rounds processed");
  }
  if (T_observed < 1) throw std::invalid_argument("sf_bound_rhs: T must be >= 1");
  const double un = u.norm();
  const double L = std::log1p(un / s.alpha_tilde);
  const double G_T = s.G_running;
  return 4.0 * s.eps * s.h_prev +
         2.0 * s.k * un *
             std::max(std::sqrt(s.V_tilde * L), s.h_prev * L) +
         G_T * un * un * un + G_T * un + G_T * std::sqrt(s.D_sq_accum);
}

}  // namespace olo
