#include "olo/verification.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace olo {
namespace {

double psi_value_opt(const std::optional<RadialRegularizerParams>& p,
                     double x) {
  return p ? psi_value(*p, x) : 0.0;
}

double bregman_opt(const std::optional<RadialRegularizerParams>& p,
                   const Vector& w, const Vector& v) {
  return p ? bregman(*p, w, v) : 0.0;
}

Vector grad_psi_opt(const std::optional<RadialRegularizerParams>& p,
                    const Vector& w) {
  return p ? grad_psi(*p, w) : Vector::Zero(w.size());
}

// phi_t(w) = [psi_{t+1}(w) - psi_t(w)] + lambda * ||w||, evaluated at radius.
double phi_at(const TraceRound& r, const Vector& w) {
  const double n = w.norm();
  return psi_value(r.psi_next, n) - psi_value_opt(r.psi, n) + r.lambda * n;
}

double delta_term(const TraceRound& r) {
  return r.g.g.dot(r.w - r.w_next) - bregman_opt(r.psi, r.w_next, r.w) -
         phi_at(r, r.w_next);
}

void check_trace_shapes(const RunTrace& trace,
                        const ComparatorSequence* comparators) {
  if (comparators && comparators->points.size() != trace.size()) {
    throw std::invalid_argument("trace/comparator length mismatch");
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRound& r = trace[i];
    if (r.w.size() != r.g.g.size() || r.w_next.size() != r.g.g.size() ||
        (comparators && comparators->points[i].size() != r.g.g.size())) {
      throw std::invalid_argument("trace dimension mismatch");
    }
  }
}

}  // namespace

std::vector<RoundDiagnostics> compute_diagnostics(
    const RunTrace& trace, const ComparatorSequence* comparators,
    bool with_strong_terms) {
  check_trace_shapes(trace, comparators);
  std::vector<RoundDiagnostics> out;
  out.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRound& r = trace[i];
    RoundDiagnostics d;
    d.t = static_cast<std::int64_t>(i) + 1;
    d.delta = delta_term(r);
    if (comparators) {
      const Vector& u = comparators->points[i];
      d.phi_at_u = phi_at(r, u);
      if (i + 1 < trace.size()) {
        d.rho = grad_psi(r.psi_next, r.w_next)
                    .dot(u - comparators->points[i + 1]);
      }
      if (with_strong_terms) {
        StrongTerms st;
        if (i >= 1) {
          st.P = grad_psi_opt(r.psi, r.w).dot(comparators->points[i - 1] - u);
        }
        // Optimality-condition subgradient of the ||w|| penalty at w_{t+1}:
        // v* = grad psi_t(w_t) - g_t - grad psi_{t+1}(w_{t+1}). For a linear
        // loss the loss divergences vanish and
        //   L_t = -Dhat_{varphi_t}(u_t, w_{t+1}, v*)
        //       = -(lambda ||u|| - lambda ||w'|| - <v*, u - w'>).
        const Vector vstar =
            grad_psi_opt(r.psi, r.w) - r.g.g - grad_psi(r.psi_next, r.w_next);
        st.L = -(r.lambda * u.norm() - r.lambda * r.w_next.norm() -
                 vstar.dot(u - r.w_next));
        d.strong = st;
      }
    }
    out.push_back(d);
  }
  return out;
}

CheckReport check_centered_md(const RunTrace& trace,
                              const ComparatorSequence& comparators,
                              double slack_per_round) {
  check_trace_shapes(trace, &comparators);
  CheckReport rep;
  rep.what = "centered_md";
  KahanSum regret, delta_sum, rho_sum, phi_sum;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRound& r = trace[i];
    const Vector& u = comparators.points[i];
    regret.add(r.g.g.dot(r.w - u));
    delta_sum.add(delta_term(r));
    phi_sum.add(phi_at(r, u));
    // prefix bound at horizon t = i+1 (rho_sum holds sum_{s<t} rho_s)
    const double lhs = regret.value();
    const double rhs = psi_value(r.psi_next, u.norm()) + phi_sum.value() +
                       rho_sum.value() + delta_sum.value() +
                       slack_per_round * static_cast<double>(i + 1);
    if (lhs > rhs && rep.pass) {
      rep.pass = false;
      rep.lhs = lhs;
      rep.rhs = rhs;
      rep.witness_t = static_cast<std::int64_t>(i) + 1;
    }
    if (i + 1 < trace.size()) {
      rho_sum.add(grad_psi(r.psi_next, r.w_next)
                      .dot(u - comparators.points[i + 1]));
    }
    if (i + 1 == trace.size() && rep.pass) {
      rep.lhs = lhs;
      rep.rhs = rhs;
    }
  }
  return rep;
}

CheckReport check_strong_decomposition(const RunTrace& trace,
                                       const ComparatorSequence& comparators,
                                       double tol) {
  auto diags = compute_diagnostics(trace, &comparators, true);
  CheckReport rep;
  rep.what = "strong_decomposition";
  if (trace.empty()) return rep;

  KahanSum regret, scale;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double inst = trace[i].g.g.dot(trace[i].w - comparators.points[i]);
    regret.add(inst);
    scale.add(std::abs(inst));
  }
  const TraceRound& last = trace.back();
  const Vector& uT = comparators.points.back();
  KahanSum rhs;
  rhs.add(psi_value(last.psi_next, uT.norm()));  // D_{psi_{T+1}}(u_T | 0)
  rhs.add(-bregman(last.psi_next, uT, last.w_next));
  for (std::size_t i = 0; i < trace.size(); ++i) {
    rhs.add(trace[i].lambda * comparators.points[i].norm());  // varphi_t(u_t)
    rhs.add(diags[i].delta);
    rhs.add(diags[i].strong->P);
    rhs.add(diags[i].strong->L);
  }
  rep.lhs = regret.value();
  rep.rhs = rhs.value();
  rep.pass = std::abs(rep.lhs - rep.rhs) <= tol * (1.0 + scale.value());
  return rep;
}

CheckReport check_stability_lemma(const RunTrace& trace, X0Kind x0kind,
                                  double slack) {
  check_trace_shapes(trace, nullptr);
  CheckReport rep;
  rep.what = "stability";
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRound& r = trace[i];
    if (!r.psi) continue;  // degenerate psi_t = 0: nothing to certify
    const double gsq = r.g.norm * r.g.norm;
    const double deltahat = r.g.g.dot(r.w - r.w_next) -
                            bregman(*r.psi, r.w_next, r.w) -
                            eta_fn(*r.psi, r.w_next.norm()) * gsq;
    const double x0 =
        x0kind == X0Kind::AlphaEMinusOne ? r.psi->alpha * std::expm1(1.0) : 0.0;
    const double bound = 2.0 * gsq / psi_second(*r.psi, x0);
    if (deltahat > bound + slack) {
      rep.pass = false;
      rep.lhs = deltahat;
      rep.rhs = bound;
      rep.witness_t = static_cast<std::int64_t>(i) + 1;
      return rep;
    }
    // On success, report the tightest round (the pair with minimal margin),
    // so lhs and rhs always refer to the same comparison.
    if (bound - deltahat < min_margin) {
      min_margin = bound - deltahat;
      rep.lhs = deltahat;
      rep.rhs = bound;
    }
  }
  return rep;
}

Vector brute_force_update(const std::optional<RadialRegularizerParams>& psi,
                          const RadialRegularizerParams& psi_next,
                          double lambda, const Vector& w, const Vector& g) {
  const Vector dual = grad_psi_opt(psi, w) - g;
  const double dn = dual.norm();
  if (dn == 0.0) return Vector::Zero(w.size());

  // 1-D objective along the dual ray (constants dropped):
  //   h(x) = -dn * x + Psi_{t+1}(x) + lambda * x.
  auto h = [&](double x) {
    return (lambda - dn) * x + psi_value(psi_next, x);
  };
  auto hprime = [&](double x) {
    return lambda - dn + psi_prime(psi_next, x);
  };

  if (hprime(0.0) >= 0.0) return Vector::Zero(w.size());
  double hi = 1.0;
  while (hprime(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e300) {
      throw std::runtime_error(
          "brute_force_update: bracketing failure (derivative stays negative)");
    }
  }
  double lo = 0.0;
  while (hi - lo > 1e-12 * (1.0 + hi)) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    const double h1 = h(m1), h2 = h(m2);
    if (h1 < h2) {
      hi = m2;
    } else if (h2 < h1) {
      lo = m1;
    } else {  // flat at double precision: shrink both ends (convex h)
      lo = m1;
      hi = m2;
    }
  }
  const double x = 0.5 * (lo + hi);
  return (x / dn) * dual;
}

IntegralLemmasReport check_integral_lemmas(const std::vector<GradientRound>& gs,
                                           double G, double slack) {
  if (!(G > 0.0)) throw std::invalid_argument("G must be > 0");
  IntegralLemmasReport rep;
  KahanSum log_sum, sqrt_sum, energy;
  double V_pre = 4.0 * G * G;  // V_t = 4G^2 + ||g||^2_{1:t-1}
  for (const GradientRound& r : gs) {
    if (r.norm > G * (1.0 + 1e-12)) {
      throw std::invalid_argument("check_integral_lemmas: ||g_t|| > G");
    }
    const double gsq = r.norm * r.norm;
    const double l = std::log(V_pre / (G * G));
    log_sum.add(gsq / (V_pre * l * l));
    V_pre += gsq;

    energy.add(gsq);
    const double V_post = energy.value();  // ||g||^2_{1:t}
    if (V_post > 0.0) sqrt_sum.add(gsq / std::sqrt(V_post));
  }
  rep.log_sum = log_sum.value();
  rep.log_bound = 2.0;
  rep.sqrt_sum = sqrt_sum.value();
  rep.sqrt_bound = 2.0 * std::sqrt(energy.value());
  rep.pass = rep.log_sum <= rep.log_bound + slack &&
             rep.sqrt_sum <= rep.sqrt_bound + slack;
  return rep;
}

CheckReport check_alpha_sum_lemma(const std::vector<double>& alphas,
                                  const std::vector<double>& gtilde_norms,
                                  const std::vector<double>& V_tildes,
                                  double h_T, double eps,
                                  double slack_per_round) {
  if (alphas.size() != gtilde_norms.size() ||
      alphas.size() != V_tildes.size()) {
    throw std::invalid_argument("check_alpha_sum_lemma: length mismatch");
  }
  CheckReport rep;
  rep.what = "alpha_sum";
  KahanSum sum;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (V_tildes[i] <= 0.0) continue;  // forced gtilde = 0 round
    sum.add(alphas[i] * gtilde_norms[i] * gtilde_norms[i] /
            std::sqrt(V_tildes[i]));
  }
  rep.lhs = sum.value();
  rep.rhs = 2.0 * eps * h_T +
            slack_per_round * static_cast<double>(alphas.size());
  rep.pass = rep.lhs <= rep.rhs;
  return rep;
}

}  // namespace olo
