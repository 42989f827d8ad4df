#include "olo/regularizer.hpp"

#include "olo/dawson.hpp"

#include <cmath>
#include <stdexcept>

namespace olo {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_radius(double x) {
  require(x >= 0.0 && !std::isnan(x), "radius must be >= 0");
}

// s - D(s) for s = sqrt(F) >= 0, evaluated without cancellation near 0
// (the two terms agree to O(s^3)): for small s use the tail of the Dawson
// Maclaurin series, s - D(s) = (2/3)s^3 - (4/15)s^5 + (8/105)s^7 - ...
double sqrt_log_minus_dawson(double s) {
  if (s >= 0.25) return s - dawson(s);
  const double s2 = s * s;
  double term = 2.0 * s2 * s / 3.0;  // n = 1 term
  double sum = term;
  for (int n = 1; n < 20; ++n) {
    term *= -2.0 * s2 / (2.0 * n + 3.0);
    const double prev = sum;
    sum += term;
    if (sum == prev) break;
  }
  return sum;
}

// Integral_0^x sqrt(F(z)) dz = (x + alpha) * (sqrt(F) - D(sqrt(F))).
double integral_sqrt_log(double alpha, double x, double F) {
  return (x + alpha) * sqrt_log_minus_dawson(std::sqrt(F));
}

// Integral_0^x F(z) dz = (x + alpha) * F(x) - x.
double integral_log(double alpha, double x, double F) {
  return (x + alpha) * F - x;
}

}  // namespace

RadialRegularizerParams RadialRegularizerParams::capped_min(double k,
                                                            double alpha,
                                                            double V,
                                                            double eta_cap) {
  require(k > 0.0, "k must be > 0");
  require(alpha > 0.0, "alpha must be > 0");
  require(V > 0.0, "V must be > 0");
  require(eta_cap > 0.0, "eta_cap must be > 0");
  RadialRegularizerParams p;
  p.mode = RegularizerMode::CappedMin;
  p.k = k;
  p.alpha = alpha;
  p.V = V;
  p.eta_cap = eta_cap;
  return p;
}

RadialRegularizerParams RadialRegularizerParams::fixed_eta(double alpha,
                                                           double eta) {
  require(alpha > 0.0, "alpha must be > 0");
  require(eta > 0.0, "eta must be > 0");
  RadialRegularizerParams p;
  p.mode = RegularizerMode::FixedEta;
  p.alpha = alpha;
  p.eta = eta;
  return p;
}

double shifted_log(const RadialRegularizerParams& p, double x) {
  check_radius(x);
  return std::log1p(x / p.alpha);
}

double psi_prime(const RadialRegularizerParams& p, double x) {
  const double F = shifted_log(p, x);
  if (p.mode == RegularizerMode::FixedEta) {
    return 2.0 * F / p.eta;
  }
  const double Fb = p.V * p.eta_cap * p.eta_cap;  // branch switch in F
  if (F <= Fb) {
    return 2.0 * p.k * std::sqrt(p.V * F);
  }
  const double G = 1.0 / p.eta_cap;
  return p.k * G * F + p.k * p.V / G;
}

double psi_second(const RadialRegularizerParams& p, double x) {
  const double F = shifted_log(p, x);
  if (p.mode == RegularizerMode::FixedEta) {
    return 2.0 / (p.eta * (x + p.alpha));
  }
  const double Fb = p.V * p.eta_cap * p.eta_cap;
  if (F <= Fb) {
    return p.k * std::sqrt(p.V) / ((x + p.alpha) * std::sqrt(F));
  }
  const double G = 1.0 / p.eta_cap;
  return p.k * G / (x + p.alpha);
}

double psi_third(const RadialRegularizerParams& p, double x) {
  const double F = shifted_log(p, x);
  const double xa = x + p.alpha;
  if (p.mode == RegularizerMode::FixedEta) {
    return -2.0 / (p.eta * xa * xa);
  }
  const double Fb = p.V * p.eta_cap * p.eta_cap;
  if (F <= Fb) {
    return -p.k * std::sqrt(p.V) * (1.0 + 2.0 * F) /
           (2.0 * xa * xa * F * std::sqrt(F));
  }
  const double G = 1.0 / p.eta_cap;
  return -p.k * G / (xa * xa);
}

double psi_value(const RadialRegularizerParams& p, double x) {
  const double F = shifted_log(p, x);
  if (p.mode == RegularizerMode::FixedEta) {
    return (2.0 / p.eta) * integral_log(p.alpha, x, F);
  }
  const double Fb = p.V * p.eta_cap * p.eta_cap;
  const double sV = std::sqrt(p.V);
  if (F <= Fb) {
    return 2.0 * p.k * sV * integral_sqrt_log(p.alpha, x, F);
  }
  // Past the cap the integrand is k*(G*F + V/G); split at the switch radius
  // x_b (finite here because F(x) > Fb and x is representable).
  const double xb = p.alpha * std::expm1(Fb);
  const double G = 1.0 / p.eta_cap;
  const double head = 2.0 * p.k * sV * integral_sqrt_log(p.alpha, xb, Fb);
  const double tail =
      p.k * G * (integral_log(p.alpha, x, F) - integral_log(p.alpha, xb, Fb)) +
      (p.k * p.V / G) * (x - xb);
  return head + tail;
}

double psi_prime_inverse(const RadialRegularizerParams& p, double r) {
  require(r >= 0.0 && !std::isnan(r), "dual radius must be >= 0");
  if (p.mode == RegularizerMode::FixedEta) {
    return p.alpha * std::expm1(0.5 * p.eta * r);
  }
  const double r_switch = 2.0 * p.k * p.V * p.eta_cap;  // Psi' at the switch
  double F;
  if (r <= r_switch) {
    F = r * r / (4.0 * p.k * p.k * p.V);
  } else {
    F = r * p.eta_cap / p.k - p.V * p.eta_cap * p.eta_cap;
  }
  return p.alpha * std::expm1(F);
}

Vector grad_psi(const RadialRegularizerParams& p, const Vector& w) {
  const double n = w.norm();
  if (n == 0.0) return Vector::Zero(w.size());
  return (psi_prime(p, n) / n) * w;
}

double bregman(const RadialRegularizerParams& p, const Vector& w,
               const Vector& v) {
  const double vn = v.norm();
  double linear = 0.0;
  if (vn > 0.0) {
    linear = (psi_prime(p, vn) / vn) * v.dot(w - v);
  }
  return psi_value(p, w.norm()) - psi_value(p, vn) - linear;
}

double eta_fn_prime(const RadialRegularizerParams& p, double x) {
  if (p.mode == RegularizerMode::FixedEta) {
    check_radius(x);
    return p.eta;
  }
  const double F = shifted_log(p, x);
  return std::min(std::sqrt(F / p.V), p.eta_cap);
}

double eta_fn(const RadialRegularizerParams& p, double x) {
  if (p.mode == RegularizerMode::FixedEta) {
    check_radius(x);
    return p.eta * x;
  }
  const double F = shifted_log(p, x);
  const double Fb = p.V * p.eta_cap * p.eta_cap;
  const double isv = 1.0 / std::sqrt(p.V);
  if (F <= Fb) {
    return isv * integral_sqrt_log(p.alpha, x, F);
  }
  const double xb = p.alpha * std::expm1(Fb);
  return isv * integral_sqrt_log(p.alpha, xb, Fb) + p.eta_cap * (x - xb);
}

StabilityReport check_stability_conditions(const RadialRegularizerParams& p,
                                           double x0,
                                           const std::vector<double>& grid) {
  StabilityReport rep;
  auto fail = [&](int cond, double x, double lhs, double rhs) {
    rep.pass = false;
    rep.condition = cond;
    rep.x = x;
    rep.lhs = lhs;
    rep.rhs = rhs;
  };
  for (double x : grid) {
    const double d1 = psi_prime(p, x);
    if (!(d1 >= 0.0)) {
      fail(1, x, d1, 0.0);
      return rep;
    }
    const double d2 = psi_second(p, x);
    if (!(d2 >= 0.0)) {
      fail(2, x, d2, 0.0);
      return rep;
    }
    const double d3 = psi_third(p, x);
    if (!(d3 <= 0.0)) {
      fail(3, x, d3, 0.0);
      return rep;
    }
    if (x > x0) {
      // Relative slack covers the FixedEta case where the two sides are
      // equal in exact arithmetic.
      const double lhs = std::abs(d3);
      const double rhs = 0.5 * eta_fn_prime(p, x) * d2 * d2;
      if (!(lhs <= rhs * (1.0 + 1e-9))) {
        fail(4, x, lhs, rhs);
        return rep;
      }
    }
  }
  return rep;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  require(lo > 0.0 && hi > lo && n >= 2, "log_grid: need 0 < lo < hi, n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (n - 1.0));
  }
  return g;
}

}  // namespace olo
