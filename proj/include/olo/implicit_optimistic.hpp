// Implicit/optimistic learner: mirror descent on an anchor sequence x_t with
// an optimistic half-step. When gradient g_t arrives the anchor moves by
//   x_{t+1} = argmin_x <g_t, x> + D_{psi_t}(x | x_t) + Delta_t(x),
// and the next play solves
//   w_{t+1} = argmin_w lhat_{t+1}(w) + D_{psi_{t+1}}(w | x_{t+1}),
// where lhat_{t+1} is an arbitrary guess at the next loss. The regularizer
// statistic only charges for hint errors:
//   V_hat_t = 16 G^2 + sum ||grad l_s(w_s) - grad lhat_s(w_s)||^2,
// with alpha_hat_t = eps G / (sqrt(V_hat) log^2(V_hat/G^2)) and the halved
// step cap eta_cap = 1/(2G). Perfect hints freeze V_hat, making the regret
// bound T-independent (O(1) regret on fixed losses).
#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "olo/core.hpp"
#include "olo/regularizer.hpp"

namespace olo {

/// A guess at the next loss function. Linear hints carry the constant
/// gradient and admit a closed-form optimistic step; general hints expose a
/// deterministic oracle w -> (value, gradient) with Lipschitz constant <= G
/// and are solved by damped fixed-point iteration.
struct HintFunction {
  using Oracle = std::function<std::pair<double, Vector>(const Vector&)>;

  static HintFunction linear(Vector g_hat);
  static HintFunction general(Oracle oracle);
  /// The zero loss: linear with a zero gradient.
  static HintFunction none(Index d);

  bool is_linear() const { return g_hat.has_value(); }

  std::optional<Vector> g_hat;  // set iff linear
  Oracle oracle;                // set iff general
};

struct ImplicitState {
  std::int64_t t = 1;  // current round; w is the pending play w_t
  Vector x;            // mirror-descent anchor x_t
  Vector w;            // played iterate w_t
  Vector theta;        // dual of the anchor: -sum of observed gradients
  Vector h_hat;        // hint gradient recorded at w_t (drives V_hat)
  double V_hat = 0.0;
  double alpha_hat = 0.0;
  double G = 1.0;
  double eps = 1.0;
  double k = 3.0;
  double eta_cap = 0.5;  // 1/(2G)
  KahanSum diff_sq;      // compensated sum of ||g - h_hat||^2
};

/// alpha(V) = eps * G / (sqrt(V) * log^2(V / G^2)).
double imp_alpha(double G, double eps, double V);

/// Initial state: x_1 = w_1 = 0, V_hat_1 = 16 G^2, hint gradient 0 (the
/// first play can be re-aimed by imp_optimistic_step before round 1).
ImplicitState imp_init(double G, double eps, double k, Index d,
                       bool allow_unstable_k = false);

/// Regularizer psi_t of the current state:
/// CappedMin(k, alpha_hat_t, V_hat_t, eta_cap = 1/(2G)).
RadialRegularizerParams imp_params(const ImplicitState& s);

/// Observes g_t = grad l_t(w_t), charges ||g_t - h_hat_t||^2 to V_hat, and
/// moves the anchor to x_{t+1} (closed form along the dual direction).
/// Rejects ||g|| > G. Does not change the play; call imp_optimistic_step
/// next to produce w_{t+1}.
void imp_x_step(ImplicitState& s, const GradientRound& g);

/// Solves w = argmin lhat(w) + D_{psi}(w | x) for the current anchor and
/// records the hint gradient at the solution. Linear hints use the closed
/// form; general hints run a damped fixed-point iteration on the first-order
/// condition grad lhat(w) + grad psi(w) - grad psi(x) = 0, accepting when the
/// residual is <= 1e-10 * (1 + ||grad psi(x)||) and throwing std::runtime_error
/// after 200 iterations rather than returning a silent approximation.
void imp_optimistic_step(ImplicitState& s, const HintFunction& hint);

/// Regret bound against comparator u after T rounds (the state then holds
/// V_hat_{T+1}, alpha_hat_{T+1}):
///   4 eps G + 2 k ||u|| max{ sqrt(V_hat L), 2 G L },  L = log(||u||/alpha + 1).
double imp_bound_rhs(const ImplicitState& s, const Vector& u);

}  // namespace olo
