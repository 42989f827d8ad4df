// Dawson's integral D(x) = exp(-x^2) * Integral_0^x exp(t^2) dt.
//
// Needed in closed form for the radial potential: with F(x) = log(x/a + 1),
//   Integral_0^x sqrt(F(z)) dz = (x + a) * (sqrt(F(x)) - D(sqrt(F(x)))),
// which follows from substituting z = a(e^{s^2} - 1) and the identity
// D'(s) = 1 - 2 s D(s).
#pragma once

namespace olo {

/// Dawson's integral, accurate to ~2e-16 relative over the real line.
/// Odd: D(-x) = -D(x); D(x) ~ 1/(2x) as x -> infinity.
double dawson(double x);

}  // namespace olo
