#include "olo/rng.hpp"

#include <cmath>
#include <numbers>

namespace olo {

double CounterRng::next_gaussian() {
  const double u1 = next_unit_open();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace olo
