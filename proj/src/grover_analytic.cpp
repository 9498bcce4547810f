#include "grover_lab/grover_analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "grover_lab/dense_sim.hpp"
#include "grover_lab/errors.hpp"

namespace grover_lab {

double grover_angle(std::size_t n) {
  require_dimension(n);
  return std::acos(1.0 - 2.0 / static_cast<double>(n));
}

double entropy_period(std::size_t n) { return std::numbers::pi / grover_angle(n); }

std::size_t period_steps(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(entropy_period(n)));
}

ClosedFormPoint closed_form_point(std::size_t n, double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be finite and non-negative");
  const double theta = grover_angle(n);
  const double c = std::cos(theta * t);
  const double s = std::sin(theta * t);
  const double cos2 = c * c;
  const double sin2 = s * s;

  ClosedFormPoint p;
  p.n = n;
  p.t = t;
  p.lambda1 = cos2;
  p.lambda2 = sin2 / static_cast<double>(n - 1);
  // (n-1) lambda2 log lambda2 = sin^2 log lambda2.
  double entropy = 0.0;
  if (cos2 > 0.0) entropy -= cos2 * std::log2(cos2);
  if (p.lambda2 > 0.0) entropy -= sin2 * std::log2(p.lambda2);
  p.entropy_bits = std::max(entropy, 0.0);
  p.sup_norm = std::max(p.lambda1, p.lambda2);
  const double amp = std::sin((2.0 * t + 1.0) * theta / 2.0);
  p.success_prob = amp * amp;
  return p;
}

std::size_t optimal_iterations(std::size_t n) {
  require_dimension(n);
  return static_cast<std::size_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n))));
}

std::vector<ClosedFormPoint> entropy_curve(std::size_t n, double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive");
  require_dimension(n);
  // Relative slack so that t_max = m * dt keeps its last sample.
  const auto count = static_cast<std::size_t>(std::floor(t_max / dt * (1.0 + 1e-12))) + 1;
  std::vector<ClosedFormPoint> curve;
  curve.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    curve.push_back(closed_form_point(n, static_cast<double>(i) * dt));
  }
  return curve;
}

}  // namespace grover_lab
