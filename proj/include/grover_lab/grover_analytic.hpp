#pragma once

// Closed-form Grover dynamics at arbitrary N. G_x rotates the x-s plane by
// theta = arccos(1 - 2/N), so rho_C(t) has one eigenvalue cos^2(theta t) on
// |s> and sin^2(theta t)/(N-1) on its orthogonal complement.

#include <cstddef>
#include <vector>

namespace grover_lab {

struct ClosedFormPoint {
  std::size_t n = 0;
  double t = 0.0;             // oracle calls; integer t is the step index k
  double lambda1 = 0.0;       // multiplicity 1
  double lambda2 = 0.0;       // multiplicity n - 1
  double entropy_bits = 0.0;
  double sup_norm = 0.0;
  double success_prob = 0.0;  // P(Y = X), computational-basis measurement
};

/// theta = arccos(1 - 2/n), in (0, pi].
double grover_angle(std::size_t n);

/// pi/theta, the period of the entropy curve.
double entropy_period(std::size_t n);

/// ceil(pi/theta): integer steps covering one full period.
std::size_t period_steps(std::size_t n);

/// Evaluates the closed forms at real t >= 0.
ClosedFormPoint closed_form_point(std::size_t n, double t);

/// floor((pi/4) sqrt(n)).
std::size_t optimal_iterations(std::size_t n);

/// Samples at t = 0, dt, 2 dt, ... up to t_max inclusive.
std::vector<ClosedFormPoint> entropy_curve(std::size_t n, double t_max, double dt);

}  // namespace grover_lab
