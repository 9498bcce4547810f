#pragma once

// Continuous-time oracle: O_x(tau) = exp(-i tau H_x) with H_x = -pi |x><x|,
// so O_x(1) = O_x. Within step k0 the conditionals evolve as
// psi_x(k0 + tau) = O_x(tau) psi_x(k0) and rho_C(t) traces eigenvalue
// branches whose slopes are <u| d rho_C/dt |u>.

#include <cstddef>
#include <string>
#include <vector>

#include "grover_lab/dense_sim.hpp"

namespace grover_lab {

inline constexpr std::size_t kDefaultTauGrid = 64;

/// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double kDegeneracyTolerance = 1e-8;

/// Applies O_x(tau). Throws DomainError unless 0 <= tau <= 1.
ConditionalState fractional_oracle(const ConditionalState& state, double tau);

Ensemble fractional_ensemble(const Ensemble& states_at_k0, double tau);

/// rho_C(k0 + tau) built from the conditionals at integer time k0.
DensityMatrix flow_rho(const Ensemble& states_at_k0, double tau);

/// d rho_C/dt = -(i/N) sum_x [H_x, rho_x(t)] for the conditionals at t.
ComplexMatrix rho_time_derivative(const Ensemble& states);

/// First-order eigenvalue slopes. Inside a degenerate cluster, rho_dot is
/// diagonalized on the cluster subspace and the eigenvectors are rotated to
/// that basis, so derivatives[i] = <u_i| rho_dot |u_i> holds for every i.
struct EigenDerivatives {
  std::vector<double> eigenvalues;  // descending
  std::vector<double> derivatives;  // aligned with eigenvalues
  ComplexMatrix eigenvectors;       // column i pairs with eigenvalues[i]
  bool flagged = false;
  std::string flag_reason;
};

EigenDerivatives eigenvalue_derivative(const DensityMatrix& rho, const ComplexMatrix& rho_dot,
                                       double cluster_tolerance = kDegeneracyTolerance);

/// 2 pi / sqrt(n).
double drift_bound(std::size_t n);

struct FlowSample {
  double t = 0.0;
  std::vector<double> eigenvalues;    // descending
  std::vector<double> d_lambda_dt;    // aligned with eigenvalues
  std::vector<std::size_t> branch;    // tracked branch label of each eigenvalue
  bool flagged = false;
};

struct DriftReport {
  std::size_t n = 0;
  std::size_t k_max = 0;
  std::size_t grid = 0;
  double bound = 0.0;                  // 2 pi / sqrt(n)
  double delta_observed = 0.0;         // max_k |mu_{k+1} - mu_k|
  double max_abs_derivative = 0.0;
  double max_derivative_excess = 0.0;  // max |dl/dt| - bound (<= 1e-8 required)
  double max_sharpened_excess = 0.0;   // max |dl/dt| - bound sqrt(lambda)
  double max_trace_rate = 0.0;         // max |sum dl/dt|
  std::size_t flagged_samples = 0;
  std::vector<double> sup_norms;       // mu_k at k = 0..k_max
  std::vector<FlowSample> samples;

  double margin() const { return bound - delta_observed; }

  /// Every Lemma inequality holds at its tolerance.
  bool passed() const;
};

/// Runs k_max Grover steps, sampling each oracle call on `grid` points of
/// tau in [0, 1) plus the endpoint t = k_max. Throws DeskScaleExceeded for
/// n above the desk-scale limit and InvalidDimension for grid < 2.
DriftReport drift_audit(std::size_t n, std::size_t k_max, std::size_t grid = kDefaultTauGrid);

}  // namespace grover_lab
