#include "grover_lab/oracle_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "grover_lab/errors.hpp"

namespace grover_lab {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Complex oracle_phase(double tau) {
  if (tau == 0.0) return {1.0, 0.0};
  if (tau == 1.0) return {-1.0, 0.0};
  return std::polar(1.0, std::numbers::pi * tau);
}

// Assigns each new eigenvector to the previous one it overlaps most,
// greedily over overlaps in decreasing order.
std::vector<std::size_t> track_branches(const ComplexMatrix& previous, const std::vector<std::size_t>& labels,
                                        const ComplexMatrix& current) {
  const std::size_t n = labels.size();
  const Eigen::MatrixXd overlap = (previous.adjoint() * current).cwiseAbs2();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(overlap(idx(i), idx(j)), i, j);
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<bool> used_prev(n, false);
  std::vector<bool> used_cur(n, false);
  std::vector<std::size_t> out(n, 0);
  std::size_t assigned = 0;
  for (const auto& [w, i, j] : pairs) {
    if (used_prev[i] || used_cur[j]) continue;
    used_prev[i] = used_cur[j] = true;
    out[j] = labels[i];
    if (++assigned == n) break;
  }
  return out;
}

// U_s v = 2 |s><s|v> - v, applied column-wise.
ComplexMatrix reflect_about_mean(const ComplexMatrix& vectors) {
  const Eigen::RowVectorXcd means = vectors.colwise().mean();
  ComplexMatrix out = -vectors;
  out.rowwise() += 2.0 * means;
  return out;
}

}  // namespace

ConditionalState fractional_oracle(const ConditionalState& state, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("tau must lie in [0, 1]");
  StateVector a = state.amplitudes();
  a[idx(state.target())] *= oracle_phase(tau);
  return ConditionalState(std::move(a), state.target());
}

Ensemble fractional_ensemble(const Ensemble& states_at_k0, double tau) {
  validate_ensemble(states_at_k0);
  Ensemble out;
  out.reserve(states_at_k0.size());
  for (const auto& state : states_at_k0) out.push_back(fractional_oracle(state, tau));
  return out;
}

DensityMatrix flow_rho(const Ensemble& states_at_k0, double tau) {
  return mix_conditionals(fractional_ensemble(states_at_k0, tau));
}

ComplexMatrix rho_time_derivative(const Ensemble& states) {
  validate_ensemble(states);
  const std::size_t n = states.size();
  // [|x><x|, rho_x] = M_x - M_x^dagger with M_x = |x><x|psi_x><psi_x|, whose
  // only nonzero row is row x: psi_x[x] * conj(psi_x).
  ComplexMatrix m(idx(n), idx(n));
  for (std::size_t x = 0; x < n; ++x) {
    const StateVector& psi = states[x].amplitudes();
    m.row(idx(x)) = psi[idx(x)] * psi.adjoint();
  }
  // -(i/N) [H_x, .] with H_x = -pi |x><x|.
  const Complex scale(0.0, std::numbers::pi / static_cast<double>(n));
  return scale * (m - m.adjoint());
}

EigenDerivatives eigenvalue_derivative(const DensityMatrix& rho, const ComplexMatrix& rho_dot,
                                       double cluster_tolerance) {
  const std::size_t n = rho.dimension();
  if (rho_dot.rows() != idx(n) || rho_dot.cols() != idx(n)) {
    throw InvalidDimension("rho and rho_dot dimensions differ");
  }
  EigenPairs pairs = hermitian_eigenpairs(rho.entries());

  EigenDerivatives out;
  out.eigenvalues = pairs.values;
  out.derivatives.assign(n, 0.0);
  out.eigenvectors = std::move(pairs.vectors);

  auto flag = [&out](std::string reason) {
    if (!out.flagged) out.flag_reason = std::move(reason);
    out.flagged = true;
  };

  std::size_t begin = 0;
  double smallest_gap = std::numeric_limits<double>::infinity();
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && out.eigenvalues[end - 1] - out.eigenvalues[end] <= cluster_tolerance) ++end;
    if (end < n) smallest_gap = std::min(smallest_gap, out.eigenvalues[end - 1] - out.eigenvalues[end]);

    const Eigen::Index b = idx(begin);
    const Eigen::Index d = idx(end - begin);
    const ComplexMatrix basis = out.eigenvectors.middleCols(b, d);
    const ComplexMatrix restricted = basis.adjoint() * rho_dot * basis;
    if (d == 1) {
      const Complex value = restricted(0, 0);
      if (std::abs(value.imag()) > 1e-10) flag("<u|rho_dot|u> has imaginary part " + std::to_string(value.imag()));
      out.derivatives[begin] = value.real();
    } else {
      if (hermitian_defect(restricted) > 1e-10) flag("rho_dot is not Hermitian on a degenerate subspace");
      const ComplexMatrix sym = 0.5 * (restricted + restricted.adjoint());
      const EigenPairs inner = hermitian_eigenpairs(sym);
      out.eigenvectors.middleCols(b, d) = basis * inner.vectors;
      std::copy(inner.values.begin(), inner.values.end(), out.derivatives.begin() + static_cast<std::ptrdiff_t>(begin));
    }
    begin = end;
  }
  // Separated clusters this close make first-order branch slopes unreliable.
  if (smallest_gap < 1e3 * cluster_tolerance) flag("near-degenerate eigenvalues not resolved into one cluster");
  return out;
}

double drift_bound(std::size_t n) {
  require_dimension(n);
  return 2.0 * std::numbers::pi / std::sqrt(static_cast<double>(n));
}

bool DriftReport::passed() const {
  return max_derivative_excess <= 1e-8 && max_sharpened_excess <= 1e-8 && delta_observed <= bound + 1e-10 &&
         max_trace_rate <= 1e-8;
}

DriftReport drift_audit(std::size_t n, std::size_t k_max, std::size_t grid) {
  require_dimension(n);
  require_desk_scale(n);
  if (grid < 2) throw InvalidDimension("tau grid needs at least 2 points per step");

  DriftReport report;
  report.n = n;
  report.k_max = k_max;
  report.grid = grid;
  report.bound = drift_bound(n);

  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  ComplexMatrix previous_vectors;
  bool crossed_step = false;

  auto record = [&](const Ensemble& at_t, double t) {
    const DensityMatrix rho = mix_conditionals(at_t);
    const ComplexMatrix rho_dot = rho_time_derivative(at_t);
    EigenDerivatives ed = eigenvalue_derivative(rho, rho_dot);

    if (previous_vectors.size() != 0) {
      const ComplexMatrix prev = crossed_step ? reflect_about_mean(previous_vectors) : previous_vectors;
      labels = track_branches(prev, labels, ed.eigenvectors);
    }
    previous_vectors = ed.eigenvectors;
    crossed_step = false;

    FlowSample sample;
    sample.t = t;
    sample.flagged = ed.flagged;
    sample.branch = labels;
    double trace_rate = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lambda = ed.eigenvalues[i];
      const double rate = std::abs(ed.derivatives[i]);
      trace_rate += ed.derivatives[i];
      report.max_abs_derivative = std::max(report.max_abs_derivative, rate);
      report.max_derivative_excess = std::max(report.max_derivative_excess, rate - report.bound);
      report.max_sharpened_excess =
          std::max(report.max_sharpened_excess, rate - report.bound * std::sqrt(std::max(lambda, 0.0)));
    }
    report.max_trace_rate = std::max(report.max_trace_rate, std::abs(trace_rate));
    if (ed.flagged) ++report.flagged_samples;
    sample.eigenvalues = std::move(ed.eigenvalues);
    sample.d_lambda_dt = std::move(ed.derivatives);
    report.samples.push_back(std::move(sample));
  };

  Ensemble ensemble = initial_ensemble(n);
  report.sup_norms.push_back(spectrum_of(mix_conditionals(ensemble)).sup_norm());
  if (k_max == 0) record(ensemble, 0.0);

  for (std::size_t k0 = 0; k0 < k_max; ++k0) {
    for (std::size_t j = 0; j < grid; ++j) {
      const double tau = static_cast<double>(j) / static_cast<double>(grid);
      record(fractional_ensemble(ensemble, tau), static_cast<double>(k0) + tau);
    }
    if (k0 + 1 == k_max) record(fractional_ensemble(ensemble, 1.0), static_cast<double>(k_max));
    ensemble = grover_step(ensemble);
    crossed_step = true;
    const double mu = spectrum_of(mix_conditionals(ensemble)).sup_norm();
    report.delta_observed = std::max(report.delta_observed, std::abs(mu - report.sup_norms.back()));
    report.sup_norms.push_back(mu);
  }
  return report;
}

}  // namespace grover_lab
