#include "grover_lab/info_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grover_lab/dense_sim.hpp"
#include "grover_lab/errors.hpp"
#include "grover_lab/grover_analytic.hpp"

namespace grover_lab {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double log2n(std::size_t n) { return std::log2(static_cast<double>(n)); }

// Fills the derived fields from the measured ones.
void complete_report(BoundReport& r) {
  const double logn = log2n(r.n);
  const double h_pe = binary_entropy(r.p_e);
  const double h_mu = binary_entropy(r.sup_norm_final);
  const QueryLowerBound lb = query_lower_bound(r.p_e, r.n);
  r.k_lower_paper_form = lb.paper_form;
  r.k_lower_derived_form = lb.derived_form;

  r.holevo_slack = r.entropy_final_bits - r.mutual_info_bits;
  r.fano_slack = fano_rhs(r.p_e, r.n) - r.cond_entropy_bits;
  r.entropy_cap_slack = entropy_cap(r.sup_norm_final, r.n).tight - r.entropy_final_bits;
  r.supbound_slack = r.p_e * logn + h_pe + h_mu - r.sup_norm_final * logn;
  r.binary_pair_slack = 2.0 - h_pe - h_mu;
  r.step_slack = static_cast<double>(r.K) * r.delta_observed - (1.0 - r.sup_norm_final);
  r.derived_bound_slack = static_cast<double>(r.K) - r.k_lower_derived_form;
}

void require_sound(const BoundReport& r) {
  const auto [name, slack] = r.first_violation();
  if (!name.empty()) throw AuditFailure(name + " (n=" + std::to_string(r.n) + ", K=" + std::to_string(r.K) + ")", slack);
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double binary_entropy(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("binary entropy argument outside [0, 1]");
  return std::max(-xlog2x(u) - xlog2x(1.0 - u), 0.0);
}

double fano_rhs(double p_e, std::size_t n) {
  require_dimension(n);
  return binary_entropy(p_e) + p_e * log2n(n);
}

EntropyCap entropy_cap(double mu, std::size_t n) {
  require_dimension(n);
  const double floor = 1.0 / static_cast<double>(n);
  if (!(mu >= floor - 1e-12 && mu <= 1.0 + 1e-12)) throw DomainError("sup norm outside [1/n, 1]");
  mu = std::clamp(mu, floor, 1.0);
  const double rest = 1.0 - mu;
  EntropyCap cap;
  cap.tight = -xlog2x(mu);
  if (rest > 0.0) cap.tight -= rest * std::log2(rest / static_cast<double>(n - 1));
  cap.tight = std::max(cap.tight, 0.0);
  cap.relaxed = binary_entropy(mu) + rest * log2n(n);
  return cap;
}

double supnorm_requirement(double p_e, std::size_t n) {
  require_dimension(n);
  return p_e + 2.0 / log2n(n);
}

QueryLowerBound query_lower_bound(double p_e, std::size_t n) {
  require_dimension(n);
  if (!(p_e >= 0.0 && p_e <= 1.0)) throw DomainError("error probability outside [0, 1]");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double info_term = (1.0 - p_e) / (2.0 * std::numbers::pi);
  const double log_term = 1.0 / (std::numbers::pi * log2n(n));
  return {(info_term + log_term) * root_n, std::max(0.0, (info_term - log_term) * root_n)};
}

std::pair<std::string, double> BoundReport::first_violation() const {
  const std::pair<const char*, double> checks[] = {
      {"holevo", holevo_slack},
      {"fano", fano_slack},
      {"entropy-cap", entropy_cap_slack},
      {"supbound", supbound_slack},
      {"binary-entropy-pair", binary_pair_slack},
      {"step-count", step_slack},
      {"derived-lower-bound", derived_bound_slack},
  };
  for (const auto& [name, slack] : checks) {
    if (slack < -kSlackTolerance) return {name, slack};
  }
  return {};
}

std::vector<BoundReport> audit_sweep(std::size_t n, std::size_t k_max) {
  require_dimension(n);
  require_desk_scale(n);
  std::vector<BoundReport> reports;
  reports.reserve(k_max + 1);
  Ensemble ensemble = initial_ensemble(n);
  double delta = 0.0;
  double previous_mu = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) ensemble = grover_step(ensemble);
    const Spectrum spectrum = spectrum_of(mix_conditionals(ensemble));
    const ChannelMatrix channel = measurement_channel(ensemble);

    BoundReport r;
    r.n = n;
    r.K = k;
    r.p_e = error_probability(channel);
    r.entropy_final_bits = von_neumann_entropy(spectrum);
    r.mutual_info_bits = mutual_information(channel);
    r.cond_entropy_bits = conditional_entropy_x_given_y(channel);
    r.sup_norm_final = std::clamp(spectrum.sup_norm(), 1.0 / static_cast<double>(n), 1.0);
    if (k > 0) delta = std::max(delta, std::abs(r.sup_norm_final - previous_mu));
    previous_mu = r.sup_norm_final;
    r.delta_observed = delta;
    complete_report(r);
    reports.push_back(r);
  }
  return reports;
}

BoundReport audit_run(std::size_t n, std::size_t K) {
  BoundReport r = audit_sweep(n, K).back();
  require_sound(r);
  return r;
}

std::vector<BoundReport> audit_closed_form_sweep(std::size_t n, std::size_t k_max) {
  require_dimension(n);
  const double logn = log2n(n);
  std::vector<BoundReport> reports;
  reports.reserve(k_max + 1);
  double delta = 0.0;
  double previous_mu = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const ClosedFormPoint p = closed_form_point(n, static_cast<double>(k));
    BoundReport r;
    r.n = n;
    r.K = k;
    const double success = clamp_probability(p.success_prob);
    r.p_e = 1.0 - success;
    // Each row: success on the diagonal, (1 - success)/(n-1) elsewhere, so
    // H(Y|X) = H(X|Y) is the row entropy and Y is uniform.
    double row_entropy = -xlog2x(success);
    if (r.p_e > 0.0) row_entropy -= r.p_e * std::log2(r.p_e / static_cast<double>(n - 1));
    r.cond_entropy_bits = std::max(row_entropy, 0.0);
    r.mutual_info_bits = std::max(logn - r.cond_entropy_bits, 0.0);
    r.entropy_final_bits = p.entropy_bits;
    r.sup_norm_final = std::clamp(p.sup_norm, 1.0 / static_cast<double>(n), 1.0);
    if (k > 0) delta = std::max(delta, std::abs(r.sup_norm_final - previous_mu));
    previous_mu = r.sup_norm_final;
    r.delta_observed = delta;
    complete_report(r);
    reports.push_back(r);
  }
  return reports;
}

BoundReport audit_closed_form(std::size_t n, std::size_t K) {
  BoundReport r = audit_closed_form_sweep(n, K).back();
  require_sound(r);
  return r;
}

}  // namespace grover_lab
