#pragma once

// The information-theoretic query lower bound, link by link:
//   Holevo      I(X;Y) <= S(rho_C(K))
//   Fano        H(X|Y) <= H2(P_e) + P_e log2 N
//   entropy cap S(rho_C(K)) <= -mu log2 mu - (1-mu) log2((1-mu)/(N-1))
//   sup norm    mu_K log2 N <= P_e log2 N + H2(P_e) + H2(mu_K)
//   steps       K Delta >= 1 - mu_K, with Delta <= 2 pi / sqrt(N)

#include <cstddef>
#include <string>
#include <vector>

namespace grover_lab {

inline constexpr double kSlackTolerance = 1e-9;

/// -u log2 u - (1-u) log2 (1-u). Throws DomainError outside [0, 1].
double binary_entropy(double u);

/// H2(p_e) + p_e log2 n.
double fano_rhs(double p_e, std::size_t n);

struct EntropyCap {
  double tight = 0.0;    // remaining n-1 eigenvalues equal
  double relaxed = 0.0;  // H2(mu) + (1 - mu) log2 n
};

/// Throws DomainError unless 1/n <= mu <= 1 (1e-12 slack, then clamped).
EntropyCap entropy_cap(double mu, std::size_t n);

/// P_e + 2 / log2 n, the relaxed cap on mu_K.
double supnorm_requirement(double p_e, std::size_t n);

struct QueryLowerBound {
  double paper_form = 0.0;    // ((1-P_e)/(2 pi) + 1/(pi log2 n)) sqrt(n), as printed
  double derived_form = 0.0;  // ((1-P_e)/(2 pi) - 1/(pi log2 n)) sqrt(n), clamped at 0
};

QueryLowerBound query_lower_bound(double p_e, std::size_t n);

/// Every quantity of the chain for one run truncated at K steps.
struct BoundReport {
  std::size_t n = 0;
  std::size_t K = 0;
  double p_e = 0.0;
  double entropy_final_bits = 0.0;  // S(rho_C(K))
  double mutual_info_bits = 0.0;    // I(X;Y)
  double cond_entropy_bits = 0.0;   // H(X|Y)
  double sup_norm_final = 0.0;      // mu_K
  double delta_observed = 0.0;      // max_k |mu_{k+1} - mu_k|, 0 when K = 0
  double k_lower_paper_form = 0.0;
  double k_lower_derived_form = 0.0;

  double holevo_slack = 0.0;        // S - I
  double fano_slack = 0.0;          // fano_rhs - H(X|Y)
  double entropy_cap_slack = 0.0;   // tight cap - S
  double supbound_slack = 0.0;      // P_e log n + H2(P_e) + H2(mu) - mu log n
  double binary_pair_slack = 0.0;   // 2 - H2(P_e) - H2(mu)
  double step_slack = 0.0;          // K Delta - (1 - mu_K)
  double derived_bound_slack = 0.0; // K - derived form

  /// Name and slack of the first inequality below -kSlackTolerance, or an
  /// empty name when all hold.
  std::pair<std::string, double> first_violation() const;
};

/// Dense simulation of a K-step Grover run; throws AuditFailure naming the
/// first violated inequality.
BoundReport audit_run(std::size_t n, std::size_t K);

/// audit_run for every K in [0, k_max], sharing one simulation.
std::vector<BoundReport> audit_sweep(std::size_t n, std::size_t k_max);

/// Closed-form counterpart for any n: symmetric channel with success
/// probability sin^2((2K+1) theta/2), spectrum from the closed forms.
BoundReport audit_closed_form(std::size_t n, std::size_t K);

std::vector<BoundReport> audit_closed_form_sweep(std::size_t n, std::size_t k_max);

}  // namespace grover_lab
