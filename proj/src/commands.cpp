#include "grover_lab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "grover_lab/csv.hpp"
#include "grover_lab/dense_sim.hpp"
#include "grover_lab/errors.hpp"
#include "grover_lab/grover_analytic.hpp"
#include "grover_lab/info_bounds.hpp"
#include "grover_lab/oracle_flow.hpp"

namespace grover_lab {

namespace {

constexpr double kCrossValidationTolerance = 1e-8;

using csv::number;

std::size_t horizon(const RunConfig& config) { return config.k.value_or(optimal_iterations(config.n)); }

// Writes CSV either to config.output_path or, when none is set, to fallback.
void emit_csv(const RunConfig& config, std::ostream* fallback, const std::function<void(std::ostream&)>& body) {
  if (config.output_path.empty()) {
    if (fallback != nullptr) body(*fallback);
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + config.output_path + " for writing");
  body(file);
  file.flush();
  if (!file) throw IoError("write to " + config.output_path + " failed");
}

void curve_header(std::ostream& out) {
  csv::write_row(out, {"t", "lambda1", "lambda2", "entropy_bits", "sup_norm", "success_prob"});
}

void curve_row(std::ostream& out, const ClosedFormPoint& p) {
  csv::write_row(out, {number(p.t), number(p.lambda1), number(p.lambda2), number(p.entropy_bits), number(p.sup_norm),
                       number(p.success_prob)});
}

// Dense counterpart of a closed-form point at integer step k.
ClosedFormPoint dense_point(const Ensemble& ensemble, std::size_t k) {
  const DensityMatrix rho = mix_conditionals(ensemble);
  const Spectrum spectrum = spectrum_of(rho);
  const GroverEigenvalues split = split_grover_spectrum(spectrum, rho);
  ClosedFormPoint p;
  p.n = ensemble.size();
  p.t = static_cast<double>(k);
  p.lambda1 = split.lambda1;
  p.lambda2 = split.lambda2;
  p.entropy_bits = von_neumann_entropy(spectrum);
  p.sup_norm = spectrum.sup_norm();
  p.success_prob = 1.0 - error_probability(measurement_channel(ensemble));
  return p;
}

std::vector<ClosedFormPoint> dense_points(std::size_t n, std::size_t k_max, std::size_t stride) {
  require_desk_scale(n);
  std::vector<ClosedFormPoint> points;
  Ensemble ensemble = initial_ensemble(n);
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) ensemble = grover_step(ensemble);
    if (k % stride == 0) points.push_back(dense_point(ensemble, k));
  }
  return points;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto m = static_cast<Eigen::Index>(n);
  ComplexMatrix g(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
}

std::string bound_status(const BoundReport& r) {
  const auto [name, slack] = r.first_violation();
  return name.empty() ? "ok" : "VIOLATED:" + name;
}

}  // namespace

Engine parse_engine(const std::string& name) {
  if (name == "analytic") return Engine::analytic;
  if (name == "dense") return Engine::dense;
  throw UsageError("unknown engine '" + name + "' (expected analytic or dense)");
}

void validate(const RunConfig& config) {
  static const char* const kCommands[] = {"simulate", "analytic", "verify", "drift", "bounds", "curve"};
  if (std::find(std::begin(kCommands), std::end(kCommands), config.command) == std::end(kCommands)) {
    throw UsageError("unknown command '" + config.command + "'");
  }
  if (config.n < 2) throw UsageError("--n must be at least 2");
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw UsageError("--dt must be positive");
  if (config.grid < 2) throw UsageError("--grid must be at least 2");
  if (config.t_max && !(*config.t_max >= 0.0)) throw UsageError("--t-max must be non-negative");
  if (config.pe && !(*config.pe >= 0.0 && *config.pe <= 1.0)) throw UsageError("--pe must lie in [0, 1]");
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const auto points = dense_points(config.n, horizon(config), 1);
  emit_csv(config, &out, [&](std::ostream& os) {
    curve_header(os);
    for (const auto& p : points) curve_row(os, p);
  });
  return exit_code::kOk;
}

int cmd_analytic(const RunConfig& config, std::ostream& out) {
  const std::size_t k_max = horizon(config);
  emit_csv(config, &out, [&](std::ostream& os) {
    curve_header(os);
    for (std::size_t k = 0; k <= k_max; ++k) curve_row(os, closed_form_point(config.n, static_cast<double>(k)));
  });
  return exit_code::kOk;
}

int cmd_curve(const RunConfig& config, std::ostream& out) {
  const double t_max = config.t_max.value_or(2.0 * entropy_period(config.n));
  std::vector<ClosedFormPoint> points;
  if (config.engine == Engine::analytic) {
    points = t_max > 0.0 ? entropy_curve(config.n, t_max, config.dt)
                         : std::vector<ClosedFormPoint>{closed_form_point(config.n, 0.0)};
  } else {
    if (config.n > kDeskScaleLimit) {
      throw UsageError("dense engine is limited to n <= " + std::to_string(kDeskScaleLimit) +
                       "; rerun with --engine analytic");
    }
    if (config.dt != std::floor(config.dt)) throw UsageError("dense engine samples integer steps; --dt must be an integer");
    points = dense_points(config.n, static_cast<std::size_t>(std::floor(t_max)), static_cast<std::size_t>(config.dt));
  }
  emit_csv(config, &out, [&](std::ostream& os) {
    curve_header(os);
    for (const auto& p : points) curve_row(os, p);
  });
  return exit_code::kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const std::size_t n = config.n;
  require_desk_scale(n);
  const std::size_t k_max = config.k.value_or(period_steps(n));

  double max_eigen_dev = 0.0;
  double max_entropy_dev = 0.0;
  double max_gram_dev = 0.0;
  double max_joint_dev = 0.0;
  std::size_t bad_multiplicity = 0;

  std::ostringstream rows;
  csv::write_row(rows, {"k", "lambda1_dense", "lambda2_dense", "lambda1_closed", "lambda2_closed", "entropy_dense",
                        "entropy_closed", "max_abs_deviation"});

  Ensemble ensemble = initial_ensemble(n);
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) ensemble = grover_step(ensemble);
    const DensityMatrix rho = mix_conditionals(ensemble);
    const Spectrum spectrum = spectrum_of(rho);
    const ClosedFormPoint cf = closed_form_point(n, static_cast<double>(k));

    std::vector<double> expected(n, cf.lambda2);
    expected[0] = cf.lambda1;
    std::sort(expected.begin(), expected.end(), std::greater<>());
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(spectrum[i] - expected[i]));
    const double entropy = von_neumann_entropy(spectrum);
    max_eigen_dev = std::max(max_eigen_dev, dev);
    max_entropy_dev = std::max(max_entropy_dev, std::abs(entropy - cf.entropy_bits));

    const Spectrum gram = gram_spectrum(ensemble);
    for (std::size_t i = 0; i < n; ++i) max_gram_dev = std::max(max_gram_dev, std::abs(gram[i] - spectrum[i]));
    max_joint_dev = std::max(max_joint_dev, std::abs(joint_entropy(ensemble) - prior_entropy(n)));

    // One simple eigenvalue plus one of multiplicity n-1, unless they coincide.
    const std::size_t distinct = spectrum.distinct_count(1e-8);
    if (distinct > 2) ++bad_multiplicity;

    const GroverEigenvalues split = split_grover_spectrum(spectrum, rho);
    csv::write_row(rows, {number(k), number(split.lambda1), number(split.lambda2), number(cf.lambda1),
                          number(cf.lambda2), number(entropy), number(cf.entropy_bits), number(dev)});
  }

  // Non-oracle invariance: a random target-independent unitary leaves the
  // computer-state spectrum unchanged.
  const ComplexMatrix u = random_unitary(n, config.seed);
  Ensemble rotated;
  rotated.reserve(n);
  for (const auto& state : ensemble) rotated.push_back(apply_unitary(state, u));
  const Spectrum before = spectrum_of(mix_conditionals(ensemble));
  const Spectrum after = spectrum_of(mix_conditionals(rotated));
  double invariance_dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) invariance_dev = std::max(invariance_dev, std::abs(before[i] - after[i]));

  emit_csv(config, nullptr, [&](std::ostream& os) { os << rows.str(); });

  const bool pass = max_eigen_dev <= kCrossValidationTolerance && max_entropy_dev <= kCrossValidationTolerance &&
                    max_gram_dev <= kCrossValidationTolerance && max_joint_dev <= 1e-12 && bad_multiplicity == 0 &&
                    invariance_dev <= 1e-9;
  out << "verify n=" << n << " k=0.." << k_max << '\n'
      << "  max eigenvalue deviation (dense vs closed form): " << number(max_eigen_dev) << '\n'
      << "  max entropy deviation (bits):                    " << number(max_entropy_dev) << '\n'
      << "  max Gram-route deviation:                        " << number(max_gram_dev) << '\n'
      << "  joint entropy - log2 n:                          " << number(max_joint_dev) << '\n'
      << "  steps with more than two distinct eigenvalues:   " << bad_multiplicity << '\n'
      << "  non-oracle unitary spectrum change:              " << number(invariance_dev) << '\n'
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? exit_code::kOk : exit_code::kViolation;
}

int cmd_drift(const RunConfig& config, std::ostream& out) {
  const DriftReport report = drift_audit(config.n, horizon(config), config.grid);
  emit_csv(config, nullptr, [&](std::ostream& os) {
    csv::write_row(os, {"t", "branch", "lambda", "dlambda_dt"});
    for (const auto& s : report.samples) {
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        csv::write_row(os, {number(s.t), number(s.branch[i]), number(s.eigenvalues[i]), number(s.d_lambda_dt[i])});
      }
    }
  });
  out << "drift n=" << report.n << " steps=" << report.k_max << " grid=" << report.grid << '\n'
      << "  empirical Delta=" << number(report.delta_observed) << " bound=" << number(report.bound)
      << " margin=" << number(report.margin()) << '\n'
      << "  max |dlambda/dt|=" << number(report.max_abs_derivative)
      << " max excess over sharpened bound=" << number(report.max_sharpened_excess) << '\n'
      << "  flagged samples=" << report.flagged_samples << '\n'
      << (report.passed() ? "PASS" : "FAIL") << '\n';
  return report.passed() ? exit_code::kOk : exit_code::kViolation;
}

int cmd_bounds(const RunConfig& config, std::ostream& out) {
  const std::size_t n = config.n;
  if (n < 4) throw UsageError("bounds needs n >= 4");
  const std::size_t grover_k = optimal_iterations(n);

  if (config.pe) {
    const QueryLowerBound lb = query_lower_bound(*config.pe, n);
    const double mu_cap = supnorm_requirement(*config.pe, n);
    emit_csv(config, nullptr, [&](std::ostream& os) {
      csv::write_row(os, {"n", "p_e", "k_lower_paper", "k_lower_derived", "grover_k", "supnorm_requirement"});
      csv::write_row(os, {number(n), number(*config.pe), number(lb.paper_form), number(lb.derived_form),
                          number(grover_k), number(mu_cap)});
    });
    out << "n=" << n << " p_e=" << number(*config.pe) << '\n'
        << "  lower bound (printed form) = " << number(lb.paper_form) << '\n'
        << "  lower bound (derived form) = " << number(lb.derived_form) << '\n'
        << "  Grover K = " << grover_k << '\n'
        << "  sup-norm requirement mu_K <= " << number(mu_cap) << '\n';
    return exit_code::kOk;
  }

  const std::size_t k_max = horizon(config);
  std::vector<BoundReport> reports;
  if (config.engine == Engine::dense) {
    if (n > kDeskScaleLimit) {
      throw UsageError("dense engine is limited to n <= " + std::to_string(kDeskScaleLimit) +
                       "; rerun with --engine analytic");
    }
    reports = audit_sweep(n, k_max);
  } else {
    reports = audit_closed_form_sweep(n, k_max);
  }

  bool all_ok = true;
  for (const auto& r : reports) all_ok = all_ok && r.first_violation().first.empty();

  emit_csv(config, nullptr, [&](std::ostream& os) {
    csv::write_row(os, {"K", "p_e", "mutual_info_bits", "entropy_bits", "cond_entropy_bits", "sup_norm",
                        "delta_observed", "k_lower_paper", "k_lower_derived", "grover_k", "holevo_slack",
                        "fano_slack", "entropy_cap_slack", "supbound_slack", "status"});
    for (const auto& r : reports) {
      csv::write_row(os, {number(r.K), number(r.p_e), number(r.mutual_info_bits), number(r.entropy_final_bits),
                          number(r.cond_entropy_bits), number(r.sup_norm_final), number(r.delta_observed),
                          number(r.k_lower_paper_form), number(r.k_lower_derived_form), number(grover_k),
                          number(r.holevo_slack), number(r.fano_slack), number(r.entropy_cap_slack),
                          number(r.supbound_slack), bound_status(r)});
    }
  });

  out << "bounds n=" << n << " engine=" << (config.engine == Engine::dense ? "dense" : "analytic")
      << " Grover K=" << grover_k << '\n'
      << "     K  p_e            K>=printed     K>=derived     holevo     fano       cap        supbound   status\n";
  for (const auto& r : reports) {
    char line[256];
    std::snprintf(line, sizeof line, "%6zu  %-13.6g  %-13.6g  %-13.6g  %-9.3g  %-9.3g  %-9.3g  %-9.3g  %s\n", r.K,
                  r.p_e, r.k_lower_paper_form, r.k_lower_derived_form, r.holevo_slack, r.fano_slack,
                  r.entropy_cap_slack, r.supbound_slack, bound_status(r).c_str());
    out << line;
  }
  out << (all_ok ? "PASS" : "FAIL") << '\n';
  return all_ok ? exit_code::kOk : exit_code::kViolation;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.command == "simulate") return cmd_simulate(config, out);
    if (config.command == "analytic") return cmd_analytic(config, out);
    if (config.command == "curve") return cmd_curve(config, out);
    if (config.command == "verify") return cmd_verify(config, out);
    if (config.command == "drift") return cmd_drift(config, out);
    return cmd_bounds(config, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const AuditFailure& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kViolation;
  } catch (const std::invalid_argument& e) {  // UsageError, InvalidDimension
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::logic_error& e) {  // DomainError, DeskScaleExceeded
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
}

}  // namespace grover_lab
