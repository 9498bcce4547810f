#include "grover_lab/dense_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grover_lab/errors.hpp"

namespace grover_lab {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

ComplexMatrix columns_of(const Ensemble& ensemble) {
  const std::size_t n = ensemble.front().dimension();
  ComplexMatrix a(idx(n), idx(ensemble.size()));
  for (std::size_t x = 0; x < ensemble.size(); ++x) a.col(idx(x)) = ensemble[x].amplitudes();
  return a;
}

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// a * a^dagger / scale (or a^dagger * a when `gram`), on the real path when
// every amplitude is real, made exactly Hermitian.
ComplexMatrix outer_product(const ComplexMatrix& a, bool gram, double scale) {
  ComplexMatrix m;
  if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
    const Eigen::MatrixXd re = a.real();
    const Eigen::MatrixXd prod = gram ? Eigen::MatrixXd(re.transpose() * re) : Eigen::MatrixXd(re * re.transpose());
    m = (prod / scale).cast<Complex>();
  } else {
    m = gram ? ComplexMatrix(a.adjoint() * a) : ComplexMatrix(a * a.adjoint());
    m /= scale;
  }
  // GEMM rounding can break exact Hermiticity.
  return 0.5 * (m + m.adjoint());
}

}  // namespace

void require_dimension(std::size_t n) {
  if (n < 2) throw InvalidDimension("dimension must be at least 2, got " + std::to_string(n));
}

void require_desk_scale(std::size_t n) {
  if (n > kDeskScaleLimit) {
    throw DeskScaleExceeded("n = " + std::to_string(n) + " exceeds the desk-scale limit of " +
                            std::to_string(kDeskScaleLimit) + "; use the analytic engine");
  }
}

ConditionalState::ConditionalState(StateVector amplitudes, std::size_t target)
    : amplitudes_(std::move(amplitudes)), target_(target) {
  require_dimension(dimension());
  if (target_ >= dimension()) {
    throw InvalidDimension("target " + std::to_string(target_) + " outside [0, " +
                           std::to_string(dimension()) + ")");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw DomainError("conditional state is not normalized: |psi|^2 = " + std::to_string(norm2));
  }
}

double overlap_magnitude(const ConditionalState& a, const ConditionalState& b) {
  if (a.dimension() != b.dimension()) throw InvalidDimension("overlap of states of different dimension");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

bool equal_up_to_phase(const ConditionalState& a, const ConditionalState& b, double tol) {
  return std::abs(overlap_magnitude(a, b) - 1.0) <= tol;
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw InvalidDimension("density matrix must be square");
  require_dimension(dimension());
  const double defect = hermitian_defect(entries_);
  if (defect > kHermitianTolerance) {
    throw DomainError("density matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  if (std::abs(trace() - 1.0) > kTraceTolerance) {
    throw DomainError("density matrix trace is " + std::to_string(trace()));
  }
}

Spectrum::Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
  if (values_.empty()) throw InvalidDimension("empty spectrum");
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

double Spectrum::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

std::size_t Spectrum::distinct_count(double tol) const {
  std::size_t clusters = 1;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i - 1] - values_[i] > tol) ++clusters;
  }
  return clusters;
}

ChannelMatrix::ChannelMatrix(Eigen::MatrixXd probs) : probs_(std::move(probs)) {
  if (probs_.rows() != probs_.cols() || probs_.rows() < 2) {
    throw InvalidDimension("channel matrix must be square with n >= 2");
  }
  if (probs_.minCoeff() < 0.0 || probs_.maxCoeff() > 1.0) {
    throw DomainError("channel entries must lie in [0,1]");
  }
  for (Eigen::Index x = 0; x < probs_.rows(); ++x) {
    if (std::abs(probs_.row(x).sum() - 1.0) > 1e-10) {
      throw DomainError("channel row " + std::to_string(x) + " does not sum to 1");
    }
  }
}

StateVector uniform_superposition(std::size_t n) {
  require_dimension(n);
  return StateVector::Constant(idx(n), Complex(std::sqrt(1.0 / static_cast<double>(n)), 0.0));
}

ConditionalState initial_state(std::size_t n, std::size_t target) {
  return ConditionalState(uniform_superposition(n), target);
}

ConditionalState oracle_reflect(const ConditionalState& state) {
  StateVector a = state.amplitudes();
  a[idx(state.target())] = -a[idx(state.target())];
  return ConditionalState(std::move(a), state.target());
}

ConditionalState inversion_about_mean(const ConditionalState& state) {
  const StateVector& a = state.amplitudes();
  const Complex twice_mean = 2.0 * a.mean();
  StateVector out = (-a).array() + twice_mean;
  return ConditionalState(std::move(out), state.target());
}

ConditionalState grover_iterate(const ConditionalState& state) {
  return inversion_about_mean(oracle_reflect(state));
}

ConditionalState apply_unitary(const ConditionalState& state, const ComplexMatrix& unitary) {
  if (unitary.rows() != idx(state.dimension()) || unitary.cols() != idx(state.dimension())) {
    throw InvalidDimension("operator and state dimensions differ");
  }
  return ConditionalState(unitary * state.amplitudes(), state.target());
}

std::vector<ConditionalState> run_schedule(std::size_t n, std::size_t x, std::size_t k) {
  std::vector<ConditionalState> states;
  states.reserve(k + 1);
  states.push_back(initial_state(n, x));
  for (std::size_t j = 0; j < k; ++j) states.push_back(grover_iterate(states.back()));
  return states;
}

Ensemble initial_ensemble(std::size_t n) {
  require_dimension(n);
  Ensemble ensemble;
  ensemble.reserve(n);
  for (std::size_t x = 0; x < n; ++x) ensemble.push_back(initial_state(n, x));
  return ensemble;
}

Ensemble grover_step(const Ensemble& ensemble) {
  Ensemble next;
  next.reserve(ensemble.size());
  for (const auto& state : ensemble) next.push_back(grover_iterate(state));
  return next;
}

Ensemble evolve_ensemble(std::size_t n, std::size_t k) {
  Ensemble ensemble = initial_ensemble(n);
  for (std::size_t j = 0; j < k; ++j) ensemble = grover_step(ensemble);
  return ensemble;
}

void validate_ensemble(const Ensemble& ensemble) {
  if (ensemble.empty()) throw InvalidDimension("empty ensemble");
  const std::size_t n = ensemble.front().dimension();
  if (ensemble.size() != n) {
    throw InvalidDimension("ensemble needs one state per target: " + std::to_string(ensemble.size()) +
                           " states for dimension " + std::to_string(n));
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (ensemble[x].dimension() != n) throw InvalidDimension("ensemble states differ in dimension");
    if (ensemble[x].target() != x) throw InvalidDimension("ensemble is not ordered by target");
  }
}

DensityMatrix mix_conditionals(const Ensemble& ensemble) {
  validate_ensemble(ensemble);
  return DensityMatrix(outer_product(columns_of(ensemble), false, static_cast<double>(ensemble.size())));
}

Spectrum spectrum_of(const DensityMatrix& rho) {
  Spectrum spectrum(hermitian_eigenvalues(rho.entries()));
  if (spectrum.values().back() < -kPsdTolerance) {
    throw DomainError("density matrix has eigenvalue " + std::to_string(spectrum.values().back()));
  }
  if (std::abs(spectrum.sum() - rho.trace()) > 1e-9) {
    throw DomainError("eigenvalue sum does not reproduce the trace");
  }
  return spectrum;
}

Spectrum gram_spectrum(const Ensemble& ensemble) {
  validate_ensemble(ensemble);
  return Spectrum(hermitian_eigenvalues(outer_product(columns_of(ensemble), true, static_cast<double>(ensemble.size()))));
}

double von_neumann_entropy(const Spectrum& spectrum) {
  double s = 0.0;
  for (double v : spectrum.values()) s -= xlog2x(std::max(v, 0.0));
  return std::max(s, 0.0);
}

double shannon_entropy(std::span<const double> probs) {
  double s = 0.0;
  for (double p : probs) s -= xlog2x(p);
  return std::max(s, 0.0);
}

double prior_entropy(std::size_t n) {
  require_dimension(n);
  return std::log2(static_cast<double>(n));
}

double mean_block_entropy(const Ensemble& ensemble) {
  validate_ensemble(ensemble);
  double s = 0.0;
  for (const auto& state : ensemble) {
    // Spectrum of |psi><psi| is (|psi|^2, 0, ..., 0).
    s -= xlog2x(state.amplitudes().squaredNorm());
  }
  return s / static_cast<double>(ensemble.size());
}

double joint_entropy(const Ensemble& ensemble) {
  return prior_entropy(ensemble.size()) + mean_block_entropy(ensemble);
}

GroverEigenvalues split_grover_spectrum(const Spectrum& spectrum, const DensityMatrix& rho) {
  if (spectrum.size() != rho.dimension()) throw InvalidDimension("spectrum and matrix sizes differ");
  const StateVector s = uniform_superposition(rho.dimension());
  const double rayleigh = s.dot(rho.entries() * s).real();

  const auto values = spectrum.values();
  std::size_t simple = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i] - rayleigh) < std::abs(values[simple] - rayleigh)) simple = i;
  }
  GroverEigenvalues out;
  out.lambda1 = values[simple];
  double rest = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != simple) rest += values[i];
  }
  out.lambda2 = rest / static_cast<double>(values.size() - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != simple) out.spread = std::max(out.spread, std::abs(values[i] - out.lambda2));
  }
  return out;
}

ChannelMatrix measurement_channel(const Ensemble& final_states) {
  validate_ensemble(final_states);
  const std::size_t n = final_states.size();
  Eigen::MatrixXd probs(idx(n), idx(n));
  for (std::size_t x = 0; x < n; ++x) {
    probs.row(idx(x)) = final_states[x].amplitudes().cwiseAbs2().transpose();
    // Normalization is exact only to rounding; rescale so rows sum to 1.
    probs.row(idx(x)) /= probs.row(idx(x)).sum();
  }
  return ChannelMatrix(std::move(probs));
}

double error_probability(const ChannelMatrix& channel) {
  const double n = static_cast<double>(channel.dimension());
  return std::clamp(1.0 - channel.probs().trace() / n, 0.0, 1.0);
}

double mutual_information(const ChannelMatrix& channel) {
  const std::size_t n = channel.dimension();
  const Eigen::MatrixXd& p = channel.probs();
  const Eigen::VectorXd p_y = p.colwise().sum().transpose() / static_cast<double>(n);
  const double h_y = shannon_entropy(std::span<const double>(p_y.data(), n));
  double h_y_given_x = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const Eigen::VectorXd row = p.row(idx(x)).transpose();
    h_y_given_x += shannon_entropy(std::span<const double>(row.data(), n));
  }
  h_y_given_x /= static_cast<double>(n);
  return std::clamp(h_y - h_y_given_x, 0.0, std::log2(static_cast<double>(n)));
}

double conditional_entropy_x_given_y(const ChannelMatrix& channel) {
  return std::log2(static_cast<double>(channel.dimension())) - mutual_information(channel);
}

}  // namespace grover_lab
