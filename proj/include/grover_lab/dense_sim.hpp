#pragma once

// Brute-force density-matrix simulation of quantum search.
//
// The joint target/computer state is block diagonal with pure blocks, so it
// is stored as one pure conditional state per target plus the uniform prior.
// The computer state is the uniform mixture of those blocks.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "grover_lab/linalg.hpp"

namespace grover_lab {

/// Largest dimension accepted by the O(n^3) paths.
inline constexpr std::size_t kDeskScaleLimit = 2048;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/// Throws InvalidDimension when n < 2.
void require_dimension(std::size_t n);

/// Throws DeskScaleExceeded when n exceeds kDeskScaleLimit.
void require_desk_scale(std::size_t n);

/// Pure computer state conditioned on the target being `target`.
class ConditionalState {
 public:
  /// Throws InvalidDimension for n < 2 or target >= n, DomainError if the
  /// squared norm is off by more than kNormTolerance.
  ConditionalState(StateVector amplitudes, std::size_t target);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  std::size_t target() const noexcept { return target_; }
  const StateVector& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t y) const { return amplitudes_[static_cast<Eigen::Index>(y)]; }

  /// |<x|psi>|^2 for the state's own target x.
  double success_probability() const { return std::norm(amplitude(target_)); }

 private:
  StateVector amplitudes_;
  std::size_t target_;
};

/// One conditional state per target, ordered so that states[x].target() == x.
using Ensemble = std::vector<ConditionalState>;

/// |<a|b>|, the phase-insensitive overlap.
double overlap_magnitude(const ConditionalState& a, const ConditionalState& b);

/// Global-phase equality: |<a|b>| = 1 within tol.
bool equal_up_to_phase(const ConditionalState& a, const ConditionalState& b, double tol = 1e-10);

/// N x N Hermitian, unit-trace matrix. Positivity is checked by spectrum_of.
class DensityMatrix {
 public:
  /// Throws InvalidDimension for non-square or n < 2 input and DomainError
  /// when Hermiticity (1e-12) or unit trace (1e-10) fails.
  explicit DensityMatrix(ComplexMatrix entries);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  double trace() const { return entries_.trace().real(); }

 private:
  ComplexMatrix entries_;
};

/// Real eigenvalues sorted descending.
class Spectrum {
 public:
  /// Sorts the input descending.
  explicit Spectrum(std::vector<double> eigenvalues);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double sup_norm() const { return values_.front(); }
  double sum() const;

  /// Number of clusters after grouping neighbours closer than tol.
  std::size_t distinct_count(double tol) const;

 private:
  std::vector<double> values_;
};

/// Classical channel P(Y = y | X = x) of the final measurement.
class ChannelMatrix {
 public:
  /// Throws DomainError unless every entry is in [0,1] and rows sum to 1
  /// within 1e-10.
  explicit ChannelMatrix(Eigen::MatrixXd probs);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(probs_.rows()); }
  const Eigen::MatrixXd& probs() const noexcept { return probs_; }
  double operator()(std::size_t x, std::size_t y) const {
    return probs_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  }

 private:
  Eigen::MatrixXd probs_;
};

// --- Grover operators ------------------------------------------------------

/// |s>: every amplitude exactly 1/sqrt(n).
StateVector uniform_superposition(std::size_t n);

/// |s> labelled with a target.
ConditionalState initial_state(std::size_t n, std::size_t target);

/// O_x = I - 2|x><x|.
ConditionalState oracle_reflect(const ConditionalState& state);

/// U_s = 2|s><s| - I, i.e. a_y -> 2 mean(a) - a_y.
ConditionalState inversion_about_mean(const ConditionalState& state);

/// G_x = U_s O_x.
ConditionalState grover_iterate(const ConditionalState& state);

/// Target-independent (non-oracle) operator U applied to one conditional.
ConditionalState apply_unitary(const ConditionalState& state, const ComplexMatrix& unitary);

/// [|s>, G|s>, ..., G^k|s>] for target x.
std::vector<ConditionalState> run_schedule(std::size_t n, std::size_t x, std::size_t k);

Ensemble initial_ensemble(std::size_t n);

/// Applies grover_iterate to every conditional.
Ensemble grover_step(const Ensemble& ensemble);

/// Ensemble after k Grover iterations.
Ensemble evolve_ensemble(std::size_t n, std::size_t k);

/// Throws InvalidDimension unless the ensemble holds exactly one state per
/// target in target order, all of one dimension.
void validate_ensemble(const Ensemble& ensemble);

// --- Density matrix, spectrum, entropy -------------------------------------

/// (1/n) sum_x |psi_x><psi_x|.
DensityMatrix mix_conditionals(const Ensemble& ensemble);

/// Full eigendecomposition of rho. Throws DomainError if any eigenvalue is
/// below -1e-10 or the eigenvalue sum misses the trace by more than 1e-9.
Spectrum spectrum_of(const DensityMatrix& rho);

/// Spectrum from the Gram matrix (1/n) <psi_x|psi_y>; shares its nonzero
/// eigenvalues with the mixture.
Spectrum gram_spectrum(const Ensemble& ensemble);

/// -sum lambda log2 lambda, negatives clamped to zero, 0 log 0 = 0.
double von_neumann_entropy(const Spectrum& spectrum);

/// Shannon entropy in bits of a probability vector (0 log 0 = 0).
double shannon_entropy(std::span<const double> probs);

/// log2 n, the entropy of the uniform target prior.
double prior_entropy(std::size_t n);

/// (1/n) sum_x S(|psi_x><psi_x|). Each block is rank one with eigenvalue
/// ||psi_x||^2, so this is zero for normalized conditionals.
double mean_block_entropy(const Ensemble& ensemble);

/// Entropy of the block-diagonal joint state: prior + mean block entropy.
double joint_entropy(const Ensemble& ensemble);

/// Grover's rho_C has one simple eigenvalue (on |s>) and one of
/// multiplicity n-1.
struct GroverEigenvalues {
  double lambda1 = 0.0;  // eigenvalue nearest <s|rho|s>
  double lambda2 = 0.0;  // mean of the remaining n-1 eigenvalues
  double spread = 0.0;   // max deviation of the remaining ones from lambda2
};

GroverEigenvalues split_grover_spectrum(const Spectrum& spectrum, const DensityMatrix& rho);

// --- Measurement -----------------------------------------------------------

/// Computational-basis measurement: probs[x][y] = |<y|psi_x>|^2.
ChannelMatrix measurement_channel(const Ensemble& final_states);

/// P(Y != X) under a uniform prior.
double error_probability(const ChannelMatrix& channel);

/// I(X;Y) = H(Y) - H(Y|X) in bits under a uniform prior.
double mutual_information(const ChannelMatrix& channel);

/// H(X|Y) = log2 n - I(X;Y).
double conditional_entropy_x_given_y(const ChannelMatrix& channel);

}  // namespace grover_lab
