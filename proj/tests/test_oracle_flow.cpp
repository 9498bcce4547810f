#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "grover_lab/dense_sim.hpp"
#include "grover_lab/errors.hpp"
#include "grover_lab/grover_analytic.hpp"
#include "grover_lab/oracle_flow.hpp"
#include "support/branch_fd.hpp"
#include "support/reference.hpp"

using namespace grover_lab;

namespace {

ConditionalState random_state(std::size_t n, std::size_t target, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector a(static_cast<Eigen::Index>(n));
  for (auto& v : a) v = Complex(g(rng), g(rng));
  a /= a.norm();
  return ConditionalState(a, target);
}

Ensemble random_ensemble(std::size_t n, std::mt19937_64& rng) {
  Ensemble e;
  for (std::size_t x = 0; x < n; ++x) e.push_back(random_state(n, x, rng));
  return e;
}

}  // namespace

TEST_SUITE("oracle-flow") {
  TEST_CASE("fractional oracle endpoints") {
    std::mt19937_64 rng(7);
    const ConditionalState psi = random_state(8, 3, rng);
    CHECK(fractional_oracle(psi, 0.0).amplitudes() == psi.amplitudes());
    CHECK(fractional_oracle(psi, 1.0).amplitudes() == oracle_reflect(psi).amplitudes());

    StateVector x = StateVector::Zero(8);
    x[3] = 1.0;
    const ConditionalState half = fractional_oracle(ConditionalState(x, 3), 0.5);
    CHECK(std::abs(half.amplitude(3) - Complex(0.0, 1.0)) < 1e-15);

    CHECK_THROWS_AS(fractional_oracle(psi, -0.01), DomainError);
    CHECK_THROWS_AS(fractional_oracle(psi, 1.01), DomainError);
    CHECK_THROWS_AS(fractional_oracle(psi, std::nan("")), DomainError);
  }

  TEST_CASE("fractional oracle is a semigroup") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (int trial = 0; trial < 50; ++trial) {
      const ConditionalState psi = random_state(6, static_cast<std::size_t>(trial) % 6, rng);
      const double a = u(rng);
      const double b = u(rng);
      const auto once = fractional_oracle(psi, a + b);
      const auto twice = fractional_oracle(fractional_oracle(psi, a), b);
      CHECK((once.amplitudes() - twice.amplitudes()).norm() < 1e-14);
    }
  }

  TEST_CASE("flow_rho endpoints and continuity") {
    const Ensemble at_k0 = evolve_ensemble(8, 1);
    CHECK((flow_rho(at_k0, 0.0).entries() - mix_conditionals(at_k0).entries()).norm() < 1e-15);

    Ensemble reflected;
    for (const auto& s : at_k0) reflected.push_back(oracle_reflect(s));
    CHECK((flow_rho(at_k0, 1.0).entries() - mix_conditionals(reflected).entries()).norm() < 1e-15);

    // Max jump between neighbouring tau samples shrinks with the spacing.
    auto max_jump = [&](int grid) {
      double jump = 0.0;
      Spectrum prev = spectrum_of(flow_rho(at_k0, 0.0));
      for (int j = 1; j <= grid; ++j) {
        const Spectrum cur = spectrum_of(flow_rho(at_k0, static_cast<double>(j) / grid));
        for (std::size_t i = 0; i < cur.size(); ++i) jump = std::max(jump, std::abs(cur[i] - prev[i]));
        prev = cur;
      }
      return jump;
    };
    const double coarse = max_jump(8);
    const double fine = max_jump(64);
    CHECK(fine < coarse);
    CHECK(fine < 0.2 * coarse);
  }

  TEST_CASE("rho_time_derivative") {
    // Computational basis states commute with every H_x.
    Ensemble diagonal;
    for (std::size_t x = 0; x < 5; ++x) {
      StateVector a = StateVector::Zero(5);
      a[static_cast<Eigen::Index>((x + 2) % 5)] = 1.0;
      diagonal.push_back(ConditionalState(a, x));
    }
    CHECK(rho_time_derivative(diagonal).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(3);
    const Ensemble e = random_ensemble(6, rng);
    const ComplexMatrix rho_dot = rho_time_derivative(e);
    CHECK(std::abs(rho_dot.trace()) < 1e-12);
    CHECK(hermitian_defect(rho_dot) < 1e-15);
  }

  TEST_CASE("rho_time_derivative matches central differences") {
    const double h = 1e-5;
    for (std::size_t k0 : {0ul, 1ul, 2ul}) {
      const Ensemble at_k0 = evolve_ensemble(16, k0);
      for (double tau : {0.1, 0.25, 0.5, 0.9}) {
        const ComplexMatrix fd =
            (flow_rho(at_k0, tau + h).entries() - flow_rho(at_k0, tau - h).entries()) / (2.0 * h);
        const ComplexMatrix analytic = rho_time_derivative(fractional_ensemble(at_k0, tau));
        CHECK((fd - analytic).cwiseAbs().maxCoeff() <= 1e-7);
      }
    }
  }

  TEST_CASE("eigenvalue_derivative basics") {
    const DensityMatrix rho = mix_conditionals(evolve_ensemble(8, 2));
    const auto zero = eigenvalue_derivative(rho, ComplexMatrix::Zero(8, 8));
    for (double d : zero.derivatives) CHECK(d == 0.0);

    const auto ed = eigenvalue_derivative(rho, rho_time_derivative(evolve_ensemble(8, 2)));
    double sum = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      const StateVector u = ed.eigenvectors.col(static_cast<Eigen::Index>(i));
      CHECK(std::abs((u.adjoint() * rho_time_derivative(evolve_ensemble(8, 2)) * u)(0, 0).real() -
                     ed.derivatives[i]) < 1e-12);
      sum += ed.derivatives[i];
    }
    CHECK(std::abs(sum) < 1e-12);
    CHECK_THROWS_AS(eigenvalue_derivative(rho, ComplexMatrix::Zero(3, 3)), InvalidDimension);
  }

  TEST_CASE("eigenvalue slopes match finite differences of tracked branches (n=16, k0=2, tau=0.5)") {
    const auto cmp = reference::compare_branch_slopes(evolve_ensemble(16, 2), 0.5, 1e-5);
    CHECK_FALSE(cmp.flagged);
    CHECK(cmp.compared == 16);
    CHECK(cmp.max_error < 1e-6);
  }

  TEST_CASE("slopes on random ensembles with simple spectra") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
      const auto cmp = reference::compare_branch_slopes(random_ensemble(6, rng), 0.3, 1e-5);
      CHECK(cmp.max_error < 1e-6);
    }
  }

  TEST_CASE("derivatives obey the drift bound and its sharpened form") {
    std::mt19937_64 rng(23);
    for (std::size_t n : {4ul, 9ul}) {
      for (int trial = 0; trial < 10; ++trial) {
        const Ensemble e = random_ensemble(n, rng);
        const auto ed = eigenvalue_derivative(mix_conditionals(e), rho_time_derivative(e));
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(std::abs(ed.derivatives[i]) <= drift_bound(n) + 1e-8);
          CHECK(std::abs(ed.derivatives[i]) <= drift_bound(n) * std::sqrt(std::max(ed.eigenvalues[i], 0.0)) + 1e-8);
        }
      }
    }
  }

  TEST_CASE("flow spectrum matches the Jacobi oracle") {
    const Ensemble at_k0 = evolve_ensemble(6, 1);
    const DensityMatrix rho = flow_rho(at_k0, 0.37);
    std::vector<std::vector<Complex>> h(6, std::vector<Complex>(6));
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) h[i][j] = rho.entries()(i, j);
    }
    const auto ref = reference::hermitian_jacobi_eigenvalues(h);
    const Spectrum spec = spectrum_of(rho);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(ref[i] - spec[i]) < 1e-12);
  }

  TEST_CASE("non-oracle steps leave the spectrum unchanged") {
    for (std::size_t k = 0; k < 4; ++k) {
      const Ensemble before = fractional_ensemble(evolve_ensemble(16, k), 1.0);
      Ensemble after;
      for (const auto& s : before) after.push_back(inversion_about_mean(s));
      const Spectrum a = spectrum_of(mix_conditionals(before));
      const Spectrum b = spectrum_of(mix_conditionals(after));
      for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
    }
  }

  TEST_CASE("drift audit") {
    const DriftReport small = drift_audit(4, optimal_iterations(4));
    CHECK(small.bound == doctest::Approx(std::numbers::pi));
    CHECK(small.delta_observed <= 1.0);
    CHECK(small.passed());

    const DriftReport mid = drift_audit(256, 3, 8);
    CHECK(mid.bound == doctest::Approx(2.0 * std::numbers::pi / 16.0));
    CHECK(mid.delta_observed > 0.0);
    CHECK(mid.delta_observed <= mid.bound);
    CHECK(mid.passed());
    CHECK(mid.sup_norms.size() == 4);
    CHECK(mid.samples.size() == 3 * 8 + 1);

    CHECK(drift_bound(1024) == doctest::Approx(0.19634954084936207));

    CHECK_THROWS_AS(drift_audit(4096, 1), DeskScaleExceeded);
    CHECK_THROWS_AS(drift_audit(16, 1, 1), InvalidDimension);
  }

  TEST_CASE("integer-step drift does not depend on the tau grid") {
    const DriftReport coarse = drift_audit(32, 4, 2);
    const DriftReport fine = drift_audit(32, 4, 128);
    CHECK(std::abs(coarse.delta_observed - fine.delta_observed) <= 1e-12);
  }

  TEST_CASE("branch labels stay a permutation") {
    const DriftReport r = drift_audit(8, 2, 16);
    for (const auto& s : r.samples) {
      std::vector<std::size_t> sorted = s.branch;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
    }
  }
}
