#include <cmath>
#include <numbers>

#include "doctest.h"
#include "grover_lab/dense_sim.hpp"
#include "grover_lab/errors.hpp"
#include "grover_lab/grover_analytic.hpp"
#include "grover_lab/oracle_flow.hpp"

using namespace grover_lab;

TEST_SUITE("grover-analytic") {
  TEST_CASE("rotation angle") {
    CHECK(grover_angle(2) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(grover_angle(4) == doctest::Approx(1.0471975511965976).epsilon(1e-15));
    // numpy: arccos(1 - 2^-19) = 0.0019531253104409915.
    const double big = grover_angle(1ul << 20);
    CHECK(big == doctest::Approx(0.0019531253104409915).epsilon(1e-12));
    CHECK(std::abs(big - 2.0 / 1024.0) < 1e-9);
    CHECK_THROWS_AS(grover_angle(1), InvalidDimension);
  }

  TEST_CASE("closed-form point") {
    const ClosedFormPoint start = closed_form_point(64, 0.0);
    CHECK(start.lambda1 == 1.0);
    CHECK(start.lambda2 == 0.0);
    CHECK(start.entropy_bits == 0.0);
    CHECK(start.success_prob == doctest::Approx(1.0 / 64.0).epsilon(1e-13));

    const ClosedFormPoint n4 = closed_form_point(4, 1.0);
    CHECK(n4.lambda1 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(n4.lambda2 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(n4.entropy_bits == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(n4.success_prob == doctest::Approx(1.0).epsilon(1e-15));

    const std::size_t big = 1ul << 20;
    const ClosedFormPoint period = closed_form_point(big, entropy_period(big));
    CHECK(period.entropy_bits < 1e-6);

    CHECK_THROWS_AS(closed_form_point(4, -0.5), DomainError);
  }

  TEST_CASE("trace identity and ranges") {
    for (std::size_t n : {2ul, 3ul, 17ul, 1000ul, 1ul << 20}) {
      for (double t = 0.0; t < 3.0 * entropy_period(n); t += entropy_period(n) / 37.0) {
        const ClosedFormPoint p = closed_form_point(n, t);
        CHECK(std::abs(p.lambda1 + static_cast<double>(n - 1) * p.lambda2 - 1.0) < 1e-12);
        CHECK(p.entropy_bits >= 0.0);
        CHECK(p.entropy_bits <= std::log2(static_cast<double>(n)) + 1e-12);
        CHECK(p.sup_norm == std::max(p.lambda1, p.lambda2));
      }
    }
  }

  TEST_CASE("optimal iterations") {
    CHECK(optimal_iterations(4) == 1);
    CHECK(optimal_iterations(1ul << 20) == 804);
    CHECK(optimal_iterations(2) == 1);
    CHECK(optimal_iterations(16) == 3);
    for (std::size_t n : {2ul, 4ul, 8ul, 16ul, 64ul, 256ul, 1024ul}) {
      const std::size_t k = optimal_iterations(n);
      const double success = closed_form_point(n, static_cast<double>(k)).success_prob;
      CHECK(success >= 1.0 - 4.0 / static_cast<double>(n));
      if (n <= 256) {
        const double dense = run_schedule(n, n / 3, k).back().success_probability();
        CHECK(std::abs(success - dense) < 1e-10);
      }
    }
  }

  TEST_CASE("entropy curve sampling") {
    const auto curve = entropy_curve(4, 3.0, 1.0);
    REQUIRE(curve.size() == 4);
    CHECK(curve[0].entropy_bits == 0.0);
    CHECK(curve[1].entropy_bits == doctest::Approx(2.0));
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].t > curve[i - 1].t);

    CHECK(entropy_curve(16, 1.0, 0.1).size() == 11);
    CHECK_THROWS_AS(entropy_curve(16, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(entropy_curve(16, 0.0, 1.0), DomainError);
  }

  TEST_CASE("entropy curve is periodic with peak inside the period") {
    const std::size_t n = 1ul << 20;
    const double period = entropy_period(n);
    const auto curve = entropy_curve(n, 2.0 * period, 1.0);
    double peak = 0.0;
    double peak_t = 0.0;
    for (const auto& p : curve) {
      CHECK(std::abs(closed_form_point(n, p.t + period).entropy_bits - p.entropy_bits) < 1e-9);
      if (p.t < period && p.entropy_bits > peak) {
        peak = p.entropy_bits;
        peak_t = p.t;
      }
    }
    CHECK(peak <= 20.0);
    CHECK(peak_t > 0.0);
    CHECK(peak_t < period);
  }

  TEST_CASE("integer samples match dense simulation") {
    const auto curve = entropy_curve(16, static_cast<double>(period_steps(16)), 1.0);
    Ensemble e = initial_ensemble(16);
    for (std::size_t k = 0; k < curve.size(); ++k) {
      if (k > 0) e = grover_step(e);
      const double dense = von_neumann_entropy(spectrum_of(mix_conditionals(e)));
      CHECK(std::abs(dense - curve[k].entropy_bits) < 1e-9);
    }
  }

  TEST_CASE("sup-norm changes per step stay under 2 pi / sqrt(n)") {
    for (std::size_t n : {2ul, 4ul, 16ul, 1024ul, 1ul << 20}) {
      for (std::size_t k = 0; k < 2 * period_steps(n); ++k) {
        const double a = closed_form_point(n, static_cast<double>(k)).sup_norm;
        const double b = closed_form_point(n, static_cast<double>(k + 1)).sup_norm;
        CHECK(std::abs(b - a) <= drift_bound(n));
      }
    }
  }
}
