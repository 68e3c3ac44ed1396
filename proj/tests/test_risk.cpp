#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sped/estimator.hpp"
#include "sped/risk.hpp"
#include "sped/selection.hpp"
#include "test_util.hpp"

using namespace sped;
using sped::test::linspace;
using sped::test::noisy_sample;
using sped::test::trapezoid;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

FrequencyGrid sweep_grid(const Sample& sample, const ErrorModel& error, int m,
                         std::span<const double> alphas, double extra_decay = 0.0) {
  const PenaltyKernel worst(alphas.front(), m, error);
  GridSpec spec;
  spec.tolerance = 1e-10;
  spec.oscillation_scale = std::max(sample.max_abs(), 4.0);
  spec.resolve_alpha = alphas.back();
  spec.extra_decay_sd = extra_decay;
  return build_frequency_grid(worst, spec);
}

}  // namespace

TEST_CASE("cross-validation criterion is identical to the n1 = n risk estimate") {
  const auto err = gaussian_error(0.4);
  SelectionConfig cfg;
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    for (std::size_t n : {7u, 23u, 57u}) {
      const auto sample = noisy_sample(mw_density(6), err, n, seed);
      const auto alphas = make_alpha_grid(n, cfg);
      const auto grid = sweep_grid(sample, err, 1, alphas);
      const SampleSpectrum spectrum(sample, err, 1, grid);
      const auto risk = estimated_risk_curve(spectrum, alphas, n);
      const auto cv = cv_criterion(spectrum, alphas);
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        CHECK(std::abs(risk.values[i] - cv.values[i]) <=
              1e-10 * (1.0 + std::abs(cv.values[i])));
      }
    }
  }
}

TEST_CASE("u-statistic route equals the spectral route") {
  const auto err = gaussian_error(0.5);
  const auto sample = make_sample({-1.0, 0.0, 1.0});
  const double alpha = 0.2;
  const PenaltyKernel kernel(alpha, 1, err);
  const auto grid = build_frequency_grid(kernel, 1e-10, 2.0);
  const SampleSpectrum spectrum(sample, err, 1, grid);
  const double spectral = estimated_risk_at(spectrum, alpha, 3);
  const double ustat = estimated_risk_ustat(sample, alpha, 3, 1, err, grid);
  CHECK(std::abs(spectral - ustat) <= 1e-6 * (1.0 + std::abs(spectral)));
}

TEST_CASE("u-statistic route across sizes and n1 choices") {
  const auto err = gaussian_error(0.4);
  for (std::size_t n : {5u, 16u}) {
    const auto sample = sped::test::gaussian_sample(n, 900 + n);
    for (double alpha : {1e-3, 1e-1}) {
      const PenaltyKernel kernel(alpha, 1, err);
      const auto grid = build_frequency_grid(kernel, 1e-10, sample.max_abs() + 1.0);
      const SampleSpectrum spectrum(sample, err, 1, grid);
      for (std::size_t n1 : {std::size_t{2}, n}) {
        const double spectral = estimated_risk_at(spectrum, alpha, n1);
        const double ustat = estimated_risk_ustat(sample, alpha, n1, 1, err, grid);
        CHECK(std::abs(spectral - ustat) <= 1e-6 * (1.0 + std::abs(spectral)));
      }
    }
  }
}

TEST_CASE("u-statistic route refuses oversized samples") {
  const auto err = gaussian_error(0.5);
  const auto sample = sped::test::gaussian_sample(25, 1);
  const PenaltyKernel kernel(0.1, 1, err);
  const auto grid = build_frequency_grid(kernel, 1e-10, sample.max_abs() + 1.0);
  CHECK_THROWS_AS(estimated_risk_ustat(sample, 0.1, 5, 1, err, grid, 20), std::domain_error);
}

TEST_CASE("pair kernel is even and its sup scales about like 1/alpha") {
  const auto err = gaussian_error(0.5);
  const auto sample = sped::test::gaussian_sample(12, 77);
  const auto xs = linspace(0.0, 6.0, 61);

  double prev_sup = 0.0;
  for (int level = 1; level <= 4; ++level) {
    const double alpha = std::pow(10.0, -level);
    const PenaltyKernel kernel(alpha, 1, err);
    const auto grid = build_frequency_grid(kernel, 1e-10, sample.max_abs() + 6.0);
    const SampleSpectrum spectrum(sample, err, 1, grid);
    for (double x : {0.3, 1.7, 4.4}) {
      CHECK(theta_kernel(spectrum, alpha, 3, x) ==
            doctest::Approx(theta_kernel(spectrum, alpha, 3, -x)).epsilon(1e-10));
    }
    double sup = 0.0;
    for (double x : xs) sup = std::max(sup, std::abs(theta_kernel(spectrum, alpha, 3, x)));
    if (level > 1) CHECK(sup <= 15.0 * prev_sup);
    prev_sup = sup;
  }
}

TEST_CASE("true risk vanishes in the huge-penalty limit") {
  const auto target = mw_density(1);
  const auto err = gaussian_error(1.0 / 3.0);
  const PenaltyKernel kernel(1e8, 1, err);
  const auto grid = build_frequency_grid(kernel, 1e-10, 4.0);
  CHECK(std::abs(true_risk(1e8, 100, target, err, 1, grid)) < 1e-3);
}

TEST_CASE("risk formula consistency between the two spectral routes") {
  const auto target = mw_density(1);
  const auto err = gaussian_error(calibrate_noise_sd(1.0, 0.1));
  const PenaltyKernel kernel(0.05, 1, err);
  GridSpec spec;
  spec.tolerance = 1e-10;
  spec.oscillation_scale = 6.0;
  spec.extra_decay_sd = min_component_sd(target);
  const auto grid = build_frequency_grid(kernel, spec);
  const SpectralModel model(err, 1, grid);
  const TargetSpectrum tspec(target, grid);

  const auto bv = true_bias_var(model, tspec, 0.05, 100);
  const double f_norm_grid = grid.integrate_even(std::vector<double>(
                                 tspec.cf_power().begin(), tspec.cf_power().end())) /
                             kTwoPi;
  const double lhs = kTwoPi * (bv.bias_sq + bv.int_var - f_norm_grid);
  const double rhs = true_risk(model, tspec, 0.05, 100);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
}

TEST_CASE("bias limits at the ends of the penalty range") {
  const auto target = mw_density(1);
  const auto err = gaussian_error(0.33);
  SUBCASE("bias vanishes as alpha -> 0") {
    const PenaltyKernel kernel(1e-8, 1, err);
    const auto grid = build_frequency_grid(kernel, 1e-10, 6.0);
    const auto bv = true_bias_var(1e-8, target, err, 1, 100, grid);
    CHECK(bv.bias_sq >= 0.0);
    CHECK(bv.bias_sq < 1e-3);
  }
  SUBCASE("bias approaches the squared norm as alpha -> inf") {
    const PenaltyKernel kernel(1e10, 1, err);
    GridSpec spec;
    spec.tolerance = 1e-10;
    spec.oscillation_scale = 6.0;
    spec.extra_decay_sd = 1.0;
    const auto grid = build_frequency_grid(kernel, spec);
    const auto bv = true_bias_var(1e10, target, err, 1, 100, grid);
    CHECK(bv.bias_sq == doctest::Approx(mixture_l2_norm_sq(target)).epsilon(1e-4));
  }
}

TEST_CASE("integrated variance scales exactly as 1/n on a shared grid") {
  const auto target = mw_density(2);
  const auto err = gaussian_error(0.4);
  const PenaltyKernel kernel(0.02, 1, err);
  GridSpec spec;
  spec.tolerance = 1e-10;
  spec.oscillation_scale = 8.0;
  spec.extra_decay_sd = min_component_sd(target);
  const auto grid = build_frequency_grid(kernel, spec);
  const SpectralModel model(err, 1, grid);
  const TargetSpectrum tspec(target, grid);
  const auto at_100 = true_bias_var(model, tspec, 0.02, 100);
  const auto at_500 = true_bias_var(model, tspec, 0.02, 500);
  CHECK(at_100.int_var == doctest::Approx(5.0 * at_500.int_var).epsilon(1e-14));
  CHECK(at_100.bias_sq == at_500.bias_sq);
  CHECK(at_100.int_var >= 0.0);
  CHECK(at_100.int_var <= filter_l2_sq(model, 0.02) / (kTwoPi * 100.0) + 1e-12);
}

TEST_CASE("realized loss approaches the squared norm for huge penalties") {
  const auto target = mw_density(1);
  const auto err = gaussian_error(1.0 / 3.0);
  const auto sample = noisy_sample(target, err, 50, 5);
  const PenaltyKernel kernel(1e8, 1, err);
  GridSpec spec;
  spec.tolerance = 1e-10;
  spec.oscillation_scale = std::max(sample.max_abs(), 6.0);
  spec.extra_decay_sd = 1.0;
  const auto grid = build_frequency_grid(kernel, spec);
  const double loss = true_loss_ise(sample, 1e8, target, err, 1, grid);
  CHECK(loss == doctest::Approx(mixture_l2_norm_sq(target)).epsilon(1e-3));
  CHECK(loss >= 0.0);
}

TEST_CASE("spectral loss matches an x-space Riemann sum") {
  const auto target = mw_density(1);
  const auto err = gaussian_error(calibrate_noise_sd(1.0, 0.1));
  const auto sample = noisy_sample(target, err, 10, 42);
  const double alpha = 0.1;
  const PenaltyKernel kernel(alpha, 1, err);
  GridSpec spec;
  spec.tolerance = 1e-12;
  spec.oscillation_scale = std::max({sample.max_abs(), 14.0});
  spec.extra_decay_sd = 1.0;
  const auto grid = build_frequency_grid(kernel, spec);
  const double spectral = true_loss_ise(sample, alpha, target, err, 1, grid);

  const auto xs = linspace(-14.0, 14.0, 14001);
  const auto fhat = estimate_density(sample, kernel, xs, grid);
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = fhat[i] - mixture_pdf(target, xs[i]);
    sq[i] = d * d;
  }
  const double x_space = trapezoid(sq, xs[1] - xs[0]);
  CHECK(spectral == doctest::Approx(x_space).epsilon(1e-4));
}

TEST_CASE("estimated risk curve vanishes for huge penalties") {
  const auto err = gaussian_error(0.5);
  const auto sample = sped::test::gaussian_sample(20, 9);
  const double alpha = 1e8;
  const PenaltyKernel kernel(alpha, 1, err);
  const auto grid = build_frequency_grid(kernel, 1e-10, sample.max_abs() + 1.0);
  const SampleSpectrum spectrum(sample, err, 1, grid);
  CHECK(std::abs(estimated_risk_at(spectrum, alpha, 5)) < 1e-3);
  CHECK(std::abs(cv_criterion_at(spectrum, alpha)) < 1e-3);
}

TEST_CASE("estimated risk is unbiased for the true risk (Monte Carlo)") {
  const auto target = mw_density(1);
  const auto err = gaussian_error(calibrate_noise_sd(1.0, 0.1));
  const double alpha = 0.1;
  const std::size_t n = 30, n1 = 5;
  const PenaltyKernel kernel(alpha, 1, err);
  GridSpec spec;
  spec.tolerance = 1e-10;
  spec.oscillation_scale = 16.0;
  const auto grid = build_frequency_grid(kernel, spec);
  const SpectralModel model(err, 1, grid);
  const TargetSpectrum tspec(target, grid);
  const double truth = true_risk(model, tspec, alpha, n1);

  const int reps = 600;
  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto sample = noisy_sample(target, err, n, 30000 + r);
    const SampleSpectrum spectrum(sample, err, 1, grid);
    const double v = estimated_risk_at(spectrum, alpha, n1);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / reps;
  const double var = (sum_sq - sum * sum / reps) / (reps - 1);
  const double se = std::sqrt(var / reps);
  CHECK(std::abs(mean - truth) <= 4.0 * se);
}

TEST_CASE("cross-validation criterion is unbiased for the full-sample risk") {
  const auto target = mw_density(1);
  const auto err = gaussian_error(calibrate_noise_sd(1.0, 0.1));
  const double alpha = 0.2;
  const std::size_t n = 50;
  const PenaltyKernel kernel(alpha, 1, err);
  GridSpec spec;
  spec.tolerance = 1e-10;
  spec.oscillation_scale = 16.0;
  const auto grid = build_frequency_grid(kernel, spec);
  const SpectralModel model(err, 1, grid);
  const TargetSpectrum tspec(target, grid);
  const double truth = true_risk(model, tspec, alpha, n);

  const int reps = 2000;
  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto sample = noisy_sample(target, err, n, 41000 + r);
    const SampleSpectrum spectrum(sample, err, 1, grid);
    const double v = cv_criterion_at(spectrum, alpha);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / reps;
  const double var = (sum_sq - sum * sum / reps) / (reps - 1);
  const double se = std::sqrt(var / reps);
  CHECK(std::abs(mean - truth) <= 3.0 * se);
}

TEST_CASE("decomposition reassembles the criterion and tracks n1 exactly") {
  const auto err = gaussian_error(0.4);
  const auto sample = sped::test::gaussian_sample(40, 17);
  const double alpha = 0.05;
  const PenaltyKernel kernel(alpha, 1, err);
  const auto grid = build_frequency_grid(kernel, 1e-10, sample.max_abs() + 1.0);
  const SampleSpectrum spectrum(sample, err, 1, grid);

  const auto parts = decompose_risk_estimate(spectrum, alpha, 10);
  const double whole = estimated_risk_at(spectrum, alpha, 10);
  CHECK(std::abs(parts.b_hat + parts.v_over_n1 - whole) <= 1e-10 * (1.0 + std::abs(whole)));

  // B^ depends on n1 only through (n1 - 1)/n1.
  const auto parts_big = decompose_risk_estimate(spectrum, alpha, 1000000);
  const auto& model = spectrum.model();
  double int_phi2_h = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = model.g_sq()[i] + alpha * model.t_pow()[i];
    int_phi2_h += grid.weights[i] * (model.g_sq()[i] / (d * d)) * spectrum.h_hat()[i];
  }
  int_phi2_h *= 2.0;
  const double expected_gap = (1.0 / 10.0 - 1e-6) * int_phi2_h;
  CHECK(parts_big.b_hat - parts.b_hat ==
        doctest::Approx(expected_gap).epsilon(1e-12));
}

TEST_CASE("filter mass V(alpha) is strictly decreasing in alpha") {
  const auto err = gaussian_error(0.4);
  const PenaltyKernel kernel(1e-4, 1, err);
  const auto grid = build_frequency_grid(kernel, 1e-10, 4.0);
  const SpectralModel model(err, 1, grid);
  double prev = filter_l2_sq(model, 1e-4);
  for (double alpha : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const double v = filter_l2_sq(model, alpha);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("domain errors on degenerate inputs") {
  const auto err = gaussian_error(0.5);
  const auto sample = sped::test::gaussian_sample(6, 3);
  const PenaltyKernel kernel(0.1, 1, err);
  const auto grid = build_frequency_grid(kernel, 1e-10, sample.max_abs() + 1.0);
  const SampleSpectrum spectrum(sample, err, 1, grid);
  CHECK_THROWS_AS(estimated_risk_at(spectrum, 0.1, 1), std::domain_error);
  CHECK_THROWS_AS(estimated_risk_at(spectrum, -0.5, 4), std::domain_error);
  CHECK_THROWS_AS((SampleSpectrum{make_sample({1.0}), err, 1, grid}), std::domain_error);
}
