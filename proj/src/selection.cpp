#include "sped/selection.hpp"

#include <cmath>
#include <stdexcept>

namespace sped {

namespace {

void check_config(const SelectionConfig& config) {
  if (!(config.iota > 0.0) || !(config.lambda > 0.0) || !(config.iota < config.lambda)) {
    throw std::domain_error("SelectionConfig: need 0 < iota < lambda");
  }
  if (config.grid_size < 2) throw std::domain_error("SelectionConfig: grid_size must be >= 2");
  if (config.rate.k < 1) throw std::domain_error("SelectionConfig: k must be >= 1");
  if (config.m < 1) throw std::domain_error("SelectionConfig: m must be >= 1");
  if (!(config.quad_tolerance > 0.0)) {
    throw std::domain_error("SelectionConfig: quad_tolerance must be positive");
  }
}

std::size_t pick_n1(std::size_t n, const SelectionConfig& config) {
  const std::size_t n1 = config.force_n1 > 0 ? config.force_n1 : small_n_size(n);
  if (n1 < 2 || n1 > n) throw std::domain_error("select_small_n: n1 out of range");
  return n1;
}

}  // namespace

double rate_b(std::size_t n, int k) {
  if (n < 2) throw std::domain_error("rate_b: n must be >= 2");
  if (k < 1) throw std::domain_error("rate_b: k must be >= 1");
  const double l = static_cast<double>(k) * std::log(static_cast<double>(n));
  double num = 1.0;
  for (int i = 0; i < k; ++i) num *= l;
  return num / static_cast<double>(n);
}

double rate_r(std::size_t n, int k) {
  if (n < 2) throw std::domain_error("rate_r: n must be >= 2");
  if (k < 1) throw std::domain_error("rate_r: k must be >= 1");
  return std::pow(std::log(static_cast<double>(n)), -static_cast<double>(k));
}

std::size_t small_n_size(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

std::vector<double> make_alpha_grid(std::size_t n_ref, const SelectionConfig& config) {
  check_config(config);
  const double b = rate_b(n_ref, config.rate.k);
  const double lo = std::log(config.iota * b);
  const double hi = std::log(config.lambda * b);
  const auto count = static_cast<std::size_t>(config.grid_size);
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = std::exp(lo + frac * (hi - lo));
  }
  grid.front() = config.iota * b;
  grid.back() = config.lambda * b;
  return grid;
}

double rescale_alpha(double alpha_prime, std::size_t n, std::size_t n1, int k) {
  return alpha_prime * rate_b(n, k) / rate_b(n1, k);
}

double argmin_on_grid(const RiskCurve& curve) {
  if (curve.alphas.empty() || curve.alphas.size() != curve.values.size()) {
    throw std::invalid_argument("argmin_on_grid: empty or inconsistent curve");
  }
  double best_alpha = curve.alphas[0];
  double best_value = curve.values[0];
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    if (!std::isfinite(curve.values[i])) {
      throw std::runtime_error("argmin_on_grid: non-finite criterion value");
    }
    if (curve.values[i] <= best_value) {  // ties go to the largest alpha
      best_value = curve.values[i];
      best_alpha = curve.alphas[i];
    }
  }
  return best_alpha;
}

SelectionResult select_small_n(const SampleSpectrum& spectrum, const SelectionConfig& config) {
  check_config(config);
  const std::size_t n = spectrum.n();
  if (n < 4 && config.force_n1 == 0) {
    throw std::domain_error("select_small_n: requires n >= 4");
  }
  const std::size_t n1 = pick_n1(n, config);
  const auto alphas = make_alpha_grid(n1, config);
  SelectionResult result;
  result.method = SelectionMethod::SmallN;
  result.n1 = n1;
  result.curve = estimated_risk_curve(spectrum, alphas, n1);
  result.alpha_prime = argmin_on_grid(result.curve);
  result.alpha_hat = rescale_alpha(result.alpha_prime, n, n1, config.rate.k);
  return result;
}

SelectionResult select_small_n(const Sample& sample, const ErrorModel& error,
                               const SelectionConfig& config) {
  check_config(config);
  if (sample.n() < 4 && config.force_n1 == 0) {
    throw std::domain_error("select_small_n: requires n >= 4");
  }
  const std::size_t n1 = pick_n1(sample.n(), config);
  const auto alphas = make_alpha_grid(n1, config);
  const PenaltyKernel worst(alphas.front(), config.m, error);
  GridSpec spec;
  spec.tolerance = config.quad_tolerance;
  spec.oscillation_scale = std::max(sample.max_abs(), 1.0);
  spec.resolve_alpha = alphas.back();
  const auto grid = build_frequency_grid(worst, spec);
  const SampleSpectrum spectrum(sample, error, config.m, grid);
  return select_small_n(spectrum, config);
}

SelectionResult select_cv(const SampleSpectrum& spectrum, const SelectionConfig& config) {
  check_config(config);
  const auto alphas = make_alpha_grid(spectrum.n(), config);
  SelectionResult result;
  result.method = SelectionMethod::CrossValidation;
  result.n1 = spectrum.n();
  result.curve = cv_criterion(spectrum, alphas);
  result.alpha_prime = argmin_on_grid(result.curve);
  result.alpha_hat = result.alpha_prime;
  return result;
}

SelectionResult select_cv(const Sample& sample, const ErrorModel& error,
                          const SelectionConfig& config) {
  check_config(config);
  if (sample.n() < 2) throw std::domain_error("select_cv: requires n >= 2");
  const auto alphas = make_alpha_grid(sample.n(), config);
  const PenaltyKernel worst(alphas.front(), config.m, error);
  GridSpec spec;
  spec.tolerance = config.quad_tolerance;
  spec.oscillation_scale = std::max(sample.max_abs(), 1.0);
  spec.resolve_alpha = alphas.back();
  const auto grid = build_frequency_grid(worst, spec);
  const SampleSpectrum spectrum(sample, error, config.m, grid);
  return select_cv(spectrum, config);
}

SelectionResult select_oracle(const SpectralModel& model, const TargetSpectrum& target,
                              std::size_t n, const SelectionConfig& config) {
  check_config(config);
  if (n < 1) throw std::domain_error("select_oracle: n must be >= 1");
  const auto alphas = make_alpha_grid(std::max<std::size_t>(n, 2), config);
  SelectionResult result;
  result.method = SelectionMethod::Oracle;
  result.n1 = n;
  result.curve = true_risk_curve(model, target, alphas, n);
  result.alpha_prime = argmin_on_grid(result.curve);
  result.alpha_hat = result.alpha_prime;
  return result;
}

SelectionResult select_oracle(const NormalMixture& target, const ErrorModel& error,
                              std::size_t n, const SelectionConfig& config) {
  check_config(config);
  const auto alphas = make_alpha_grid(std::max<std::size_t>(n, 2), config);
  const PenaltyKernel worst(alphas.front(), config.m, error);
  GridSpec spec;
  spec.tolerance = config.quad_tolerance;
  spec.oscillation_scale =
      max_abs_component_mean(target) + 4.0 * (max_component_sd(target) + error.sd);
  spec.extra_decay_sd = min_component_sd(target);
  spec.resolve_alpha = alphas.back();
  const auto grid = build_frequency_grid(worst, spec);
  const SpectralModel model(error, config.m, grid);
  const TargetSpectrum tspec(target, grid);
  return select_oracle(model, tspec, n, config);
}

}  // namespace sped
