#pragma once

#include <cstddef>
#include <vector>

#include "sped/risk.hpp"

namespace sped {

// Smoothness assumption: f has k square-integrable derivatives. For Gaussian
// error the optimal-penalty scale is b_n = (k log n)^k / n and the risk rate
// is r_n = (log n)^(-k).
struct RateModel {
  int k = 1;
};

double rate_b(std::size_t n, int k);
double rate_r(std::size_t n, int k);

enum class SelectionMethod { SmallN, CrossValidation, Oracle };

struct SelectionConfig {
  RateModel rate{};
  double iota = 1e-3;          // lower grid factor
  double lambda = 1e3;         // upper grid factor
  int grid_size = 100;         // log-spaced alpha values
  int m = 1;                   // penalized derivative order
  double quad_tolerance = 1e-10;
  std::size_t force_n1 = 0;    // test hook; 0 = use the ceil(sqrt(n)) rule
};

struct SelectionResult {
  double alpha_hat = 0.0;    // final choice for sample size n
  double alpha_prime = 0.0;  // minimizer at n1 (small-n method; == alpha_hat otherwise)
  std::size_t n1 = 0;
  RiskCurve curve;
  SelectionMethod method = SelectionMethod::SmallN;
};

std::size_t small_n_size(std::size_t n);  // ceil(sqrt(n))

// grid_size log-spaced points spanning [iota * b_{n_ref}, lambda * b_{n_ref}].
std::vector<double> make_alpha_grid(std::size_t n_ref, const SelectionConfig& config);

// alpha_hat = alpha_prime * b_n / b_{n1}.
double rescale_alpha(double alpha_prime, std::size_t n, std::size_t n1, int k);

// Minimizing alpha; ties break toward the largest alpha (more smoothing).
double argmin_on_grid(const RiskCurve& curve);

// Minimize R^(alpha, n1) with n1 = ceil(sqrt(n)) over the b_{n1}-scale grid,
// then rescale the minimizer to sample size n. Requires n >= 4.
SelectionResult select_small_n(const Sample& sample, const ErrorModel& error,
                               const SelectionConfig& config);
SelectionResult select_small_n(const SampleSpectrum& spectrum, const SelectionConfig& config);

// Minimize the cross-validation criterion over the b_n-scale grid.
SelectionResult select_cv(const Sample& sample, const ErrorModel& error,
                          const SelectionConfig& config);
SelectionResult select_cv(const SampleSpectrum& spectrum, const SelectionConfig& config);

// Minimize the true risk (requires the target; simulation only).
SelectionResult select_oracle(const NormalMixture& target, const ErrorModel& error,
                              std::size_t n, const SelectionConfig& config);
SelectionResult select_oracle(const SpectralModel& model, const TargetSpectrum& target,
                              std::size_t n, const SelectionConfig& config);

}  // namespace sped
