#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sped/frequency_grid.hpp"

namespace sped {

// Observed contaminated sample Y_1..Y_n.
struct Sample {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
  double max_abs() const;
};

// Throws std::domain_error on non-finite entries.
Sample make_sample(std::vector<double> values);

// P~_n(t) = (1/n) sum_j exp(-i t Y_j); |P~_n| <= 1 and P~_n(0) = 1 exactly.
std::complex<double> empirical_char_fn_at(const Sample& sample, double t);
std::vector<std::complex<double>> empirical_char_fn(const Sample& sample,
                                                    std::span<const double> ts);
std::vector<std::complex<double>> empirical_char_fn(const Sample& sample,
                                                    const FrequencyGrid& grid);

// H~_n(t) = (n |P~_n(t)|^2 - 1) / (n - 1), the unbiased estimator of |h~(t)|^2.
// May be negative; H~_n(0) = 1 exactly. Requires n >= 2.
double h_squared_hat_at(const Sample& sample, double t);
std::vector<double> h_squared_hat(const Sample& sample, const FrequencyGrid& grid);

}  // namespace sped
