#include "sped/sample.hpp"

#include <cmath>
#include <stdexcept>

namespace sped {

double Sample::max_abs() const {
  double v = 0.0;
  for (double y : values) v = std::max(v, std::abs(y));
  return v;
}

Sample make_sample(std::vector<double> values) {
  for (double y : values) {
    if (!std::isfinite(y)) throw std::domain_error("Sample: values must be finite");
  }
  return Sample{std::move(values)};
}

std::complex<double> empirical_char_fn_at(const Sample& sample, double t) {
  if (sample.n() == 0) throw std::domain_error("empirical_char_fn: empty sample");
  double re = 0.0, im = 0.0;
  for (double y : sample.values) {
    re += std::cos(t * y);
    im -= std::sin(t * y);
  }
  const auto n = static_cast<double>(sample.n());
  return {re / n, im / n};
}

std::vector<std::complex<double>> empirical_char_fn(const Sample& sample,
                                                    std::span<const double> ts) {
  if (sample.n() == 0) throw std::domain_error("empirical_char_fn: empty sample");
  std::vector<std::complex<double>> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = empirical_char_fn_at(sample, ts[i]);
  return out;
}

std::vector<std::complex<double>> empirical_char_fn(const Sample& sample,
                                                    const FrequencyGrid& grid) {
  return empirical_char_fn(sample, std::span<const double>(grid.nodes));
}

double h_squared_hat_at(const Sample& sample, double t) {
  const auto n = static_cast<double>(sample.n());
  if (sample.n() < 2) throw std::domain_error("h_squared_hat: requires n >= 2");
  const auto p = empirical_char_fn_at(sample, t);
  return (n * std::norm(p) - 1.0) / (n - 1.0);
}

std::vector<double> h_squared_hat(const Sample& sample, const FrequencyGrid& grid) {
  const auto n = static_cast<double>(sample.n());
  if (sample.n() < 2) throw std::domain_error("h_squared_hat: requires n >= 2");
  const auto ecf = empirical_char_fn(sample, grid);
  std::vector<double> out(ecf.size());
  for (std::size_t i = 0; i < ecf.size(); ++i) {
    out[i] = (n * std::norm(ecf[i]) - 1.0) / (n - 1.0);
  }
  return out;
}

}  // namespace sped
