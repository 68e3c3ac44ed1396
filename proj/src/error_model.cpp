#include "sped/error_model.hpp"

#include <cmath>
#include <stdexcept>

namespace sped {

ErrorModel gaussian_error(double sd) {
  if (!(sd >= 0.0) || !std::isfinite(sd)) {
    throw std::domain_error("gaussian_error: sd must be finite and >= 0");
  }
  return ErrorModel{ErrorKind::Gaussian, sd};
}

double char_fn_real(const ErrorModel& model, double t) {
  return std::exp(-0.5 * model.sd * model.sd * t * t);
}

std::complex<double> char_fn(const ErrorModel& model, double t) {
  return {char_fn_real(model, t), 0.0};
}

double calibrate_noise_sd(double var_x, double p) {
  if (!(var_x > 0.0) || !std::isfinite(var_x)) {
    throw std::domain_error("calibrate_noise_sd: var_x must be positive");
  }
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::domain_error("calibrate_noise_sd: p must lie in [0, 1)");
  }
  return std::sqrt(p * var_x / (1.0 - p));
}

std::vector<double> sample_error(const ErrorModel& model, std::mt19937_64& rng, std::size_t count) {
  std::vector<double> out(count);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& v : out) v = model.sd * normal(rng);
  return out;
}

}  // namespace sped
