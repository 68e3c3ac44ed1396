#include "sped/filter.hpp"

#include <cmath>
#include <stdexcept>

namespace sped {

PenaltyKernel::PenaltyKernel(double alpha_, int m_, ErrorModel error_)
    : alpha(alpha_), m(m_), error(error_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("PenaltyKernel: alpha must be positive and finite");
  }
  if (m < 1) {
    throw std::domain_error("PenaltyKernel: m must be >= 1");
  }
  if (!(error.sd > 0.0)) {
    throw std::domain_error("PenaltyKernel: error sd must be positive for deconvolution");
  }
}

double phi_tilde_real(const PenaltyKernel& kernel, double t) {
  const double g = char_fn_real(kernel.error, t);
  return g / (g * g + kernel.alpha * abs_pow_2m(t, kernel.m));
}

std::complex<double> phi_tilde(const PenaltyKernel& kernel, double t) {
  return {phi_tilde_real(kernel, t), 0.0};
}

}  // namespace sped
