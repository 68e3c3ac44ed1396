#pragma once

#include <complex>

#include "sped/error_model.hpp"

namespace sped {

// |t|^(2m) computed as (t^2)^m without pow().
inline double abs_pow_2m(double t, int m) {
  const double t2 = t * t;
  double v = 1.0;
  for (int i = 0; i < m; ++i) v *= t2;
  return v;
}

// Spectral filter parameters: penalty weight alpha on the m-th derivative
// roughness, against a known error model.
struct PenaltyKernel {
  double alpha;
  int m;
  ErrorModel error;

  PenaltyKernel(double alpha_, int m_, ErrorModel error_);
};

// phi~_alpha(t) = conj(g~(t)) / (|g~(t)|^2 + alpha |t|^(2m)).
// Real-valued for the Gaussian family; the denominator is >= min(1, alpha|t|^(2m)) > 0.
double phi_tilde_real(const PenaltyKernel& kernel, double t);
std::complex<double> phi_tilde(const PenaltyKernel& kernel, double t);

}  // namespace sped
