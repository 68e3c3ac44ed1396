#pragma once

#include <complex>
#include <random>
#include <vector>

namespace sped {

// Only the Gaussian family is supported. Keeping this a closed enum (rather
// than an open interface) is what keeps the analytic tail bounds in
// frequency_grid.cpp valid.
enum class ErrorKind { Gaussian };

// Known zero-mean noise density g of E in Y = X + E.
struct ErrorModel {
  ErrorKind kind = ErrorKind::Gaussian;
  double sd = 1.0;
};

// Validates sd >= 0. sd == 0 is allowed only as a calibration edge case;
// PenaltyKernel rejects it for actual deconvolution.
ErrorModel gaussian_error(double sd);

// g~(t) = exp(-sd^2 t^2 / 2). Real, positive and even for the Gaussian family.
double char_fn_real(const ErrorModel& model, double t);
std::complex<double> char_fn(const ErrorModel& model, double t);

// Solves p = Var(E) / (var_x + Var(E)) for the noise sd, assuming X and E
// independent. Requires var_x > 0 and 0 <= p < 1.
double calibrate_noise_sd(double var_x, double p);

// count i.i.d. draws from g; deterministic given the generator state.
std::vector<double> sample_error(const ErrorModel& model, std::mt19937_64& rng, std::size_t count);

}  // namespace sped
