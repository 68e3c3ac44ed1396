#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sped/frequency_grid.hpp"
#include "sped/mixture.hpp"
#include "sped/sample.hpp"

namespace sped {

enum class CurveKind { TrueRisk, EstimatedRisk, CrossValidation, TrueLoss };

// Criterion values over an ascending alpha grid. Values live on the surrogate
// scale 2pi(risk - ||f||^2); only ratios and argmins are consumed downstream.
struct RiskCurve {
  std::vector<double> alphas;
  std::vector<double> values;
  std::size_t n1 = 0;
  CurveKind kind = CurveKind::EstimatedRisk;
};

// R^(alpha, n1) split as B^(alpha, n1) + V(alpha)/n1.
struct RiskDecomposition {
  double b_hat;
  double v_over_n1;
};

struct BiasVariance {
  double bias_sq;  // int (E f_n^alpha - f)^2
  double int_var;  // int Var(f_n^alpha)
};

// Filter tables per (error, m, grid); alpha enters each criterion as an O(K)
// pass over these arrays. The grid must outlive the model.
class SpectralModel {
 public:
  SpectralModel(ErrorModel error, int m, const FrequencyGrid& grid);

  const FrequencyGrid& grid() const { return *grid_; }
  const ErrorModel& error() const { return error_; }
  int m() const { return m_; }
  std::span<const double> g() const { return g_; }         // g~(t)
  std::span<const double> g_sq() const { return g2_; }     // g~(t)^2
  std::span<const double> t_pow() const { return tpow_; }  // |t|^(2m)

 private:
  const FrequencyGrid* grid_;
  ErrorModel error_;
  int m_;
  std::vector<double> g_, g2_, tpow_;
};

// Sample-side spectral arrays on the same grid. The O(nK) empirical
// characteristic function pass happens once, here; criteria then cost O(K)
// per alpha and reuse |P~_n|^2 across the whole sweep.
class SampleSpectrum {
 public:
  SampleSpectrum(const Sample& sample, ErrorModel error, int m, const FrequencyGrid& grid);

  const SpectralModel& model() const { return model_; }
  const FrequencyGrid& grid() const { return model_.grid(); }
  std::size_t n() const { return n_; }
  double max_abs() const { return max_abs_; }
  std::span<const std::complex<double>> ecf() const { return ecf_; }
  std::span<const double> ecf_power() const { return pn2_; }  // |P~_n|^2
  std::span<const double> h_hat() const { return h_; }        // H~_n

 private:
  SpectralModel model_;
  std::size_t n_;
  double max_abs_;
  std::vector<std::complex<double>> ecf_;
  std::vector<double> pn2_, h_;
};

// Target-side spectral arrays (simulation ground truth).
class TargetSpectrum {
 public:
  TargetSpectrum(const NormalMixture& target, const FrequencyGrid& grid);

  std::span<const std::complex<double>> cf() const { return cf_; }
  std::span<const double> cf_power() const { return f2_; }  // |f~|^2

 private:
  std::vector<std::complex<double>> cf_;
  std::vector<double> f2_;
};

// V(alpha) = int |phi~_alpha(t)|^2 dt.
double filter_l2_sq(const SpectralModel& model, double alpha);

// Surrogate risk R(alpha, n) = ((n-1)/n) int |phi~|^2 |h~|^2
//   - 2 int (phi~/conj g~) |h~|^2 + (1/n) int |phi~|^2, with h~ = g~ f~.
double true_risk(const SpectralModel& model, const TargetSpectrum& target, double alpha,
                 std::size_t n);
double true_risk(double alpha, std::size_t n, const NormalMixture& target,
                 const ErrorModel& error, int m, const FrequencyGrid& grid);
RiskCurve true_risk_curve(const SpectralModel& model, const TargetSpectrum& target,
                          std::span<const double> alphas, std::size_t n);

// Integrated squared bias and integrated variance via the spectral formulas.
BiasVariance true_bias_var(const SpectralModel& model, const TargetSpectrum& target,
                           double alpha, std::size_t n);
BiasVariance true_bias_var(double alpha, const NormalMixture& target, const ErrorModel& error,
                           int m, std::size_t n, const FrequencyGrid& grid);

// Realized integrated squared error of this sample's estimate,
// (1/2pi) int |phi~ P~_n - f~|^2.
double true_loss_ise(const SampleSpectrum& sample, const TargetSpectrum& target, double alpha);
double true_loss_ise(const Sample& sample, double alpha, const NormalMixture& target,
                     const ErrorModel& error, int m, const FrequencyGrid& grid);

// Small-n risk criterion R^(alpha, n1); unbiased for R(alpha, n1). n1 >= 2.
double estimated_risk_at(const SampleSpectrum& sample, double alpha, std::size_t n1);
RiskCurve estimated_risk_curve(const SampleSpectrum& sample, std::span<const double> alphas,
                               std::size_t n1);
RiskCurve estimated_risk_curve(const Sample& sample, std::span<const double> alphas,
                               std::size_t n1, int m, const ErrorModel& error,
                               const FrequencyGrid& grid);

// Cross-validation criterion L^(alpha) = ||f~_n^alpha||^2 - 2 int (phi~/conj g~) H~_n.
// Identical to R^(alpha, n) pointwise; computed through its own formula.
double cv_criterion_at(const SampleSpectrum& sample, double alpha);
RiskCurve cv_criterion(const SampleSpectrum& sample, std::span<const double> alphas);
RiskCurve cv_criterion(const Sample& sample, std::span<const double> alphas, int m,
                       const ErrorModel& error, const FrequencyGrid& grid);

RiskDecomposition decompose_risk_estimate(const SampleSpectrum& sample, double alpha,
                                          std::size_t n1);

// Pair kernel theta_alpha(x), the inverse Fourier transform of
// theta~_alpha(t) = (n(n1-1)/(n1(n-1))) |phi~|^2 - (2n/(n-1)) phi~/conj g~,
// evaluated by the same grid quadrature.
double theta_kernel(const SampleSpectrum& sample, double alpha, std::size_t n1, double x);

// O(n^2) U-statistic route to R^(alpha, n1): explicit constant plus
// (2pi/n^2)[n theta(0) + 2 sum_{j<k} theta(Y_j - Y_k)]. Refuses n > n_cap.
// Serves as an independent computation oracle for estimated_risk_at.
double estimated_risk_ustat(const Sample& sample, double alpha, std::size_t n1, int m,
                            const ErrorModel& error, const FrequencyGrid& grid,
                            std::size_t n_cap = 200);

}  // namespace sped
