#include "sped/risk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sped {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("risk: alpha must be positive and finite");
  }
}

void check_n1(std::size_t n1) {
  if (n1 < 2) throw std::domain_error("risk: n1 must be >= 2");
}

}  // namespace

SpectralModel::SpectralModel(ErrorModel error, int m, const FrequencyGrid& grid)
    : grid_(&grid), error_(error), m_(m) {
  if (m < 1) throw std::domain_error("SpectralModel: m must be >= 1");
  const auto k = grid.size();
  g_.resize(k);
  g2_.resize(k);
  tpow_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = grid.nodes[i];
    g_[i] = char_fn_real(error, t);
    g2_[i] = g_[i] * g_[i];
    tpow_[i] = abs_pow_2m(t, m);
  }
}

SampleSpectrum::SampleSpectrum(const Sample& sample, ErrorModel error, int m,
                               const FrequencyGrid& grid)
    : model_(error, m, grid), n_(sample.n()), max_abs_(sample.max_abs()) {
  if (n_ < 2) throw std::domain_error("SampleSpectrum: requires n >= 2");
  if (max_abs_ > grid.oscillation_scale * (1.0 + 1e-12)) {
    throw std::invalid_argument("SampleSpectrum: grid oscillation_scale below max |Y_j|");
  }
  ecf_ = empirical_char_fn(sample, grid);
  const auto k = grid.size();
  pn2_.resize(k);
  h_.resize(k);
  const auto n = static_cast<double>(n_);
  for (std::size_t i = 0; i < k; ++i) {
    pn2_[i] = std::norm(ecf_[i]);
    h_[i] = (n * pn2_[i] - 1.0) / (n - 1.0);
  }
}

TargetSpectrum::TargetSpectrum(const NormalMixture& target, const FrequencyGrid& grid) {
  const auto k = grid.size();
  cf_.resize(k);
  f2_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    cf_[i] = mixture_char_fn(target, grid.nodes[i]);
    f2_[i] = std::norm(cf_[i]);
  }
}

double filter_l2_sq(const SpectralModel& model, double alpha) {
  check_alpha(alpha);
  const auto& grid = model.grid();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = g2[i] + alpha * tp[i];
    acc += grid.weights[i] * g2[i] / (d * d);
  }
  return 2.0 * acc;
}

double true_risk(const SpectralModel& model, const TargetSpectrum& target, double alpha,
                 std::size_t n) {
  check_alpha(alpha);
  if (n < 1) throw std::domain_error("true_risk: n must be >= 1");
  const auto& grid = model.grid();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto f2 = target.cf_power();
  double s_phi2_h2 = 0.0, s_ratio_h2 = 0.0, s_phi2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    const double d = g2[i] + alpha * tp[i];
    const double phi2 = g2[i] / (d * d);
    const double h2 = g2[i] * f2[i];
    s_phi2_h2 += w * phi2 * h2;
    s_ratio_h2 += w * h2 / d;
    s_phi2 += w * phi2;
  }
  const auto nn = static_cast<double>(n);
  return 2.0 * (((nn - 1.0) / nn) * s_phi2_h2 - 2.0 * s_ratio_h2 + s_phi2 / nn);
}

double true_risk(double alpha, std::size_t n, const NormalMixture& target,
                 const ErrorModel& error, int m, const FrequencyGrid& grid) {
  const SpectralModel model(error, m, grid);
  const TargetSpectrum spec(target, grid);
  return true_risk(model, spec, alpha, n);
}

RiskCurve true_risk_curve(const SpectralModel& model, const TargetSpectrum& target,
                          std::span<const double> alphas, std::size_t n) {
  RiskCurve curve;
  curve.alphas.assign(alphas.begin(), alphas.end());
  curve.values.reserve(alphas.size());
  curve.n1 = n;
  curve.kind = CurveKind::TrueRisk;
  for (double a : alphas) curve.values.push_back(true_risk(model, target, a, n));
  return curve;
}

BiasVariance true_bias_var(const SpectralModel& model, const TargetSpectrum& target,
                           double alpha, std::size_t n) {
  check_alpha(alpha);
  const auto& grid = model.grid();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto f2 = target.cf_power();
  double s_bias = 0.0, s_smooth = 0.0, s_phi2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    const double d = g2[i] + alpha * tp[i];
    const double shrink = alpha * tp[i] / d;  // 1 - phi~ g~
    const double pass = g2[i] / d;            // phi~ g~
    s_bias += w * shrink * shrink * f2[i];
    s_smooth += w * pass * pass * f2[i];
    s_phi2 += w * g2[i] / (d * d);
  }
  const auto nn = static_cast<double>(n);
  BiasVariance out;
  out.bias_sq = 2.0 * s_bias / kTwoPi;
  out.int_var = 2.0 * (s_phi2 - s_smooth) / (kTwoPi * nn);
  return out;
}

BiasVariance true_bias_var(double alpha, const NormalMixture& target, const ErrorModel& error,
                           int m, std::size_t n, const FrequencyGrid& grid) {
  const SpectralModel model(error, m, grid);
  const TargetSpectrum spec(target, grid);
  return true_bias_var(model, spec, alpha, n);
}

double true_loss_ise(const SampleSpectrum& sample, const TargetSpectrum& target, double alpha) {
  check_alpha(alpha);
  const auto& model = sample.model();
  const auto& grid = model.grid();
  const auto g = model.g();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto ecf = sample.ecf();
  const auto pn2 = sample.ecf_power();
  const auto fcf = target.cf();
  const auto f2 = target.cf_power();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = g2[i] + alpha * tp[i];
    const double phi = g[i] / d;
    const double cross = ecf[i].real() * fcf[i].real() + ecf[i].imag() * fcf[i].imag();
    acc += grid.weights[i] * (phi * phi * pn2[i] - 2.0 * phi * cross + f2[i]);
  }
  return 2.0 * acc / kTwoPi;
}

double true_loss_ise(const Sample& sample, double alpha, const NormalMixture& target,
                     const ErrorModel& error, int m, const FrequencyGrid& grid) {
  const SampleSpectrum spec(sample, error, m, grid);
  const TargetSpectrum tspec(target, grid);
  return true_loss_ise(spec, tspec, alpha);
}

double estimated_risk_at(const SampleSpectrum& sample, double alpha, std::size_t n1) {
  check_alpha(alpha);
  check_n1(n1);
  const auto& model = sample.model();
  const auto& grid = model.grid();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto h = sample.h_hat();
  double s_phi2_h = 0.0, s_ratio_h = 0.0, s_phi2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    const double d = g2[i] + alpha * tp[i];
    const double phi2 = g2[i] / (d * d);
    s_phi2_h += w * phi2 * h[i];
    s_ratio_h += w * h[i] / d;
    s_phi2 += w * phi2;
  }
  const auto m1 = static_cast<double>(n1);
  return 2.0 * (((m1 - 1.0) / m1) * s_phi2_h - 2.0 * s_ratio_h + s_phi2 / m1);
}

RiskCurve estimated_risk_curve(const SampleSpectrum& sample, std::span<const double> alphas,
                               std::size_t n1) {
  check_n1(n1);
  RiskCurve curve;
  curve.alphas.assign(alphas.begin(), alphas.end());
  curve.values.reserve(alphas.size());
  curve.n1 = n1;
  curve.kind = CurveKind::EstimatedRisk;
  for (double a : alphas) curve.values.push_back(estimated_risk_at(sample, a, n1));
  return curve;
}

RiskCurve estimated_risk_curve(const Sample& sample, std::span<const double> alphas,
                               std::size_t n1, int m, const ErrorModel& error,
                               const FrequencyGrid& grid) {
  const SampleSpectrum spec(sample, error, m, grid);
  return estimated_risk_curve(spec, alphas, n1);
}

double cv_criterion_at(const SampleSpectrum& sample, double alpha) {
  check_alpha(alpha);
  const auto& model = sample.model();
  const auto& grid = model.grid();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto pn2 = sample.ecf_power();
  const auto h = sample.h_hat();
  double s_norm = 0.0, s_ratio_h = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    const double d = g2[i] + alpha * tp[i];
    s_norm += w * (g2[i] / (d * d)) * pn2[i];
    s_ratio_h += w * h[i] / d;
  }
  return 2.0 * (s_norm - 2.0 * s_ratio_h);
}

RiskCurve cv_criterion(const SampleSpectrum& sample, std::span<const double> alphas) {
  RiskCurve curve;
  curve.alphas.assign(alphas.begin(), alphas.end());
  curve.values.reserve(alphas.size());
  curve.n1 = sample.n();
  curve.kind = CurveKind::CrossValidation;
  for (double a : alphas) curve.values.push_back(cv_criterion_at(sample, a));
  return curve;
}

RiskCurve cv_criterion(const Sample& sample, std::span<const double> alphas, int m,
                       const ErrorModel& error, const FrequencyGrid& grid) {
  const SampleSpectrum spec(sample, error, m, grid);
  return cv_criterion(spec, alphas);
}

RiskDecomposition decompose_risk_estimate(const SampleSpectrum& sample, double alpha,
                                          std::size_t n1) {
  check_alpha(alpha);
  check_n1(n1);
  const auto& model = sample.model();
  const auto& grid = model.grid();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto h = sample.h_hat();
  double s_phi2_h = 0.0, s_ratio_h = 0.0, s_phi2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    const double d = g2[i] + alpha * tp[i];
    const double phi2 = g2[i] / (d * d);
    s_phi2_h += w * phi2 * h[i];
    s_ratio_h += w * h[i] / d;
    s_phi2 += w * phi2;
  }
  const auto m1 = static_cast<double>(n1);
  RiskDecomposition out;
  out.b_hat = 2.0 * (((m1 - 1.0) / m1) * s_phi2_h - 2.0 * s_ratio_h);
  out.v_over_n1 = 2.0 * s_phi2 / m1;
  return out;
}

double theta_kernel(const SampleSpectrum& sample, double alpha, std::size_t n1, double x) {
  check_alpha(alpha);
  check_n1(n1);
  const auto& model = sample.model();
  const auto& grid = model.grid();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto n = static_cast<double>(sample.n());
  const auto m1 = static_cast<double>(n1);
  const double c_sq = n * (m1 - 1.0) / (m1 * (n - 1.0));
  const double c_ratio = 2.0 * n / (n - 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = g2[i] + alpha * tp[i];
    const double theta_t = c_sq * g2[i] / (d * d) - c_ratio / d;
    acc += grid.weights[i] * theta_t * std::cos(grid.nodes[i] * x);
  }
  return 2.0 * acc / kTwoPi;
}

double estimated_risk_ustat(const Sample& sample, double alpha, std::size_t n1, int m,
                            const ErrorModel& error, const FrequencyGrid& grid,
                            std::size_t n_cap) {
  if (sample.n() > n_cap) {
    throw std::domain_error("estimated_risk_ustat: n exceeds the quadratic-path cap");
  }
  const SampleSpectrum spec(sample, error, m, grid);
  check_alpha(alpha);
  check_n1(n1);

  const auto& model = spec.model();
  const auto g2 = model.g_sq();
  const auto tp = model.t_pow();
  const auto n = static_cast<double>(sample.n());
  const auto m1 = static_cast<double>(n1);

  // Constant from expanding H~_n around |P~_n|^2:
  // C = (1/n1) int |phi~|^2 - ((n1-1)/(n1(n-1))) int |phi~|^2 + (2/(n-1)) int phi~/conj g~.
  double s_phi2 = 0.0, s_ratio = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    const double d = g2[i] + alpha * tp[i];
    s_phi2 += w * g2[i] / (d * d);
    s_ratio += w / d;
  }
  const double int_phi2 = 2.0 * s_phi2;
  const double int_ratio = 2.0 * s_ratio;
  const double constant = int_phi2 / m1 - ((m1 - 1.0) / (m1 * (n - 1.0))) * int_phi2 +
                          (2.0 / (n - 1.0)) * int_ratio;

  // int theta~ |P~_n|^2 = (2pi/n^2) [n theta(0) + 2 sum_{j<k} theta(Y_j - Y_k)]
  double pair_sum = 0.0;
  for (std::size_t j = 0; j + 1 < sample.n(); ++j) {
    for (std::size_t k = j + 1; k < sample.n(); ++k) {
      pair_sum += theta_kernel(spec, alpha, n1, sample.values[j] - sample.values[k]);
    }
  }
  const double theta0 = theta_kernel(spec, alpha, n1, 0.0);
  return constant + kTwoPi / (n * n) * (n * theta0 + 2.0 * pair_sum);
}

}  // namespace sped
