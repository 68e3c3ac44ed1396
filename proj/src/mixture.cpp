#include "sped/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sped {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2*pi)

double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

// Parameters from Marron & Wand (1992), Table 1, densities #1-#8.
NormalMixture mw_registry(int index) {
  switch (index) {
    case 1:  // Gaussian
      return {{{1.0, 0.0, 1.0}}};
    case 2:  // Skewed unimodal
      return {{{1.0 / 5.0, 0.0, 1.0},
               {1.0 / 5.0, 1.0 / 2.0, 2.0 / 3.0},
               {3.0 / 5.0, 13.0 / 12.0, 5.0 / 9.0}}};
    case 3: {  // Strongly skewed
      NormalMixture mix;
      for (int l = 0; l < 8; ++l) {
        const double r = std::pow(2.0 / 3.0, l);
        mix.components.push_back({1.0 / 8.0, 3.0 * (r - 1.0), r});
      }
      return mix;
    }
    case 4:  // Kurtotic unimodal
      return {{{2.0 / 3.0, 0.0, 1.0}, {1.0 / 3.0, 0.0, 1.0 / 10.0}}};
    case 5:  // Outlier
      return {{{1.0 / 10.0, 0.0, 1.0}, {9.0 / 10.0, 0.0, 1.0 / 10.0}}};
    case 6:  // Bimodal
      return {{{1.0 / 2.0, -1.0, 2.0 / 3.0}, {1.0 / 2.0, 1.0, 2.0 / 3.0}}};
    case 7:  // Separated bimodal
      return {{{1.0 / 2.0, -3.0 / 2.0, 1.0 / 2.0}, {1.0 / 2.0, 3.0 / 2.0, 1.0 / 2.0}}};
    case 8:  // Skewed bimodal
      return {{{3.0 / 4.0, 0.0, 1.0}, {1.0 / 4.0, 3.0 / 2.0, 1.0 / 3.0}}};
    default:
      throw std::domain_error("mw_density: index must be in 1..8");
  }
}

}  // namespace

void validate(const NormalMixture& mix) {
  if (mix.components.empty()) throw std::domain_error("NormalMixture: no components");
  double total = 0.0;
  for (const auto& c : mix.components) {
    if (!(c.weight > 0.0) || !(c.sd > 0.0) || !std::isfinite(c.mean)) {
      throw std::domain_error("NormalMixture: component weights and sds must be positive");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error("NormalMixture: weights must sum to 1");
  }
}

NormalMixture mw_density(int index) {
  NormalMixture mix = mw_registry(index);
  validate(mix);
  return mix;
}

std::string mw_density_name(int index) {
  static const char* names[] = {"gaussian",          "skewed unimodal", "strongly skewed",
                                "kurtotic unimodal", "outlier",         "bimodal",
                                "separated bimodal", "skewed bimodal"};
  if (index < 1 || index > 8) throw std::domain_error("mw_density_name: index must be in 1..8");
  return names[index - 1];
}

double mixture_pdf(const NormalMixture& mix, double x) {
  double v = 0.0;
  for (const auto& c : mix.components) v += c.weight * normal_pdf(x, c.mean, c.sd);
  return v;
}

double mixture_cdf(const NormalMixture& mix, double x) {
  double v = 0.0;
  for (const auto& c : mix.components) v += c.weight * normal_cdf(x, c.mean, c.sd);
  return v;
}

std::complex<double> mixture_char_fn(const NormalMixture& mix, double t) {
  std::complex<double> v = 0.0;
  for (const auto& c : mix.components) {
    const double amp = c.weight * std::exp(-0.5 * c.sd * c.sd * t * t);
    v += amp * std::complex<double>(std::cos(t * c.mean), -std::sin(t * c.mean));
  }
  return v;
}

double mixture_mean(const NormalMixture& mix) {
  double v = 0.0;
  for (const auto& c : mix.components) v += c.weight * c.mean;
  return v;
}

double mixture_variance(const NormalMixture& mix) {
  const double mu = mixture_mean(mix);
  double second = 0.0;
  for (const auto& c : mix.components) second += c.weight * (c.sd * c.sd + c.mean * c.mean);
  return second - mu * mu;
}

double mixture_l2_norm_sq(const NormalMixture& mix) {
  // int N(x;m1,s1^2) N(x;m2,s2^2) dx = N(m1 - m2; 0, s1^2 + s2^2)
  double v = 0.0;
  for (const auto& a : mix.components) {
    for (const auto& b : mix.components) {
      const double var = a.sd * a.sd + b.sd * b.sd;
      v += a.weight * b.weight * normal_pdf(a.mean - b.mean, 0.0, std::sqrt(var));
    }
  }
  return v;
}

double min_component_sd(const NormalMixture& mix) {
  double v = mix.components.front().sd;
  for (const auto& c : mix.components) v = std::min(v, c.sd);
  return v;
}

double max_component_sd(const NormalMixture& mix) {
  double v = mix.components.front().sd;
  for (const auto& c : mix.components) v = std::max(v, c.sd);
  return v;
}

double max_abs_component_mean(const NormalMixture& mix) {
  double v = 0.0;
  for (const auto& c : mix.components) v = std::max(v, std::abs(c.mean));
  return v;
}

std::vector<double> sample_mixture(const NormalMixture& mix, std::mt19937_64& rng, std::size_t n) {
  validate(mix);
  std::vector<double> cum(mix.components.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < mix.components.size(); ++j) {
    acc += mix.components[j].weight;
    cum[j] = acc;
  }
  cum.back() = 1.0;

  std::vector<double> out(n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& v : out) {
    const double u = unif(rng);
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    const auto& c = mix.components[static_cast<std::size_t>(it - cum.begin())];
    v = c.mean + c.sd * normal(rng);
  }
  return out;
}

}  // namespace sped
