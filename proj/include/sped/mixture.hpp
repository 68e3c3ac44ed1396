#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

namespace sped {

struct MixtureComponent {
  double weight;
  double mean;
  double sd;
};

// Finite normal mixture, the ground-truth target family for simulations.
struct NormalMixture {
  std::vector<MixtureComponent> components;
};

// Throws std::domain_error unless weights sum to 1 (1e-12) and all sds > 0.
void validate(const NormalMixture& mix);

// Marron-Wand test densities 1..8. Parameters are transcribed from
// Marron & Wand (1992), Table 1 and locked in mixture.cpp; the Plancherel and
// variance tests guard the transcription.
NormalMixture mw_density(int index);
std::string mw_density_name(int index);

double mixture_pdf(const NormalMixture& mix, double x);
double mixture_cdf(const NormalMixture& mix, double x);

// f~(t) = sum_j w_j exp(-i t mu_j - sigma_j^2 t^2 / 2).
std::complex<double> mixture_char_fn(const NormalMixture& mix, double t);

double mixture_mean(const NormalMixture& mix);
double mixture_variance(const NormalMixture& mix);

// Closed form for ||f||^2 = int f(x)^2 dx of a normal mixture.
double mixture_l2_norm_sq(const NormalMixture& mix);

// Smallest component sd; drives how slowly |f~(t)|^2 decays.
double min_component_sd(const NormalMixture& mix);
double max_abs_component_mean(const NormalMixture& mix);
double max_component_sd(const NormalMixture& mix);

std::vector<double> sample_mixture(const NormalMixture& mix, std::mt19937_64& rng, std::size_t n);

}  // namespace sped
