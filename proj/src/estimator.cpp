#include "sped/estimator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sped {

std::vector<double> estimate_density(const Sample& sample, const PenaltyKernel& kernel,
                                     std::span<const double> x_points,
                                     const FrequencyGrid& grid) {
  if (sample.n() == 0) throw std::domain_error("estimate_density: empty sample");
  double max_x = 0.0;
  for (double x : x_points) max_x = std::max(max_x, std::abs(x));
  if (std::max(sample.max_abs(), max_x) > grid.oscillation_scale * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "estimate_density: grid oscillation_scale below max(|Y_j|, |x|)");
  }

  const auto ecf = empirical_char_fn(sample, grid);
  std::vector<double> phi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) phi[i] = phi_tilde_real(kernel, grid.nodes[i]);

  std::vector<double> out(x_points.size());
  for (std::size_t j = 0; j < x_points.size(); ++j) {
    const double x = x_points[j];
    // two-sided sum; nodes at -t use P~_n(-t) = conj(P~_n(t)) and phi~(-t) = phi~(t).
    // t = 0 is an interior node of [-T, T], so it carries the full spacing.
    std::complex<double> acc = 2.0 * grid.weights[0] * phi[0] * ecf[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double t = grid.nodes[i];
      const std::complex<double> rot(std::cos(t * x), std::sin(t * x));
      acc += grid.weights[i] * phi[i] * (rot * ecf[i] + std::conj(rot * ecf[i]));
    }
    if (std::abs(acc.imag()) > 1e-8 * (1.0 + std::abs(acc.real()))) {
      throw std::runtime_error("estimate_density: non-negligible imaginary residue");
    }
    out[j] = acc.real() / (2.0 * std::numbers::pi);
  }
  return out;
}

}  // namespace sped
