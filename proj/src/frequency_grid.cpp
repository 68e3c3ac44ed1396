#include "sped/frequency_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sped {

namespace {

// Root of g~(t)^2 = alpha t^(2m), i.e. where the penalty term takes over the
// denominator. F(t) = sd^2 t^2 + 2m log t + log alpha is strictly increasing.
double filter_crossover(double alpha, double sd, int m) {
  auto f = [&](double t) { return sd * sd * t * t + 2.0 * m * std::log(t) + std::log(alpha); };
  double lo = 1e-12, hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Spacing that resolves the filter's variation near its crossover; the
// steepest log-slope there is max(2 sd^2 t_c, 2m / t_c).
double resolve_dt(double alpha, double sd, int m) {
  const double tc = filter_crossover(alpha, sd, m);
  const double slope = std::max(2.0 * sd * sd * tc, 2.0 * m / tc);
  return 1.0 / (5.0 * slope);
}

struct TailModel {
  double alpha;
  double sd;
  int m;
  double extra_sd;  // 0 = no target branch

  // Upper bound on total neglected mass past T for the integrand family.
  double operator()(double T) const {
    const double a2 = alpha * alpha;
    const double t4m = abs_pow_2m(T, 2 * m);
    // |phi~|^2 <= 1/(alpha^2 t^(4m)): closed-form power-law tail.
    const double power_law = std::pow(T, 1.0 - 4.0 * m) / (a2 * (4.0 * m - 1.0));
    // |phi~|^2 <= g~^2/(alpha^2 t^(4m)) with int_T exp(-sd^2 t^2) <= exp(-sd^2 T^2)/(2 sd^2 T).
    const double gauss = std::exp(-sd * sd * T * T) / (2.0 * sd * sd * T * t4m * a2);
    double tail = 2.0 * std::min(power_law, gauss);
    if (extra_sd > 0.0) {
      const double s2 = extra_sd * extra_sd;
      // int_T |f~|^2 <= exp(-s2 T^2)/(2 s2 T)
      tail += std::exp(-s2 * T * T) / (2.0 * s2 * T);
      // cross term 2 |phi~| |P~| |f~| <= 2 g~ |f~| / (alpha t^(2m))
      const double c2 = sd * sd + s2;
      tail += 2.0 * std::exp(-0.5 * c2 * T * T) /
              (alpha * abs_pow_2m(T, m) * c2 * T);
    }
    return tail;
  }
};

}  // namespace

double FrequencyGrid::integrate_even(std::span<const double> values) const {
  if (values.size() != nodes.size()) {
    throw std::invalid_argument("integrate_even: value count does not match grid");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
  return 2.0 * acc;
}

FrequencyGrid build_frequency_grid(const PenaltyKernel& kernel, const GridSpec& spec) {
  if (!(spec.tolerance > 0.0)) {
    throw std::domain_error("build_frequency_grid: tolerance must be positive");
  }
  const double sd = kernel.error.sd;
  const TailModel tail{kernel.alpha, sd, kernel.m, spec.extra_decay_sd};

  double T = std::max(filter_crossover(kernel.alpha, sd, kernel.m), 1e-3);
  int guard = 0;
  while (tail(T) > spec.tolerance) {
    T *= 1.25;
    if (++guard > 4000) {
      throw std::runtime_error("build_frequency_grid: cutoff search did not converge");
    }
  }

  const double osc = std::max(spec.oscillation_scale, 1.0);
  double dt = std::min(std::numbers::pi / (4.0 * osc), resolve_dt(kernel.alpha, sd, kernel.m));
  if (spec.resolve_alpha > 0.0) {
    dt = std::min(dt, resolve_dt(spec.resolve_alpha, sd, kernel.m));
  }

  const auto count = static_cast<std::size_t>(std::ceil(T / dt));
  if (count > 50'000'000) {
    throw std::runtime_error("build_frequency_grid: node count exceeds sane limits");
  }
  dt = T / static_cast<double>(count);

  FrequencyGrid grid;
  grid.nodes.resize(count + 1);
  grid.weights.resize(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    grid.nodes[i] = static_cast<double>(i) * dt;
    grid.weights[i] = (i == 0 || i == count) ? 0.5 * dt : dt;
  }
  grid.nodes.back() = T;
  grid.cutoff = T;
  grid.dt = dt;
  grid.tail_bound = tail(T);
  grid.oscillation_scale = spec.oscillation_scale;
  grid.tolerance = spec.tolerance;
  return grid;
}

FrequencyGrid build_frequency_grid(const PenaltyKernel& kernel, double tolerance,
                                   double oscillation_scale) {
  GridSpec spec;
  spec.tolerance = tolerance;
  spec.oscillation_scale = oscillation_scale;
  return build_frequency_grid(kernel, spec);
}

}  // namespace sped
