#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sped/filter.hpp"

namespace sped {

// Uniform composite-trapezoid grid on [0, T]. All integrands handled by this
// artifact are even real functions of t, so integrals over the full line are
// computed as 2 * (trapezoid over [0, T]); the t = 0 node ends up with the
// interior weight, i.e. counted once.
struct FrequencyGrid {
  std::vector<double> nodes;    // t_0 = 0 < t_1 < ... < t_K = cutoff
  std::vector<double> weights;  // trapezoid weights for [0, cutoff]
  double cutoff = 0.0;
  double dt = 0.0;
  double tail_bound = 0.0;        // analytic bound on the neglected tail mass
  double oscillation_scale = 0.0; // max |Y_j| / |x| the spacing resolves
  double tolerance = 0.0;

  std::size_t size() const { return nodes.size(); }

  // approx integral of an even function over (-inf, inf), given its values at
  // the nodes; the neglected tail is bounded by tail_bound.
  double integrate_even(std::span<const double> values) const;
};

struct GridSpec {
  double tolerance = 1e-10;
  double oscillation_scale = 1.0;
  // When > 0, the cutoff also controls the tails of integrands carrying the
  // squared target characteristic function exp(-extra_decay_sd^2 t^2).
  double extra_decay_sd = 0.0;
  // When > 0, the spacing also resolves the filter peak at this larger
  // penalty value (useful when one grid serves a whole alpha sweep).
  double resolve_alpha = 0.0;
};

// The cutoff T is chosen from closed-form bounds on the neglected tails of the
// squared-filter integrand family (|phi~_alpha|^2 <= min(1/(alpha^2 t^(4m)),
// g~^2/(alpha^2 t^(4m)))), tightened by the Gaussian decay of g~, plus target
// branches when extra_decay_sd is set. The spacing resolves both e^{-itY}
// oscillations up to oscillation_scale and the filter crossover region.
FrequencyGrid build_frequency_grid(const PenaltyKernel& kernel, const GridSpec& spec);
FrequencyGrid build_frequency_grid(const PenaltyKernel& kernel, double tolerance,
                                   double oscillation_scale);

}  // namespace sped
