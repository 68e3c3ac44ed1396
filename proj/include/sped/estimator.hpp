#pragma once

#include <span>
#include <vector>

#include "sped/frequency_grid.hpp"
#include "sped/sample.hpp"

namespace sped {

// SPeD density estimate f_n^alpha(x) = (1/2pi) int e^{itx} phi~_alpha(t) P~_n(t) dt,
// evaluated by the grid's trapezoid rule over [-T, T]. The grid must have been
// built with oscillation_scale >= max(|Y_j|, |x|); violating that is a
// precondition error. The quadrature is carried out in complex arithmetic and
// the imaginary residue is asserted to be negligible before taking the real part.
std::vector<double> estimate_density(const Sample& sample, const PenaltyKernel& kernel,
                                     std::span<const double> x_points,
                                     const FrequencyGrid& grid);

}  // namespace sped
