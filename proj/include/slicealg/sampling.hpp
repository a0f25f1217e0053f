#pragma once

#include <random>

#include "slicealg/path.hpp"
#include "slicealg/quaternion.hpp"

namespace slicealg {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Uniform on the sphere of imaginary units.
ImaginaryUnit random_unit(Rng& rng);
/// Gaussian components, normalized to |q| = 1.
Quaternion random_unit_quaternion(Rng& rng);
Quaternion random_quaternion(Rng& rng, double scale = 1.0);
/// Uniform in the open ball of C^n with the given center and radius.
CPoint random_in_ball(Rng& rng, const CPoint& center, double radius);
/// Random unit pair/triple with pairwise separation at least `min_sep`.
std::vector<ImaginaryUnit> random_separated_units(Rng& rng, std::size_t count, double min_sep);

}  // namespace slicealg
