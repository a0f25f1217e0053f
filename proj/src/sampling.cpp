#include "slicealg/sampling.hpp"

#include <cmath>

namespace slicealg {

ImaginaryUnit random_unit(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const double x = n(rng), y = n(rng), z = n(rng);
    if (x * x + y * y + z * z > 1e-6) return {x, y, z};
  }
}

Quaternion random_unit_quaternion(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Quaternion q(n(rng), n(rng), n(rng), n(rng));
    if (q.norm2() > 1e-6) return q / q.norm();
  }
}

Quaternion random_quaternion(Rng& rng, double scale) {
  return Quaternion(uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale),
                    uniform(rng, -scale, scale));
}

CPoint random_in_ball(Rng& rng, const CPoint& center, double radius) {
  std::normal_distribution<double> n(0.0, 1.0);
  const std::size_t dim = center.size();
  CPoint dir(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& c : dir) {
      c = Complex(n(rng), n(rng));
      norm += std::norm(c);
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  const double r = radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / static_cast<double>(2 * dim));
  CPoint p(dim);
  for (std::size_t l = 0; l < dim; ++l) p[l] = center[l] + dir[l] * (r / norm);
  return p;
}

std::vector<ImaginaryUnit> random_separated_units(Rng& rng, std::size_t count, double min_sep) {
  std::vector<ImaginaryUnit> units;
  while (units.size() < count) {
    const ImaginaryUnit u = random_unit(rng);
    bool ok = true;
    for (const auto& v : units) ok = ok && distance(u, v) >= min_sep;
    if (ok) units.push_back(u);
  }
  return units;
}

}  // namespace slicealg
