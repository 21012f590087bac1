#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "forge/expfun.hpp"

// Order-of-growth estimation for exponential polynomials. The structural
// order is the maximum total degree over the exponent polynomials; the
// numeric order fits a slope to log log M(r) against log r, where M(r) is
// the sampled maximum modulus on the torus |z_i| = r.

namespace forge::growth {

using expfun::ExpPoly;

struct OrderEstimate {
  int structural = 0;
  double numeric = 0.0;
  std::vector<std::pair<double, double>> slope_points;  // (log r, log log M(r))
  double r_min = 0.0;
  double r_max = 0.0;
  int n_radii = 0;
  int samples_per_radius = 0;
  std::uint64_t seed = 0;
};

int structural_order(const ExpPoly& f);

OrderEstimate estimate_order(const ExpPoly& f, double r_min, double r_max, int n_radii,
                             int samples_per_radius = 512, std::uint64_t seed = 20240901);

}  // namespace forge::growth
