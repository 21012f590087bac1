#include "forge/growth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "forge/errors.hpp"

namespace forge::growth {

int structural_order(const ExpPoly& f) { return expfun::ep_structural_degree(f); }

OrderEstimate estimate_order(const ExpPoly& f, double r_min, double r_max, int n_radii,
                             int samples_per_radius, std::uint64_t seed) {
  const ExpPoly nf = expfun::ep_normalize(f);
  if (nf.terms.empty()) throw MalformedInput("estimate_order: f is identically zero");
  if (n_radii < 3) throw DegenerateGrid("estimate_order: need at least 3 radii");
  if (!(r_min > 1.0) || !(r_max > r_min))
    throw MalformedInput("estimate_order: need 1 < r_min < r_max");
  if (samples_per_radius < 1) throw MalformedInput("estimate_order: need at least one sample");

  OrderEstimate est;
  est.structural = structural_order(nf);
  est.r_min = r_min;
  est.r_max = r_max;
  est.n_radii = n_radii;
  est.samples_per_radius = samples_per_radius;
  est.seed = seed;

  std::mt19937_64 rng(seed);
  const double ratio = std::log(r_max / r_min) / static_cast<double>(n_radii - 1);
  const int n = nf.n;

  for (int ir = 0; ir < n_radii; ++ir) {
    const double r = r_min * std::exp(ratio * ir);
    double max_logmag = -std::numeric_limits<double>::infinity();
    expfun::CxVec z(static_cast<std::size_t>(n));
    for (int s = 0; s < samples_per_radius; ++s) {
      for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * expfun::uniform01(rng);
        z[static_cast<std::size_t>(j)] = std::polar(r, theta);
      }
      // The log magnitude stays valid past the double overflow threshold.
      const auto ev = expfun::ep_eval(nf, z);
      if (ev.log.logmag > max_logmag) max_logmag = ev.log.logmag;
    }
    if (max_logmag > 1.0) est.slope_points.emplace_back(std::log(r), std::log(max_logmag));
  }

  if (est.slope_points.size() < 3)
    throw DegenerateGrid("estimate_order: fewer than 3 radii gave log M(r) > 1; raise r_min");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(est.slope_points.size());
  for (const auto& [x, y] : est.slope_points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  if (det == 0.0) throw DegenerateGrid("estimate_order: collinear radii grid");
  est.numeric = (m * sxy - sx * sy) / det;
  return est;
}

}  // namespace forge::growth
