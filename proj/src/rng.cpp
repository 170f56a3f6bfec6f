#include "sns/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sns {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngEngine make_engine(std::uint64_t seed) { return RngEngine(splitmix64(seed)); }

RngEngine make_engine(std::uint64_t seed, std::uint64_t stream) {
  return RngEngine(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x2545f4914f6cdd1dULL + 1)));
}

double draw_uniform(RngEngine& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double draw_uniform_pos(RngEngine& rng) {
  return std::uniform_real_distribution<double>(std::numeric_limits<double>::min(), 1.0)(rng);
}

double draw_normal(RngEngine& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

double draw_chi_squared(RngEngine& rng, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("draw_chi_squared: dof must be > 0");
  return 2.0 * std::gamma_distribution<double>(0.5 * dof, 1.0)(rng);
}

double wrap_angle_2pi(double theta) {
  constexpr double two_pi = 2.0 * M_PI;
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;  // fmod rounding at the boundary
  return w;
}

double draw_von_mises(RngEngine& rng, double mean, double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("draw_von_mises: kappa must be >= 0");
  if (kappa < 1e-8) return wrap_angle_2pi(mean + 2.0 * M_PI * draw_uniform(rng));

  // Best & Fisher (1979) wrapped-Cauchy envelope rejection.
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);

  double f = 0.0;
  for (;;) {
    const double z = std::cos(M_PI * draw_uniform(rng));
    f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = draw_uniform_pos(rng);
    if (c * (2.0 - c) - u2 > 0.0) break;
    if (c > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0) break;
  }
  const double sign = draw_uniform(rng) > 0.5 ? 1.0 : -1.0;
  return wrap_angle_2pi(sign * std::acos(std::clamp(f, -1.0, 1.0)) + mean);
}

}  // namespace sns
