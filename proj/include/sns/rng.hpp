#pragma once

#include <cstdint>
#include <random>

namespace sns {

using RngEngine = std::mt19937_64;

// SplitMix64 mixing step; used to decorrelate user seeds and to derive
// independent per-run streams from (seed, stream) pairs.
std::uint64_t splitmix64(std::uint64_t x);

RngEngine make_engine(std::uint64_t seed);
RngEngine make_engine(std::uint64_t seed, std::uint64_t stream);

double draw_uniform(RngEngine& rng);      // [0, 1)
double draw_uniform_pos(RngEngine& rng);  // (0, 1)
double draw_normal(RngEngine& rng);
double draw_chi_squared(RngEngine& rng, double dof);

// Exact von Mises sampling by Best-Fisher rejection. kappa >= 0;
// kappa = 0 degenerates to a uniform angle.
double draw_von_mises(RngEngine& rng, double mean, double kappa);

// Wraps into [0, 2*pi).
double wrap_angle_2pi(double theta);

}  // namespace sns
