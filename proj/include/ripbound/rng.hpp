#pragma once

#include <cstdint>

namespace ripbound::rng {

// Sampling method identifier, recorded in run manifests so that seeded
// fixtures cannot drift silently if the generator ever changes.
inline constexpr const char* kMethodName = "counter-splitmix64+inverse-normal-cdf";

// Stateless counter hash: the splitmix64 output function evaluated at
// state key + (counter+1) * golden-gamma. Distinct (key, counter) pairs
// map to independent-looking 64-bit words, so any sample can be
// regenerated from its coordinates alone. Parallel and serial evaluation
// orders are therefore bit-identical.
std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter);

// Derives an independent sub-stream key, e.g. one key per Monte Carlo
// trial from (master seed, trial index).
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index);

// Maps 64 random bits to the open interval (0, 1) on a 2^-53 lattice
// offset by 2^-54; never returns 0 or 1.
double to_unit(std::uint64_t bits);

// Standard normal draw by inverse-CDF transform of to_unit(counter_hash).
double normal(std::uint64_t key, std::uint64_t counter);

// +1/-1 with equal probability (sign bit of the hash).
double rademacher(std::uint64_t key, std::uint64_t counter);

} // namespace ripbound::rng
