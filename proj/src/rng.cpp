#include "ripbound/rng.hpp"

#include "ripbound/special_functions.hpp"

namespace ripbound::rng {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
} // namespace

std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + (counter + 1) * kGoldenGamma);
}

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index) {
  // Two rounds so that related master seeds do not alias nearby streams.
  return mix64(counter_hash(seed, index) + kGoldenGamma);
}

double to_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double normal(std::uint64_t key, std::uint64_t counter) {
  return sf::norm_quantile(to_unit(counter_hash(key, counter)));
}

double rademacher(std::uint64_t key, std::uint64_t counter) {
  return (counter_hash(key, counter) >> 63) ? 1.0 : -1.0;
}

} // namespace ripbound::rng
