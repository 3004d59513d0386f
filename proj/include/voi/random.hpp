#ifndef VOI_RANDOM_HPP_
#define VOI_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace voi {

using Engine = std::mt19937_64;

// Deterministic engine for (seed, stream). Distinct streams give
// independent-looking sequences, so parallel workers never share state.
inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

} // namespace voi

#endif // VOI_RANDOM_HPP_
