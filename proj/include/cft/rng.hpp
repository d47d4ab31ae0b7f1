#pragma once

#include <cstdint>
#include <random>

namespace cft {

// splitmix64 step; used to derive independent substreams from one master seed
// so that results do not depend on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 substream(std::uint64_t master, std::uint64_t index) {
    return std::mt19937_64(splitmix64(master ^ splitmix64(index)));
}

}  // namespace cft
