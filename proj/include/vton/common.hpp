#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vton {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error("config: " + msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error("io: " + msg) {}
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

inline void check_config(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

// 64-bit mix (splitmix64 finalizer), used to derive independent seeds.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace vton
