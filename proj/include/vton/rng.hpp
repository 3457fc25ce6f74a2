#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "vton/common.hpp"

namespace vton {

// Deterministic RNG. mt19937_64 is fully specified by the standard, and the
// uniform/normal transforms below avoid the implementation-defined
// std::*_distribution classes, so streams are reproducible across compilers.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t raw() { return eng_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller, two draws per call (no cached spare, keeps state trivial).
    double normal() {
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // integer in [0, n)
    uint32_t below(uint32_t n) {
        check(n > 0, "Rng::below: n must be positive");
        return static_cast<uint32_t>(eng_() % n);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Independent child stream.
    Rng fork(uint64_t stream) { return Rng(mix_seed(eng_(), stream)); }

    std::string state() const {
        std::ostringstream os;
        os << eng_;
        return os.str();
    }

    void set_state(const std::string& s) {
        std::istringstream is(s);
        is >> eng_;
        check(!is.fail(), "Rng::set_state: malformed state string");
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace vton
