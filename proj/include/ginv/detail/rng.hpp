#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ginv/scalar.hpp"

namespace ginv::detail {

/// Seeded random source. Every draw is shaped from raw mt19937_64 words by
/// hand, so sequences are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t word() { return gen_(); }

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double gauss() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex cgauss() { return Complex(gauss(), gauss()) * std::numbers::sqrt2 / 2.0; }

private:
    std::mt19937_64 gen_;
};

} // namespace ginv::detail
