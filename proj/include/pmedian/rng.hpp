/// @file rng.hpp
/// @brief Seeded random stream. Every stochastic component takes one of these
/// explicitly; there is no hidden global state.
#pragma once

#include <cstdint>
#include <random>

namespace pmedian {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::mt19937_64& engine() { return engine_; }

    // Inclusive range [lo, hi].
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

    double uniform01() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double normal(double mean, double stddev) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    double lognormal(double mu, double sigma) {
        return std::lognormal_distribution<double>(mu, sigma)(engine_);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace pmedian
