#pragma once

#include <cstdint>

namespace levyexp {

/// SplitMix64 stream (Vigna 2015). Small, fast, and fully specified, so paths
/// reproduce bit-identically across platforms and standard libraries.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0,1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0,1]; never returns 0.
    double uniform01_positive() { return 1.0 - uniform01(); }

    bool coin() { return (next() >> 63) != 0; }

    /// Poisson count by sequential inversion; adequate for the moderate
    /// means used in path sampling.
    int poisson(double mean);

  private:
    std::uint64_t state_;
};

/// Seed for the stream of one Monte Carlo path. The derivation is the
/// (path_index+1)-th output of SplitMix64 started at master_seed, which is a
/// bijection of the jumped state, so distinct indices give distinct seeds.
/// epsilon_index is accepted but deliberately ignored: every epsilon of an
/// order study must see the same noise path.
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t path_index,
                                 std::uint64_t epsilon_index = 0);

}  // namespace levyexp
