#include "levyexp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace levyexp {

int SplitMix64::poisson(double mean) {
    if (!(mean >= 0.0)) {
        throw std::invalid_argument("poisson: mean must be nonnegative");
    }
    if (mean > 1e6) {
        throw std::invalid_argument("poisson: mean too large for inversion");
    }
    // Sequential inversion of the CDF.
    const double u = uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    int k = 0;
    while (u >= cdf && k < 100000000) {
        ++k;
        p *= mean / k;
        cdf += p;
        if (p == 0.0) break;
    }
    return k;
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t path_index,
                                 std::uint64_t epsilon_index) {
    (void)epsilon_index;  // coupling contract: identical noise across epsilon
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (path_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace levyexp
