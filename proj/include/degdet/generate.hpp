#pragma once

#include <cstdint>

#include "degdet/exactfield.hpp"
#include "degdet/instance.hpp"

namespace degdet {

struct GenParams {
    int rows = 1, cols = 1;
    double density = 1.0;
    std::int64_t dmax = 0;
    double rank1_prob = 0.0;
    std::uint64_t seed = 0;
    std::int64_t entry_max = 5;  // block entries are drawn from [-entry_max, entry_max]
};

// Same parameters give the same instance.
Instance generate(const GenParams& p, const Field& f = Field::prime(kDefaultPrime));

}  // namespace degdet
