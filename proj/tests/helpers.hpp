#pragma once

#include <random>

#include "fxamm/cfmm.hpp"

namespace fxamm::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline PoolState random_pool(std::mt19937_64& rng, RuleKind kind, double fee = 0.0,
                             double alpha = 0.0) {
    const double s = uniform(rng, 0.5, 2.0);
    const double x0 = uniform(rng, 0.5, 2.0);
    const double y0 = uniform(rng, 0.5, 2.0);
    CfmmRule rule{kind, alpha, s};
    return make_pool(rule, x0, y0, fee);
}

}  // namespace fxamm::testing
