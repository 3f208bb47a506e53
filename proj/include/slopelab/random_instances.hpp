#pragma once

#include <random>

#include "slopelab/filtration.hpp"

namespace slopelab {

// Seeded generators for property suites. Small numerators/denominators
// keep the exact arithmetic fast; invertibility is guaranteed by
// construction (elementary row operations on the identity).
Rational random_small_rational(std::mt19937_64& rng, int num_range = 9, int den_range = 6);

FilteredSpace random_filtered_space(std::mt19937_64& rng, int max_dim = 6,
                                    bool nonnegative_jumps = false);

// `count` independent vectors inside the space (coordinates in [-2, 2]).
std::vector<QVec> random_independent_vectors(std::mt19937_64& rng, int ambient_dim, int count);

}  // namespace slopelab
