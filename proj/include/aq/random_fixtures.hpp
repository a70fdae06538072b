#pragma once

// Seeded random instances for property tests and the acceptance suite.

#include <random>

#include "aq/abelian.hpp"
#include "aq/bisimplicial.hpp"

namespace aq {

using Rng = std::mt19937_64;

// Free chain complex C_0 <- ... <- C_len with len in [1, max_len], ranks in
// [0, max_rank], entries bounded by max_entry in absolute value and d d = 0.
ChainComplex random_complex(Rng& rng, int max_len, int max_rank, Int max_entry);

// Dold-Kan image of random_complex(rng, 2, max_rank, 3) as a simplicial Z-module.
SimplicialModule random_simplicial(Rng& rng, int max_rank, std::size_t truncation);
// DK(A) ⊗ DK(B), plus a second such summand half of the time.
BisimplicialGroup random_bisimplicial(Rng& rng, int max_rank, std::size_t truncation);

}  // namespace aq
