#pragma once

#include <cstdint>
#include <random>

#include "dcmapf/model.hpp"

namespace dcmapf {

struct RandomSpec {
    int vertices = 6;
    int dc = 1;  // upper bound on the distance to clique
    int agents = 3;
    std::uint64_t seed = 0;
};

// Uniform draw from [0, bound) that does not depend on the standard library's
// distribution implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// A clique on vertices - dc vertices plus dc extra vertices joined to each
// other vertex with probability 1/2, relabelled at random, with random
// injective starts and targets. Deterministic given the spec.
Instance random_instance(const RandomSpec& spec);

// Inserts `detours` random excursions that leave a placement of `s` and come
// back along the same moves. The result is valid whenever `s` is.
Schedule pad_schedule(const Graph& g, const Placement& start, const Schedule& s, int detours,
                      int detour_length, std::mt19937_64& rng);

}  // namespace dcmapf
