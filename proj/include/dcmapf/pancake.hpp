#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcmapf/model.hpp"
#include "dcmapf/registry.hpp"
#include "dcmapf/three_partition.hpp"

namespace dcmapf {

struct PancakeInstance {
    std::vector<int> perm;  // perm[i-1] = start position of agent i, a permutation of 1..n
    int k = 1;              // number of flips
    int n() const { return static_cast<int>(perm.size()); }
    int n_plus() const { return n() + 2; }
    int horizon() const { return 3 * n_plus() * k; }
};

// Throws PreconditionError unless perm is a permutation of 1..n and k >= 1.
void check_pancake(const PancakeInstance& p);

GeneratedInstance build_pancake_instance(const PancakeInstance& p);

// Applies the prefix reversals to the arrangement on the first path (the
// agent sitting at position j moves to position r - j + 1). The flips must
// bring every agent i to position i; exactly k flips are expected.
Schedule pancake_forward_schedule(const Instance& inst, const GadgetRegistry& registry,
                                  std::span<const int> flips);

struct GeneratedColoredInstance {
    ColoredInstance instance;
    GadgetRegistry registry;
};

// Binary strings of equal length n; groups: symbol 0, symbol 1, and four
// auxiliary groups.
GeneratedColoredInstance build_colored_pancake_instance(const std::string& alpha,
                                                        const std::string& beta, int k);

Schedule colored_pancake_forward_schedule(const ColoredInstance& inst, const GadgetRegistry& registry,
                                          const std::string& alpha, const std::string& beta,
                                          std::span<const int> flips);

// True when exactly one perfect pairing of starts to targets uses only pairs
// at graph distance <= limit.
bool has_unique_pairing(const Graph& g, std::span<const Vertex> starts,
                        std::span<const Vertex> targets, int limit);

}  // namespace dcmapf
