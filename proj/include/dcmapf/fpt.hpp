#pragma once

#include <cstddef>
#include <optional>

#include "dcmapf/kernel.hpp"
#include "dcmapf/model.hpp"
#include "dcmapf/oracle.hpp"

namespace dcmapf {

struct FptOptions {
    std::size_t state_limit = kDefaultStateLimit;
    CoreOptions core;
};

struct FptStats {
    std::size_t states = 0;
    int distance = 0;
    int core_agents = 0;
    int kernel_vertices = 0;
    bool used_clique_solver = false;
};

// Optimal schedule via modulator split, kernel search and lifting. Returns
// nullopt when the instance is infeasible (or infeasible within its limit).
std::optional<Solution> solve_fpt(const Instance& inst, const FptOptions& options = {},
                                  FptStats* stats = nullptr);

}  // namespace dcmapf
