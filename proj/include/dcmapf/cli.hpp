#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "dcmapf/model.hpp"

namespace dcmapf {

struct RunReport {
    std::string algorithm;
    bool feasible = false;
    std::optional<int> makespan;  // set iff feasible
    std::size_t states = 0;
    double ms = 0;
    bool resource_guard = false;

    std::string describe() const;
};

// Algorithms: oracle, clique, fpt, auto (clique on complete graphs, fpt
// otherwise). Fills `schedule` when feasible. Throws PreconditionError for an
// unknown algorithm or a clique request on a non-complete graph.
RunReport run_solver(const Instance& inst, const std::string& algorithm, std::size_t state_limit,
                     Schedule* schedule = nullptr);

// Entry point of the command-line tool. Exit codes: 0 solved or valid,
// 1 infeasible, invalid or mismatch, 2 usage or parse error, 3 resource guard.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcmapf
