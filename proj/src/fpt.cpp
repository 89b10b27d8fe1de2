#include "dcmapf/fpt.hpp"

#include <stdexcept>

#include "dcmapf/clique.hpp"
#include "dcmapf/errors.hpp"
#include "dcmapf/lift.hpp"
#include "dcmapf/search.hpp"

namespace dcmapf {

namespace {

std::optional<Solution> within_limit(const Instance& inst, std::optional<Solution> sol) {
    if (sol && inst.makespan_limit && sol->makespan() > *inst.makespan_limit) return std::nullopt;
    return sol;
}

}  // namespace

std::optional<Solution> solve_fpt(const Instance& inst, const FptOptions& options,
                                  FptStats* stats) {
    inst.check();
    FptStats local;
    FptStats& st = stats ? *stats : local;
    CliqueSplit split = clique_split(inst.graph);
    st.distance = split.distance();

    if (split.modulator.empty()) {
        st.used_clique_solver = true;
        st.core_agents = inst.agent_count();
        st.kernel_vertices = inst.graph.size();
        return within_limit(inst, solve_clique(inst));
    }

    Typing typing = classify_types(inst, split);
    CoreSelection core = select_core_agents(inst, split, typing, options.core);
    Kernel kernel = build_kernel(inst, split, typing, core.core);
    st.core_agents = static_cast<int>(core.core.size());
    st.kernel_vertices = kernel.instance.graph.size();
    const int bound = static_cast<int>(makespan_bound(split.distance()));

    SearchStats search;
    auto kernel_schedule = config_shortest_schedule(kernel.instance, kernel.modulator,
                                                    kernel.occupancy, bound, options.state_limit,
                                                    &search);
    st.states = search.states;
    if (!kernel_schedule) return std::nullopt;

    // The lift may need a slightly longer horizon when the kernel optimum is
    // too short to reroute the remaining agents; core agents wait at targets.
    Schedule padded = *kernel_schedule;
    for (int attempt = 0; attempt < 3; ++attempt) {
        try {
            Schedule lifted = lift_schedule(inst, split, kernel, padded);
            Instance unlimited = inst;
            unlimited.makespan_limit.reset();
            if (validate_schedule(unlimited, lifted).ok())
                return within_limit(inst, Solution{std::move(lifted)});
        } catch (const PreconditionError&) {
        }
        padded.turns.push_back(kernel.instance.target);
    }
    throw std::logic_error("lifted schedule failed validation");
}

}  // namespace dcmapf
