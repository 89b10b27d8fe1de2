#include "dcmapf/lift.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "dcmapf/errors.hpp"

namespace dcmapf {

namespace {

const Placement& placement_at(const Placement& start, const Schedule& s, int turn) {
    return turn == 0 ? start : s.turns[turn - 1];
}

int count_mutual_exchanges(const std::vector<VertexPair>& matching) {
    std::map<Vertex, Vertex> image(matching.begin(), matching.end());
    int n = 0;
    for (auto [u, w] : matching) {
        if (u >= w) continue;
        auto it = image.find(w);
        if (it != image.end() && it->second == u) ++n;
    }
    return n;
}

bool kuhn(int u, const std::vector<std::vector<int>>& allowed, std::vector<int>& match_sink,
          std::vector<char>& visited) {
    for (int w : allowed[u]) {
        if (visited[w]) continue;
        visited[w] = 1;
        if (match_sink[w] < 0 || kuhn(match_sink[w], allowed, match_sink, visited)) {
            match_sink[w] = u;
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<std::vector<VertexPair>> perfect_matching(std::span<const Vertex> sources,
                                                        std::span<const Vertex> sinks,
                                                        std::span<const VertexPair> forbidden) {
    if (sources.size() != sinks.size()) return std::nullopt;
    std::vector<Vertex> src(sources.begin(), sources.end());
    std::vector<Vertex> dst(sinks.begin(), sinks.end());
    std::sort(src.begin(), src.end());
    std::sort(dst.begin(), dst.end());
    std::set<VertexPair> banned(forbidden.begin(), forbidden.end());
    std::vector<std::vector<int>> allowed(src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j)
            if (!banned.count({src[i], dst[j]})) allowed[i].push_back(static_cast<int>(j));
    std::vector<int> match_sink(dst.size(), -1);
    for (std::size_t i = 0; i < src.size(); ++i) {
        std::vector<char> visited(dst.size(), 0);
        if (!kuhn(static_cast<int>(i), allowed, match_sink, visited)) return std::nullopt;
    }
    std::vector<VertexPair> out;
    for (std::size_t j = 0; j < dst.size(); ++j) out.emplace_back(src[match_sink[j]], dst[j]);
    std::sort(out.begin(), out.end());
    return out;
}

int fix_mutual_exchanges(std::vector<VertexPair>& matching) {
    int fixes = 0;
    int remaining = count_mutual_exchanges(matching);
    while (remaining > 0) {
        std::map<Vertex, std::size_t> index;
        for (std::size_t i = 0; i < matching.size(); ++i) index[matching[i].first] = i;
        for (std::size_t i = 0; i < matching.size(); ++i) {
            auto [u, w] = matching[i];
            if (u == w) continue;
            auto it = index.find(w);
            if (it == index.end() || matching[it->second].second != u) continue;
            matching[i].second = u;
            matching[it->second].second = w;
            break;
        }
        ++fixes;
        int now = count_mutual_exchanges(matching);
        if (now >= remaining) throw std::logic_error("exchange fix did not make progress");
        remaining = now;
    }
    return fixes;
}

Vertex LiftFrame::image(Vertex source) const {
    auto it = std::lower_bound(matching.begin(), matching.end(), VertexPair{source, -1});
    if (it == matching.end() || it->first != source) throw std::logic_error("unmatched source");
    return it->second;
}

LiftFrame plan_frame(std::span<const Vertex> free_prev, std::span<const Vertex> free_next,
                     std::span<const Vertex> occupied_prev, std::span<const Vertex> core_prev,
                     std::span<const Vertex> core_next) {
    LiftFrame f;
    f.free_prev.assign(free_prev.begin(), free_prev.end());
    f.free_next.assign(free_next.begin(), free_next.end());
    std::sort(f.free_prev.begin(), f.free_prev.end());
    std::sort(f.free_next.begin(), f.free_next.end());
    const std::size_t size = std::min(f.free_prev.size(), f.free_next.size());
    if (occupied_prev.size() > size) throw PreconditionError("too few free clique vertices");

    std::set<Vertex> src(occupied_prev.begin(), occupied_prev.end());
    for (Vertex v : occupied_prev)
        if (!std::binary_search(f.free_prev.begin(), f.free_prev.end(), v))
            throw PreconditionError("non-core agent outside the free clique vertices");
    for (Vertex v : f.free_prev) {
        if (src.size() >= size) break;
        src.insert(v);
    }
    // Prefer sinks that let an agent stay where it is.
    std::set<Vertex> dst;
    for (Vertex v : f.free_next)
        if (dst.size() < size && src.count(v)) dst.insert(v);
    for (Vertex v : f.free_next) {
        if (dst.size() >= size) break;
        dst.insert(v);
    }
    f.sources.assign(src.begin(), src.end());
    f.sinks.assign(dst.begin(), dst.end());

    for (std::size_t c = 0; c < core_prev.size(); ++c)
        if (src.count(core_next[c]) && dst.count(core_prev[c]))
            f.forbidden.emplace_back(core_next[c], core_prev[c]);
    std::sort(f.forbidden.begin(), f.forbidden.end());

    auto m = perfect_matching(f.sources, f.sinks, f.forbidden);
    if (!m) throw std::logic_error("no perfect matching in lift frame");
    f.matching = std::move(*m);
    f.exchange_fixes = fix_mutual_exchanges(f.matching);
    std::sort(f.matching.begin(), f.matching.end());
    return f;
}

namespace {

class FinalRepair {
public:
    FinalRepair(const Instance& inst, const Schedule& partial, std::span<const AgentId> core)
        : inst_(inst), m_(partial.makespan()), partial_(partial), core_(inst.agent_count(), false) {
        for (AgentId a : core) core_[a] = true;
        before_ = placement_at(inst.start, partial, m_ - 2);
        last_ = placement_at(inst.start, partial, m_ - 1);
        holder_before_.assign(inst.graph.size(), -1);
        for (AgentId a = 0; a < inst.agent_count(); ++a) holder_before_[before_[a]] = a;
    }

    Schedule run() {
        auto pairs = detect_swaps(last_, inst_.target);
        if (pairs.empty()) return partial_;
        for (auto [a, b] : pairs) {
            if (!core_[b]) {
                alphas_.push_back(a);
                betas_.push_back(b);
            } else if (!core_[a]) {
                alphas_.push_back(b);
                betas_.push_back(a);
            } else {
                throw PreconditionError("swap between two core agents in final turn");
            }
        }
        std::optional<Placement> fixed =
            betas_.size() >= 4 ? rotate_betas() : exchange_with_helpers();
        if (!fixed) throw PreconditionError("final-turn swap repair failed: helper pool too small");
        Schedule out = partial_;
        out.turns[m_ - 2] = std::move(*fixed);
        return out;
    }

private:
    bool clean(const Placement& s) const {
        return detect_swaps(before_, s).empty() && detect_swaps(s, inst_.target).empty();
    }

    Placement rotation(const std::vector<AgentId>& order) const {
        Placement s = last_;
        const std::size_t p = order.size();
        for (std::size_t j = 0; j < p; ++j) s[order[j]] = last_[order[(j + 1) % p]];
        return s;
    }

    std::vector<char> bad_indices(const std::vector<AgentId>& order) const {
        Placement s = rotation(order);
        std::vector<char> bad(order.size(), 0);
        for (auto [a, b] : detect_swaps(before_, s))
            for (std::size_t j = 0; j < order.size(); ++j)
                if (order[j] == a || order[j] == b) bad[j] = 1;
        return bad;
    }

    static int count(const std::vector<char>& bad) {
        return static_cast<int>(std::count(bad.begin(), bad.end(), 1));
    }

    std::optional<Placement> rotate_betas() const {
        std::vector<AgentId> order = betas_;
        const std::size_t p = order.size();
        auto bad = bad_indices(order);
        for (std::size_t iter = 0; iter <= p && count(bad) > 0; ++iter) {
            std::size_t j = std::find(bad.begin(), bad.end(), 1) - bad.begin();
            auto first = order;
            std::swap(first[(j + 1) % p], first[j]);
            auto bad_first = bad_indices(first);
            if (count(bad_first) < count(bad)) {
                order = std::move(first);
                bad = std::move(bad_first);
                continue;
            }
            auto second = order;
            std::swap(second[(j + 1) % p], second[(j + 2) % p]);
            auto bad_second = bad_indices(second);
            if (count(bad_second) < count(bad)) {
                order = std::move(second);
                bad = std::move(bad_second);
                continue;
            }
            break;
        }
        Placement s = rotation(order);
        if (clean(s)) return s;
        // Exhaustive search over cyclic orders as a last resort.
        std::vector<AgentId> rest(betas_.begin() + 1, betas_.end());
        std::sort(rest.begin(), rest.end());
        long budget = 2'000'000;
        do {
            std::vector<AgentId> cand{betas_[0]};
            cand.insert(cand.end(), rest.begin(), rest.end());
            Placement t = rotation(cand);
            if (clean(t)) return t;
        } while (--budget > 0 && std::next_permutation(rest.begin(), rest.end()));
        return std::nullopt;
    }

    // A core agent that would swap with an agent moving from `from` to `to`.
    bool core_blocks(Vertex from, Vertex to) const {
        AgentId a = holder_before_[to];
        return a >= 0 && core_[a] && last_[a] == from;
    }

    std::optional<Placement> exchange_with_helpers() const {
        std::vector<char> excluded(inst_.agent_count(), 0);
        for (AgentId a : alphas_) excluded[a] = 1;
        for (AgentId b : betas_) excluded[b] = 1;
        std::vector<AgentId> pool;
        for (AgentId a = 0; a < inst_.agent_count(); ++a)
            if (!core_[a] && !excluded[a]) pool.push_back(a);
        std::vector<AgentId> helpers;
        std::optional<Placement> found;
        long budget = 2'000'000;
        search(pool, helpers, found, budget);
        return found;
    }

    bool admissible(AgentId beta, AgentId gamma, const std::vector<AgentId>& helpers) const {
        if (core_blocks(before_[gamma], last_[beta])) return false;
        if (core_blocks(before_[beta], last_[gamma])) return false;
        for (AgentId b : betas_)
            if (before_[gamma] == last_[b]) return false;
        for (AgentId g : helpers) {
            if (before_[beta] == last_[g]) return false;
            if (before_[gamma] == last_[g] || before_[g] == last_[gamma]) return false;
        }
        return before_[beta] != last_[gamma];
    }

    void search(const std::vector<AgentId>& pool, std::vector<AgentId>& helpers,
                std::optional<Placement>& found, long& budget) const {
        if (found || --budget < 0) return;
        std::size_t j = helpers.size();
        if (j == betas_.size()) {
            Placement s = last_;
            for (std::size_t i = 0; i < j; ++i) {
                s[betas_[i]] = last_[helpers[i]];
                s[helpers[i]] = last_[betas_[i]];
            }
            if (clean(s)) found = std::move(s);
            return;
        }
        for (AgentId g : pool) {
            if (std::find(helpers.begin(), helpers.end(), g) != helpers.end()) continue;
            if (!admissible(betas_[j], g, helpers)) continue;
            helpers.push_back(g);
            search(pool, helpers, found, budget);
            helpers.pop_back();
            if (found) return;
        }
    }

    const Instance& inst_;
    int m_;
    const Schedule& partial_;
    std::vector<bool> core_;
    Placement before_, last_;
    std::vector<AgentId> holder_before_;
    std::vector<AgentId> alphas_, betas_;
};

}  // namespace

Schedule repair_final_swaps(const Instance& inst, const CliqueSplit& split, const Schedule& partial,
                            std::span<const AgentId> core) {
    (void)split;
    if (partial.makespan() == 0) return partial;
    if (partial.turns.back() != inst.target)
        throw PreconditionError("last placement must be the target");
    if (detect_swaps(placement_at(inst.start, partial, partial.makespan() - 1), inst.target).empty())
        return partial;
    if (partial.makespan() < 2) throw PreconditionError("swap repair needs makespan >= 2");
    return FinalRepair(inst, partial, core).run();
}

Schedule lift_schedule(const Instance& inst, const CliqueSplit& split, const Kernel& kernel,
                       const Schedule& kernel_schedule) {
    const int agents = inst.agent_count();
    const auto& core = kernel.to_original_agent;
    const int m = kernel_schedule.makespan();
    auto core_positions = [&](int turn) {
        const Placement& local = placement_at(kernel.instance.start, kernel_schedule, turn);
        Placement out(local.size());
        for (std::size_t i = 0; i < local.size(); ++i) out[i] = kernel.to_original_vertex[local[i]];
        return out;
    };

    if (static_cast<int>(core.size()) == agents) {
        Schedule out;
        for (int i = 1; i <= m; ++i) {
            Placement p(agents);
            Placement c = core_positions(i);
            for (std::size_t j = 0; j < core.size(); ++j) p[core[j]] = c[j];
            out.turns.push_back(std::move(p));
        }
        return out;
    }

    std::vector<bool> is_core(agents, false);
    for (AgentId a : core) is_core[a] = true;
    std::vector<AgentId> rest;
    for (AgentId a = 0; a < agents; ++a)
        if (!is_core[a]) rest.push_back(a);
    if (static_cast<int>(rest.size()) <= std::max<int>(static_cast<int>(core.size()), 50))
        throw PreconditionError("lift requires more than max(|core|, 50) non-core agents");
    if (m == 0) {
        if (inst.start != inst.target) throw PreconditionError("lift of an empty schedule");
        return {};
    }

    auto free_clique = [&](const Placement& core_pos) {
        std::vector<bool> taken(inst.graph.size(), false);
        for (Vertex v : core_pos) taken[v] = true;
        std::vector<Vertex> out;
        for (Vertex v : split.clique)
            if (!taken[v]) out.push_back(v);
        return out;
    };

    Schedule out;
    Placement cur = inst.start;
    Placement core_prev = core_positions(0);
    for (int i = 0; i + 1 < m; ++i) {
        Placement core_next = core_positions(i + 1);
        std::vector<Vertex> occupied;
        for (AgentId a : rest) occupied.push_back(cur[a]);
        LiftFrame frame =
            plan_frame(free_clique(core_prev), free_clique(core_next), occupied, core_prev, core_next);
        Placement next(agents);
        for (std::size_t j = 0; j < core.size(); ++j) next[core[j]] = core_next[j];
        for (AgentId a : rest) next[a] = frame.image(cur[a]);
        out.turns.push_back(next);
        cur = std::move(next);
        core_prev = std::move(core_next);
    }
    out.turns.push_back(inst.target);
    return repair_final_swaps(inst, split, out, core);
}

}  // namespace dcmapf
