#include "dcmapf/three_partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dcmapf/errors.hpp"
#include "timeline.hpp"

namespace dcmapf {

using detail::Timeline;

namespace {

constexpr int kBaseVertices = 9;

// Base tree edges on u1..u9 (1-based).
constexpr std::array<std::pair<int, int>, 8> kBaseEdges{
    {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}, {2, 8}, {2, 9}, {4, 7}}};

std::string hub_name(int i) { return "u" + std::to_string(i); }

class TreeBuilder {
public:
    Vertex add_leaf(Vertex hub, const std::string& name) {
        Vertex v = next_++;
        edges_.emplace_back(hub, v);
        registry.name_vertex(name, v);
        return v;
    }
    AgentId add_agent(Vertex s, Vertex t) {
        starts_.push_back(s);
        targets_.push_back(t);
        return static_cast<AgentId>(starts_.size() - 1);
    }
    Instance finish(int limit) {
        Instance inst;
        inst.graph = Graph(next_);
        for (auto [u, v] : edges_) inst.graph.add_edge(u, v);
        inst.start = std::move(starts_);
        inst.target = std::move(targets_);
        inst.makespan_limit = limit;
        return inst;
    }
    void add_edge(Vertex u, Vertex v) { edges_.emplace_back(u, v); }
    Vertex reserve(const std::string& name) {
        registry.name_vertex(name, next_);
        return next_++;
    }

    GadgetRegistry registry;

private:
    Vertex next_ = 0;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    Placement starts_, targets_;
};

// One red edge per size; the first agent of the first edge starts on the hub.
void add_red_star(TreeBuilder& b, Vertex hub, const std::string& label,
                  std::span<const std::int64_t> sizes) {
    std::vector<AgentId> all;
    for (std::size_t e = 0; e < sizes.size(); ++e) {
        std::string edge = indexed(label, static_cast<long>(e) + 1);
        std::vector<Vertex> leaves;
        for (std::int64_t j = 1; j <= sizes[e]; ++j)
            leaves.push_back(b.add_leaf(hub, edge + ".v" + indexed("", j)));
        std::vector<AgentId> agents;
        const std::size_t c = leaves.size();
        for (std::size_t j = 0; j < c; ++j) {
            Vertex s = (e == 0 && j == 0) ? hub : leaves[j];
            agents.push_back(b.add_agent(s, leaves[(j + 1) % c]));
        }
        all.insert(all.end(), agents.begin(), agents.end());
        b.registry.name_agents("A(" + edge + ")", std::move(agents));
    }
    b.registry.name_agents("A(" + label + ")", std::move(all));
}

void add_bow_tie(TreeBuilder& b, Vertex hub, const std::string& hub_label, std::int64_t size) {
    std::string label = "T(" + hub_label + ")";
    std::vector<Vertex> leaves;
    for (std::int64_t j = 1; j <= 2 * size; ++j) leaves.push_back(b.add_leaf(hub, label + ".w" + indexed("", j)));
    std::vector<AgentId> agents;
    for (std::int64_t j = 0; j < size; ++j) agents.push_back(b.add_agent(leaves[j], leaves[size + j]));
    b.registry.name_agents("A_" + label, std::move(agents));
}

// Moves of one red edge (a_1 .. a_c) on `timeline`, first turn tau + 1.
// Returns the turn at which the last agent arrives.
int apply_red_edge(Timeline& tl, const Instance& inst, std::span<const AgentId> edge, Vertex hub,
                   Vertex neighbour, int tau) {
    const int c = static_cast<int>(edge.size());
    if (c < 2) throw PreconditionError("red edge needs at least two agents");
    AgentId first = edge[0];
    tl.place(first, tau + 1, hub);
    tl.place(first, tau + 2, neighbour);
    for (int i = c; i >= 2; --i) {
        AgentId a = edge[i - 1];
        tl.place(a, tau + c - i + 2, hub);
        tl.place(a, tau + c - i + 3, inst.target[a]);
    }
    tl.place(first, tau + c + 1, hub);
    tl.place(first, tau + c + 2, inst.target[first]);
    return tau + c + 2;
}

}  // namespace

ThreePartitionInstance make_three_partition(std::vector<std::int64_t> betas) {
    if (betas.size() % 3 != 0 || betas.size() < 6)
        throw PreconditionError("need 3n values with n >= 2");
    for (auto b : betas)
        if (b <= 0) throw PreconditionError("values must be positive");
    ThreePartitionInstance tp;
    tp.n = static_cast<int>(betas.size() / 3);
    std::int64_t sum = std::accumulate(betas.begin(), betas.end(), std::int64_t{0});
    if (sum % tp.n != 0) throw PreconditionError("sum is not divisible by n");
    tp.phi = sum / tp.n;
    tp.betas = std::move(betas);
    return tp;
}

ThreePartitionInstance preprocess_three_partition(const ThreePartitionInstance& tp) {
    std::vector<std::int64_t> shifted;
    for (auto b : tp.betas) shifted.push_back(6 * (b + 2 * tp.phi));
    ThreePartitionInstance out = make_three_partition(std::move(shifted));
    for (auto b : out.betas) {
        if (b % 6 != 0) throw std::logic_error("preprocessed value not a multiple of 6");
        if (!(4 * b > out.phi && 2 * b < out.phi))
            throw PreconditionError("value " + std::to_string(b) +
                                    " is outside (phi/4, phi/2) after preprocessing");
    }
    return out;
}

GeneratedInstance build_three_partition_instance(const ThreePartitionInstance& tp) {
    if (tp.n < 2) throw PreconditionError("n must be at least 2");
    const std::int64_t n = tp.n, phi = tp.phi;
    const std::int64_t limit = n * phi + 3 * n;
    TreeBuilder b;
    std::array<Vertex, kBaseVertices + 1> u{};
    for (int i = 1; i <= kBaseVertices; ++i) u[i] = b.reserve(hub_name(i));
    for (auto [x, y] : kBaseEdges) b.add_edge(u[x], u[y]);

    add_red_star(b, u[1], "R1", tp.betas);
    std::vector<std::int64_t> z(n, phi + 2);
    z.front() = phi;
    z.back() = phi + 4;
    add_red_star(b, u[7], "R7", z);

    std::vector<Vertex> xm, xp, ym, yp;
    for (std::int64_t i = 1; i <= 2 * n - 2; ++i) xm.push_back(b.add_leaf(u[5], indexed("x-", i)));
    for (std::int64_t i = 1; i <= 2 * n - 2; ++i) xp.push_back(b.add_leaf(u[6], indexed("x+", i)));
    std::vector<AgentId> ax, ay;
    for (std::size_t i = 0; i < xm.size(); ++i) ax.push_back(b.add_agent(xm[i], xp[i]));
    b.registry.name_agents("A^X", ax);
    for (std::int64_t i = 1; i <= 4 * n; ++i) ym.push_back(b.add_leaf(u[8], indexed("y-", i)));
    for (std::int64_t i = 1; i <= 4 * n; ++i) yp.push_back(b.add_leaf(u[9], indexed("y+", i)));
    for (std::size_t i = 0; i < ym.size(); ++i) ay.push_back(b.add_agent(ym[i], yp[i]));
    b.registry.name_agents("A^Y", ay);

    for (int h : {8, 9}) add_bow_tie(b, u[h], hub_name(h), limit - 1 - 4 * n);
    for (int h : {3, 5, 6}) add_bow_tie(b, u[h], hub_name(h), limit - 1 - (2 * n - 2));

    GeneratedInstance out;
    out.instance = b.finish(static_cast<int>(limit));
    out.registry = std::move(b.registry);
    return out;
}

Schedule red_edge_schedule(const Instance& inst, std::span<const AgentId> edge, Vertex hub,
                           Vertex neighbour, int tau, int horizon, RedEdgeTiming* timing) {
    Timeline tl(inst, horizon);
    int end = apply_red_edge(tl, inst, edge, hub, neighbour, tau);
    if (timing) *timing = {end, tau + 2, tau + static_cast<int>(edge.size())};
    return tl.schedule();
}

Schedule three_partition_forward_schedule(const Instance& inst, const GadgetRegistry& registry,
                                          std::span<const Triple> partition) {
    if (!inst.makespan_limit) throw PreconditionError("instance has no makespan limit");
    const int limit = *inst.makespan_limit;
    std::vector<std::vector<AgentId>> r1, r7;
    for (long e = 1; registry.has_agents("A(" + indexed("R1", e) + ")"); ++e)
        r1.push_back(registry.agents("A(" + indexed("R1", e) + ")"));
    for (long e = 1; registry.has_agents("A(" + indexed("R7", e) + ")"); ++e)
        r7.push_back(registry.agents("A(" + indexed("R7", e) + ")"));
    const int n = static_cast<int>(r1.size() / 3);
    if (n < 2 || static_cast<int>(partition.size()) != n)
        throw PreconditionError("partition must consist of n triples");
    std::int64_t total = 0;
    for (const auto& e : r1) total += static_cast<std::int64_t>(e.size());
    const std::int64_t phi = total / n;

    // The triple holding the edge whose agent starts on u1 comes first, with
    // that edge leading; the remaining triples keep their order.
    std::vector<bool> used(3 * n + 1, false);
    std::vector<Triple> triples(partition.begin(), partition.end());
    for (const auto& t : triples) {
        std::int64_t sum = 0;
        for (int i : t) {
            if (i < 1 || i > 3 * n || used[i])
                throw PreconditionError("partition indices must cover 1..3n exactly once");
            used[i] = true;
            sum += static_cast<std::int64_t>(r1[i - 1].size());
        }
        if (sum != phi) throw PreconditionError("partition triple does not sum to phi");
    }
    auto lead = std::find_if(triples.begin(), triples.end(), [](const Triple& t) {
        return std::find(t.begin(), t.end(), 1) != t.end();
    });
    std::rotate(triples.begin(), lead, lead + 1);
    std::vector<int> order;
    for (const auto& t : triples) {
        std::vector<int> part(t.begin(), t.end());
        std::stable_partition(part.begin(), part.end(), [](int i) { return i == 1; });
        order.insert(order.end(), part.begin(), part.end());
    }

    auto hub = [&](int i) { return registry.vertex(hub_name(i)); };
    Timeline tl(inst, limit);

    // Red stars: consecutive edges share one turn, the first edge starts on the hub.
    auto star = [&](const std::vector<std::vector<AgentId>>& edges, const std::vector<int>& seq,
                    Vertex h, Vertex w) {
        int tau = -1;
        for (int e : seq) tau = apply_red_edge(tl, inst, edges[e - 1], h, w, tau) - 1;
    };
    star(r1, order, hub(1), hub(2));
    std::vector<int> identity(r7.size());
    std::iota(identity.begin(), identity.end(), 1);
    star(r7, identity, hub(7), hub(4));

    const std::vector<Vertex> x_route{hub(5), hub(4), hub(3), hub(2), hub(6)};
    const auto& ax = registry.agents("A^X");
    std::size_t next = 0;
    for (int tau = 0; tau + 6 <= limit && next < ax.size(); ++tau) {
        if (tl.busy(hub(4), tau + 2) || tl.busy(hub(2), tau + 4)) continue;
        AgentId a = ax[next++];
        std::vector<Vertex> path = x_route;
        path.push_back(inst.target[a]);
        tl.follow(a, tau + 1, path);
    }

    const auto& ay = registry.agents("A^Y");
    next = 0;
    for (int tau = 0; tau + 4 <= limit && next < ay.size(); ++tau) {
        if (tl.busy(hub(2), tau + 2)) continue;
        AgentId a = ay[next++];
        std::vector<Vertex> path{hub(8), hub(2), hub(9), inst.target[a]};
        tl.follow(a, tau + 1, path);
    }

    for (int h : {8, 9, 3, 5, 6}) {
        const auto& group = registry.agents("A_T(" + hub_name(h) + ")");
        next = 0;
        for (int tau = 0; tau + 2 <= limit && next < group.size(); ++tau) {
            if (tl.busy(hub(h), tau + 1)) continue;
            AgentId a = group[next++];
            std::vector<Vertex> path{hub(h), inst.target[a]};
            tl.follow(a, tau + 1, path);
        }
    }

    for (AgentId a = 0; a < inst.agent_count(); ++a)
        if (tl.at(a, limit) != inst.target[a])
            throw PreconditionError("recipes left agent " + std::to_string(a) + " unresolved");
    return tl.schedule();
}

}  // namespace dcmapf
