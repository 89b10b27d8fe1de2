#include <doctest.h>

#include <numeric>
#include <set>

#include "brute.hpp"
#include "dcmapf/errors.hpp"
#include "dcmapf/fpt.hpp"
#include "dcmapf/lift.hpp"
#include "dcmapf/oracle.hpp"
#include "dcmapf/random_instance.hpp"

using namespace dcmapf;

namespace {

Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Instance make(Graph g, Placement s, Placement t) {
    Instance inst;
    inst.graph = std::move(g);
    inst.start = std::move(s);
    inst.target = std::move(t);
    return inst;
}

Placement random_placement(int vertices, int agents, std::mt19937_64& rng) {
    std::vector<Vertex> v(vertices);
    std::iota(v.begin(), v.end(), 0);
    for (int i = vertices - 1; i > 0; --i) std::swap(v[i], v[uniform_below(rng, i + 1)]);
    return Placement(v.begin(), v.begin() + agents);
}

}  // namespace

TEST_CASE("perfect matching avoids forbidden pairs") {
    std::vector<Vertex> sources{0, 1, 2, 3, 4}, sinks{5, 6, 7, 8, 9};
    std::vector<VertexPair> forbidden{{0, 5}};
    auto m = perfect_matching(sources, sinks, forbidden);
    REQUIRE(m);
    CHECK(m->size() == 5);
    std::set<Vertex> used;
    for (auto [s, t] : *m) {
        CHECK(VertexPair{s, t} != VertexPair{0, 5});
        used.insert(t);
    }
    CHECK(used.size() == 5);

    std::vector<Vertex> one{0}, sink{5};
    CHECK_FALSE(perfect_matching(one, sink, forbidden));
}

TEST_CASE("mutual exchanges become loops") {
    std::vector<VertexPair> m{{0, 1}, {1, 0}, {2, 3}, {3, 4}, {4, 2}};
    CHECK(fix_mutual_exchanges(m) == 1);
    Placement prev, next;
    for (auto [s, t] : m) {
        prev.push_back(s);
        next.push_back(t);
    }
    CHECK(detect_swaps(prev, next).empty());
}

TEST_CASE("plan_frame") {
    // Core agent moves 5 -> 0 while non-core agents sit on 0..3.
    std::vector<Vertex> free_prev{0, 1, 2, 3, 4}, free_next{1, 2, 3, 4, 5};
    std::vector<Vertex> occupied{0, 1, 2, 3}, core_prev{5}, core_next{0};
    LiftFrame f = plan_frame(free_prev, free_next, occupied, core_prev, core_next);
    CHECK(f.sources.size() == f.sinks.size());
    CHECK(f.forbidden == std::vector<VertexPair>{{0, 5}});
    CHECK(f.image(0) != 5);
    Placement prev{5}, next{0};
    for (Vertex v : occupied) {
        prev.push_back(v);
        next.push_back(f.image(v));
    }
    CHECK(detect_swaps(prev, next).empty());
    std::set<Vertex> images(next.begin(), next.end());
    CHECK(images.size() == next.size());
}

TEST_CASE("identity lift when every agent is core") {
    Graph g(5);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.add_edge(u, v);
    g.add_edge(4, 0);
    Instance inst = make(g, {4, 1}, {1, 4});
    CliqueSplit split = clique_split(g);
    Typing t = classify_types(inst, split);
    std::vector<AgentId> core{0, 1};
    Kernel k = build_kernel(inst, split, t, core);
    auto ks = optimal_schedule(k.instance, 20);
    REQUIRE(ks);
    Schedule lifted = lift_schedule(inst, split, k, ks->schedule);
    CHECK(lifted.makespan() == ks->makespan());
    CHECK(validate_schedule(inst, lifted).ok());
}

TEST_CASE("repair_final_swaps") {
    Graph g = complete(70);
    CliqueSplit split = clique_split(g);
    Instance still = make(g, {0, 1}, {1, 0});
    Schedule none{{{2, 3}, {1, 0}}};
    std::vector<AgentId> no_core;
    CHECK(repair_final_swaps(still, split, none, no_core) == none);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const int agents = 60;
        Placement s0 = random_placement(70, agents, rng);
        Placement s1 = random_placement(70, agents, rng);
        if (!detect_swaps(s0, s1).empty()) continue;
        int p = 1 + static_cast<int>(uniform_below(rng, 6));
        Placement t = s1;
        for (int j = 0; j < p; ++j) std::swap(t[10 + 2 * j], t[11 + 2 * j]);
        Instance inst = make(g, s0, t);
        std::vector<AgentId> core{0, 1, 2, 3};
        Schedule partial{{s1, t}};
        Schedule fixed = repair_final_swaps(inst, split, partial, core);
        CHECK(validate_schedule(inst, fixed).ok());
        CHECK(fixed.makespan() == 2);
        for (AgentId a : core) CHECK(fixed.turns[0][a] == s1[a]);
    }
}

TEST_CASE("solve_fpt examples") {
    auto clique = solve_fpt(make(complete(5), {0, 1}, {1, 0}));
    REQUIRE(clique);
    CHECK(clique->makespan() == 2);

    Graph star(5);
    for (int i = 1; i <= 4; ++i) star.add_edge(0, i);
    Instance exchange = make(star, {1, 2}, {2, 1});
    auto s = solve_fpt(exchange);
    REQUIRE(s);
    CHECK(s->makespan() == 4);
    CHECK(validate_schedule(exchange, s->schedule).ok());

    Graph edge(2);
    edge.add_edge(0, 1);
    CHECK_FALSE(solve_fpt(make(edge, {0, 1}, {1, 0})));
    // A path on three vertices is not a clique, so the kernel route is used.
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK_FALSE(solve_fpt(make(path, {0, 2}, {2, 0})));

    Instance limited = exchange;
    limited.makespan_limit = 3;
    CHECK_FALSE(solve_fpt(limited));
}

TEST_CASE("solve_fpt matches the oracle on small random instances") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        std::mt19937_64 rng(seed * 31 + 7);
        int n = 2 + static_cast<int>(uniform_below(rng, 6));
        int a = 1 + static_cast<int>(uniform_below(rng, std::min(n, 3)));
        int dc = static_cast<int>(uniform_below(rng, 3));
        Instance inst = random_instance({n, dc, a, seed});
        auto fpt = solve_fpt(inst);
        auto expect = brute::optimal_makespan(inst, 30);
        CHECK(fpt.has_value() == expect.has_value());
        if (fpt && expect) {
            CHECK(fpt->makespan() == *expect);
            CHECK(validate_schedule(inst, fpt->schedule).ok());
        }
    }
}

TEST_CASE("solve_fpt lifts a small core to many agents") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        std::mt19937_64 rng(seed);
        const int q = 150;
        Graph g(q + 1);
        for (int u = 0; u < q; ++u)
            for (int v = u + 1; v < q; ++v) g.add_edge(u, v);
        for (int v = 0; v < q / 2; ++v) g.add_edge(q, v);
        Placement s = random_placement(q, 120, rng);
        Placement t = random_placement(q, 120, rng);
        s[0] = q;
        Instance inst = make(g, s, t);
        FptOptions options;
        options.core.kappa = 1;
        FptStats stats;
        auto sol = solve_fpt(inst, options, &stats);
        REQUIRE(sol);
        CHECK(stats.core_agents < inst.agent_count());
        CHECK(validate_schedule(inst, sol->schedule).ok());
        CHECK(sol->makespan() <= makespan_bound(1));
    }
}
