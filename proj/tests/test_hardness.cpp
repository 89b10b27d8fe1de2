#include <doctest.h>

#include <numeric>
#include <queue>
#include <set>

#include "dcmapf/errors.hpp"
#include "dcmapf/pancake.hpp"
#include "dcmapf/random_instance.hpp"
#include "dcmapf/registry.hpp"
#include "dcmapf/three_partition.hpp"

using namespace dcmapf;

namespace {

std::vector<int> distances(const Graph& g, Vertex from) {
    std::vector<int> d(g.size(), -1);
    std::queue<Vertex> q;
    d[from] = 0;
    q.push(from);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (d[w] < 0) {
                d[w] = d[v] + 1;
                q.push(w);
            }
    }
    return d;
}

bool is_tree(const Graph& g) {
    if (g.edge_count() != g.size() - 1) return false;
    auto d = distances(g, 0);
    return std::find(d.begin(), d.end(), -1) == d.end();
}

int count_degree(const Graph& g, bool leaves) {
    int c = 0;
    for (Vertex v = 0; v < g.size(); ++v) c += leaves ? g.degree(v) == 1 : g.degree(v) >= 2;
    return c;
}

// Starting positions of agents 1..n such that `flips` sorts them.
std::vector<int> sortable_perm(int n, const std::vector<int>& flips) {
    std::vector<int> arr(n);
    std::iota(arr.begin(), arr.end(), 1);
    for (auto it = flips.rbegin(); it != flips.rend(); ++it) std::reverse(arr.begin(), arr.begin() + *it);
    std::vector<int> perm(n);
    for (int p = 0; p < n; ++p) perm[arr[p] - 1] = p + 1;
    return perm;
}

std::string apply_flips(std::string s, const std::vector<int>& flips) {
    for (int r : flips) std::reverse(s.begin(), s.begin() + r);
    return s;
}

}  // namespace

TEST_CASE("three-partition preprocessing") {
    CHECK_THROWS_AS(make_three_partition({1, 1, 1}), PreconditionError);
    CHECK_THROWS_AS(make_three_partition({1, 1, 1, 1, 1, 2}), PreconditionError);
    auto tp = preprocess_three_partition(make_three_partition({1, 1, 1, 1, 1, 1}));
    CHECK(tp.phi == 126);
    for (auto b : tp.betas) CHECK(b == 42);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(uniform_below(rng, 4));
        std::vector<std::int64_t> betas;
        for (int i = 0; i < 3 * n; ++i) betas.push_back(10 + static_cast<std::int64_t>(uniform_below(rng, 10)));
        std::int64_t sum = std::accumulate(betas.begin(), betas.end(), std::int64_t{0});
        betas.back() += (n - sum % n) % n;
        auto out = preprocess_three_partition(make_three_partition(betas));
        for (auto b : out.betas) {
            CHECK(4 * b > out.phi);
            CHECK(2 * b < out.phi);
            CHECK(b % 6 == 0);
        }
    }
    // A value of at least 1.5 phi leaves the open interval.
    CHECK_THROWS_AS(preprocess_three_partition(make_three_partition({1, 1, 1, 1, 1, 19})),
                    PreconditionError);
}

TEST_CASE("three-partition construction") {
    auto tp = preprocess_three_partition(make_three_partition({1, 1, 1, 1, 1, 1}));
    GeneratedInstance g = build_three_partition_instance(tp);
    const Graph& graph = g.instance.graph;
    const std::int64_t n = tp.n, phi = tp.phi, limit = n * phi + 3 * n;
    CHECK(is_tree(graph));
    CHECK(count_degree(graph, false) == 9);
    auto cover = min_vertex_cover(graph, 7);
    REQUIRE(cover);
    CHECK(cover->size() == 7);
    CHECK_FALSE(min_vertex_cover(graph, 6));
    CHECK(*g.instance.makespan_limit == limit);

    std::int64_t z = phi + (n - 2) * (phi + 2) + phi + 4;
    std::int64_t bow = 2 * 2 * (limit - 1 - 4 * n) + 3 * 2 * (limit - 1 - (2 * n - 2));
    std::int64_t expected = 9 + 3 * n * 42 + z + (4 * n - 4) + 8 * n + bow;
    CHECK(graph.size() == expected);

    std::set<Vertex> named;
    for (const auto& [name, v] : g.registry.vertices()) named.insert(v);
    CHECK(static_cast<int>(named.size()) == graph.size());
    std::set<AgentId> agents;
    for (const auto& [name, ids] : g.registry.groups())
        if (name.find('[') == std::string::npos) agents.insert(ids.begin(), ids.end());
    CHECK(static_cast<int>(agents.size()) == g.instance.agent_count());
}

TEST_CASE("single red edge recipe") {
    // Hub 0, neighbour 1, leaves 2..5; the first agent starts on the hub.
    Instance inst;
    inst.graph = Graph(6);
    for (Vertex v = 1; v < 6; ++v) inst.graph.add_edge(0, v);
    std::vector<Vertex> leaves{2, 3, 4, 5};
    std::vector<AgentId> edge;
    for (int j = 0; j < 4; ++j) {
        inst.start.push_back(j == 0 ? 0 : leaves[j]);
        inst.target.push_back(leaves[(j + 1) % 4]);
        edge.push_back(j);
    }
    RedEdgeTiming timing;
    Schedule s = red_edge_schedule(inst, edge, 0, 1, 0, 6, &timing);
    CHECK(timing.end == 6);
    CHECK(timing.neighbour_first == 2);
    CHECK(timing.neighbour_last == 4);
    CHECK(validate_schedule(inst, s).ok());
    for (int t = 1; t <= 6; ++t) {
        bool used = std::find(s.turns[t - 1].begin(), s.turns[t - 1].end(), 1) != s.turns[t - 1].end();
        CHECK(used == (t >= 2 && t <= 4));
    }
}

TEST_CASE("three-partition forward schedule") {
    for (auto raw : std::vector<std::vector<std::int64_t>>{{1, 1, 1, 1, 1, 1},
                                                          {1, 2, 3, 3, 2, 1},
                                                          {2, 3, 4, 1, 4, 4, 3, 3, 3}}) {
        auto tp = preprocess_three_partition(make_three_partition(raw));
        GeneratedInstance g = build_three_partition_instance(tp);
        std::vector<Triple> partition;
        if (raw.size() == 6) partition = {{1, 2, 3}, {4, 5, 6}};
        if (raw == std::vector<std::int64_t>{1, 2, 3, 3, 2, 1}) partition = {{2, 3, 6}, {1, 4, 5}};
        if (raw.size() == 9) partition = {{4, 3, 5}, {1, 2, 6}, {7, 8, 9}};
        Schedule s = three_partition_forward_schedule(g.instance, g.registry, partition);
        CHECK(s.makespan() == *g.instance.makespan_limit);
        Verdict v = validate_schedule(g.instance, s);
        CHECK_MESSAGE(v.ok(), (v.ok() ? "" : v.violation->describe()));
    }
    auto tp = preprocess_three_partition(make_three_partition({1, 2, 3, 3, 2, 1}));
    GeneratedInstance g = build_three_partition_instance(tp);
    std::vector<Triple> wrong{{1, 4, 6}, {2, 3, 5}};
    CHECK_THROWS_AS(three_partition_forward_schedule(g.instance, g.registry, wrong), PreconditionError);
}

TEST_CASE("R7 leaves u4 free at the expected turns") {
    auto tp = preprocess_three_partition(make_three_partition({1, 2, 3, 4, 5, 6, 3, 3, 3}));
    GeneratedInstance g = build_three_partition_instance(tp);
    Schedule s = three_partition_forward_schedule(g.instance, g.registry,
                                                  std::vector<Triple>{{1, 6, 7}, {2, 5, 8}, {3, 4, 9}});
    REQUIRE(validate_schedule(g.instance, s).ok());
    const auto& r7 = g.registry.agents("A(R7)");
    const Vertex u4 = g.registry.vertex("u4");
    const int phi = static_cast<int>(tp.phi), n = tp.n;
    std::set<int> expect;
    for (int i = 1; i < n; ++i) {
        expect.insert(i * (phi + 3) - 3);
        expect.insert(i * (phi + 3) - 2);
    }
    // The last edge releases u4 for its final two turns.
    for (int t = 1; t <= s.makespan() - 2; ++t) {
        bool used = false;
        for (AgentId a : r7) used |= s.turns[t - 1][a] == u4;
        CHECK(used == !expect.count(t));
    }
}

TEST_CASE("pancake construction") {
    PancakeInstance p{{2, 1}, 1};
    GeneratedInstance g = build_pancake_instance(p);
    CHECK(*g.instance.makespan_limit == 12);
    CHECK(is_tree(g.instance.graph));
    CHECK(count_degree(g.instance.graph, true) == 11);
    for (const char* family : {"bB", "bC", "bA1", "bA2"})
        for (AgentId a : g.registry.agents(family))
            CHECK(distances(g.instance.graph, g.instance.start[a])[g.instance.target[a]] == 12);
    std::vector<int> flips{2};
    Schedule s = pancake_forward_schedule(g.instance, g.registry, flips);
    CHECK(s.makespan() == 12);
    CHECK(validate_schedule(g.instance, s).ok());

    CHECK_THROWS_AS(build_pancake_instance({{1, 1}, 1}), PreconditionError);
    std::vector<int> bad{1};
    CHECK_THROWS_AS(pancake_forward_schedule(g.instance, g.registry, bad), PreconditionError);

    GeneratedInstance id = build_pancake_instance({{1, 2, 3}, 1});
    std::vector<int> noop{1};
    Schedule t = pancake_forward_schedule(id.instance, id.registry, noop);
    CHECK(t.makespan() == 15);
    CHECK(validate_schedule(id.instance, t).ok());
}

TEST_CASE("pancake auxiliary agents hold vB0 during pop phases") {
    PancakeInstance p{sortable_perm(3, {3, 2}), 2};
    GeneratedInstance g = build_pancake_instance(p);
    std::vector<int> flips{3, 2};
    Schedule s = pancake_forward_schedule(g.instance, g.registry, flips);
    REQUIRE(validate_schedule(g.instance, s).ok());
    const Vertex vb0 = g.registry.vertex("vB[0]");
    std::vector<AgentId> aux;
    for (const char* family : {"bB", "bC", "bA1", "bA2"})
        for (AgentId a : g.registry.agents(family)) aux.push_back(a);
    const int np = p.n_plus();
    for (int t = 1; t <= s.makespan(); ++t) {
        bool held = false;
        for (AgentId a : aux) held |= s.turns[t - 1][a] == vb0;
        CHECK(held == ((t % (3 * np)) >= 2 * np));
    }
}

TEST_CASE("pancake forward schedules for random sortable inputs") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 4));
        int k = 1 + static_cast<int>(uniform_below(rng, 3));
        std::vector<int> flips;
        for (int i = 0; i < k; ++i) flips.push_back(1 + static_cast<int>(uniform_below(rng, n)));
        PancakeInstance p{sortable_perm(n, flips), k};
        GeneratedInstance g = build_pancake_instance(p);
        CHECK(count_degree(g.instance.graph, true) == 11);
        Schedule s = pancake_forward_schedule(g.instance, g.registry, flips);
        CHECK(s.makespan() == 3 * (n + 2) * k);
        Verdict v = validate_schedule(g.instance, s);
        CHECK_MESSAGE(v.ok(), (v.ok() ? "" : v.violation->describe()));
    }
}

TEST_CASE("colored pancake construction") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 5));
        int k = 1 + static_cast<int>(uniform_below(rng, 2));
        std::string alpha;
        for (int i = 0; i < n; ++i) alpha += static_cast<char>('0' + uniform_below(rng, 2));
        std::vector<int> flips;
        for (int i = 0; i < k; ++i) flips.push_back(1 + static_cast<int>(uniform_below(rng, n)));
        std::string beta = apply_flips(alpha, flips);
        GeneratedColoredInstance g = build_colored_pancake_instance(alpha, beta, k);
        CHECK(g.instance.groups.size() == 6);
        for (std::size_t group = 2; group < 6; ++group)
            CHECK(has_unique_pairing(g.instance.graph, g.instance.groups[group].starts,
                                     g.instance.groups[group].targets, *g.instance.makespan_limit));
        Schedule s = colored_pancake_forward_schedule(g.instance, g.registry, alpha, beta, flips);
        Verdict v = validate_colored_schedule(g.instance, s);
        CHECK_MESSAGE(v.ok(), (v.ok() ? "" : v.violation->describe()));
    }
    CHECK_THROWS_AS(build_colored_pancake_instance("01", "11", 1), PreconditionError);
}

TEST_CASE("unique pairing detection") {
    Graph path(4);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    std::vector<Vertex> starts{0, 1}, targets{2, 3};
    CHECK_FALSE(has_unique_pairing(path, starts, targets, 3));
    CHECK(has_unique_pairing(path, starts, targets, 2));
    std::vector<Vertex> s1{0, 3}, t1{1, 2};
    CHECK(has_unique_pairing(path, s1, t1, 1));
    CHECK_FALSE(has_unique_pairing(path, s1, t1, 0));
}

TEST_CASE("registry round trip") {
    GeneratedInstance g = build_pancake_instance({{2, 1}, 1});
    std::string text = serialize_registry(g.registry);
    GadgetRegistry back = parse_registry(text);
    CHECK(back.vertices() == g.registry.vertices());
    CHECK(back.groups() == g.registry.groups());
    CHECK(back.vertex("v*") == g.registry.vertex("v*"));
    CHECK(indexed("vA", -3) == "vA[-3]");
    GadgetRegistry r;
    r.name_vertex("x", 0);
    CHECK_THROWS(r.name_vertex("x", 1));
}
