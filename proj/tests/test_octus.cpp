#include "mader/canonical.hpp"
#include "mader/families.hpp"
#include "mader/octus.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace mader;

namespace {

bool is_subdigraph_labeled(const Digraph& small, const Replay& big)
{
    // small uses labels; big.graph numbers vertices by ascending label.
    auto id = [&](Vertex label) {
        auto it = std::find(big.labels.begin(), big.labels.end(), label);
        return it == big.labels.end() ? -1 : static_cast<Vertex>(it - big.labels.begin());
    };
    for (const auto& a : small.arcs()) {
        Vertex u = id(a.tail), v = id(a.head);
        if (u < 0 || v < 0 || !big.graph.has_arc(u, v))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("ear_add examples")
{
    Digraph k1 = Digraph::build(1, {});
    EarSpec digon{0, {1}, {}, Closing::AnchorToEnd};
    CHECK(ear_add(k1, digon) == complete_bidigraph(2));
    EarSpec again{1, {2}, {}, Closing::EndToAnchor};
    CHECK(are_isomorphic(ear_add(complete_bidigraph(2), again), bioriented_path(3)));

    Digraph p = k1;
    for (int t = 1; t < 5; ++t)
        p = ear_add(p, EarSpec{t - 1, {t}, {}, Closing::AnchorToEnd});
    CHECK(p == bioriented_path(5));

    // k = 3 ear with closing arc: digon 0-1, 1 -> 2 -> 3, 0 -> 3
    EarSpec three{0, {1, 2, 3}, {true, true}, Closing::AnchorToEnd};
    Digraph f = ear_add(k1, three);
    CHECK(f.size() == 5);
    CHECK(f.has_digon(0, 1));
    CHECK(f.has_arc(1, 2));
    CHECK(f.has_arc(2, 3));
    CHECK(f.has_arc(0, 3));
    CHECK(three.arcs().size() == 5);

    CHECK_THROWS_AS(ear_add(k1, EarSpec{3, {1}, {}, Closing::AnchorToEnd}), std::invalid_argument);
    CHECK_THROWS_AS(ear_add(complete_bidigraph(2), EarSpec{0, {1}, {}, Closing::AnchorToEnd}),
                    std::invalid_argument);
}

TEST_CASE("is_octus examples")
{
    CHECK(is_octus(Digraph::build(1, {})));
    CHECK_FALSE(is_octus(k3_minus_e()));
    CHECK_FALSE(is_octus(complete_bidigraph(3)));
    CHECK_FALSE(is_octus(tournament4(Tournament4::Transitive)));
    Digraph star = Digraph::build(4, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {0, 3}, {3, 0}});
    auto h = is_octus(star);
    REQUIRE(h);
    CHECK(h->steps.size() == 3);
    CHECK(replay(*h).graph == star);
    for (std::uint64_t bits = 0; bits < 16; ++bits) {
        Digraph c = oriented_cycle(4, bits);
        auto hc = is_octus(c);
        REQUIRE(hc);
        CHECK(replay(*hc).graph == c);
    }
}

TEST_CASE("is_octus agrees with the ear-enumeration oracle")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& d : enumerate_digraphs(n, true)) {
            auto h = is_octus(d);
            CHECK(h.has_value() == oracle::is_octus(d));
            if (h)
                CHECK(replay(*h).graph == d);
        }
    std::mt19937_64 rng(2);
    for (int i = 0; i < 150; ++i) {
        Digraph d = random_digraph({5, 0.25, rng()});
        CHECK(is_octus(d).has_value() == oracle::is_octus(d));
    }
}

TEST_CASE("digon-free octi are exactly the cactus orientations")
{
    for (int n = 1; n <= 5; ++n)
        for (const auto& d : enumerate_digraphs(n, true)) {
            bool digon_free = true;
            for (const auto& a : d.arcs())
                digon_free = digon_free && !d.has_arc(a.head, a.tail);
            if (!digon_free)
                continue;
            CHECK(is_octus(d).has_value() == is_cactus_orientation(d));
        }
    CHECK(is_cactus_orientation(oriented_cycle(5, 0b10110)));
    CHECK_FALSE(is_cactus_orientation(tournament4(Tournament4::Strong)));
    CHECK_FALSE(is_cactus_orientation(complete_bidigraph(2)));
}

TEST_CASE("bioriented forests are octi")
{
    CHECK(is_bioriented_forest(bioriented_path(4)));
    CHECK_FALSE(is_bioriented_forest(directed_cycle(3)));
    CHECK_FALSE(is_bioriented_forest(complete_bidigraph(3)));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 60; ++i) {
        int n = 2 + static_cast<int>(rng() % 7);
        std::vector<Edge> edges;
        for (int v = 1; v < n; ++v)
            if (rng() % 4) {
                int u = static_cast<int>(rng() % static_cast<std::uint64_t>(v));
                edges.push_back({u, v});
            }
        Digraph f = biorient(n, edges);
        CHECK(is_bioriented_forest(f));
        auto h = is_octus(f);
        REQUIRE(h);
        CHECK(replay(*h).graph == f);
    }
}

TEST_CASE("complete_to_maximal contains its input")
{
    Digraph arc = Digraph::build(2, {{0, 1}});
    auto h = is_octus(arc);
    REQUIRE(h);
    OctusHistory m = complete_to_maximal(*h);
    CHECK(m.ears_only());
    CHECK(replay(m).graph == complete_bidigraph(2));

    auto digon = is_octus(complete_bidigraph(2));
    REQUIRE(digon);
    CHECK(replay(complete_to_maximal(*digon)).graph == complete_bidigraph(2));

    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        Digraph d = random_digraph({5, 0.3, rng()});
        auto hd = is_octus(d);
        if (!hd)
            continue;
        OctusHistory mx = complete_to_maximal(*hd);
        CHECK(mx.ears_only());
        Replay r = replay(mx);
        CHECK(is_subdigraph_labeled(d, r));
        for (Vertex v = 0; v < d.order(); ++v)
            CHECK(r.labels[v] == v);
    }
}

TEST_CASE("spanning_maximal covers exactly the given vertices")
{
    std::mt19937_64 rng(12);
    int done = 0;
    for (int i = 0; i < 400 && done < 80; ++i) {
        Digraph d = random_digraph({5, 0.3, rng()});
        if (!is_weakly_connected(d))
            continue;
        auto hd = is_octus(d);
        if (!hd)
            continue;
        OctusHistory m = complete_to_maximal(*hd);
        std::vector<Vertex> vertices(d.order());
        std::iota(vertices.begin(), vertices.end(), 0);
        OctusHistory s = spanning_maximal(m, vertices, d.arcs());
        Replay r = replay(s);
        CHECK(s.ears_only());
        CHECK(r.labels == vertices);
        CHECK(is_subdigraph_labeled(d, r));
        ++done;
    }
    CHECK(done > 20);
}

TEST_CASE("spanning_maximal on a path inside a bioriented path")
{
    OctusHistory m{0, {}};
    for (int t = 1; t < 5; ++t)
        m.steps.push_back({OctusStep::Kind::Ear, EarSpec{t - 1, {t}, {}, Closing::AnchorToEnd}, 0, {}});
    std::vector<Vertex> vertices{1, 2, 3};
    std::vector<Arc> arcs{{1, 2}, {3, 2}};
    Replay r = replay(spanning_maximal(m, vertices, arcs));
    CHECK(r.labels == vertices);
    CHECK(are_isomorphic(r.graph, bioriented_path(3)));
    std::vector<Vertex> split{1, 3};
    std::vector<Arc> none;
    CHECK_THROWS_AS(spanning_maximal(m, split, none), std::invalid_argument);
}

TEST_CASE("history text format")
{
    auto h = is_octus(oriented_cycle(5, 0b01101));
    REQUIRE(h);
    std::string text = format_history(*h);
    CHECK(parse_history(text) == *h);
    OctusHistory p = parse_history("ROOT 0\nEAR 0 1 v0->vk -\nEAR 1 2 vk->v0 1\n");
    Replay r = replay(p);
    CHECK(r.graph.order() == 4);
    CHECK(r.graph.size() == 2 + 4);
    CHECK_THROWS_AS(parse_history("ROOT 0\nEAR 0 2 sideways 1\n"), ParseError);
    CHECK_THROWS_AS(replay(parse_history("ROOT 0\nDELV 3\n")), std::invalid_argument);
}
