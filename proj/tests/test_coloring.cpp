#include "mader/coloring.hpp"
#include "mader/families.hpp"
#include "mader/menger.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace mader;

namespace {

// A random acyclic coloring with colors 1..k.
AcyclicColoring random_acyclic(const Digraph& d, int k, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(1, k);
    for (;;) {
        AcyclicColoring c{std::vector<int>(d.order()), k};
        for (auto& x : c.color)
            x = pick(rng);
        if (!check_acyclic(d, c))
            return c;
    }
}

} // namespace

TEST_CASE("dichromatic number conventions")
{
    CHECK(dichromatic_number(Digraph{}).k == 0);
    CHECK(dichromatic_number(Digraph::build(1, {})).k == 1);
    CHECK(dichromatic_number(directed_path(5)).k == 1);
    CHECK(dichromatic_number(tournament4(Tournament4::Transitive)).k == 1);
    CHECK(dichromatic_number(directed_cycle(5)).k == 2);
    CHECK(dichromatic_number(complete_bidigraph(5)).k == 5);
    CHECK(dichromatic_number(tournament4(Tournament4::Strong)).k == 2);
}

TEST_CASE("dichromatic number agrees with the partition oracle")
{
    for (std::uint64_t s = 0; s < 150; ++s) {
        Digraph d = random_digraph({6, 0.2 + 0.005 * static_cast<double>(s), s});
        auto r = dichromatic_number(d);
        CHECK(r.k == oracle::dichromatic(d));
        CHECK(r.coloring.k == r.k);
        CHECK_FALSE(check_acyclic(d, r.coloring));
        CHECK(oracle::coloring_acyclic(d, r.coloring.color));
        CHECK(dichromatic_at_least(d, r.k));
        CHECK_FALSE(dichromatic_at_least(d, r.k + 1));
        CHECK(acyclic_coloring(d, r.k));
        if (r.k > 1)
            CHECK_FALSE(acyclic_coloring(d, r.k - 1));
    }
}

TEST_CASE("check_acyclic reports a monochromatic cycle")
{
    Digraph d = directed_cycle(3);
    AcyclicColoring c{{1, 1, 1}, 1};
    auto w = check_acyclic(d, c);
    REQUIRE(w);
    CHECK(w->size() == 3);
    for (std::size_t i = 0; i < w->size(); ++i)
        CHECK(d.has_arc((*w)[i], (*w)[(i + 1) % w->size()]));
    CHECK_FALSE(check_acyclic(d, AcyclicColoring{{1, 1, 2}, 2}));
    CHECK_THROWS_AS(check_acyclic(d, AcyclicColoring{{1, 0, 2}, 2}), std::invalid_argument);
    CHECK_THROWS_AS(check_acyclic(d, AcyclicColoring{{1, 3, 2}, 2}), std::invalid_argument);
    CHECK(find_dicycle(d));
    CHECK(is_acyclic(directed_path(4)));
}

TEST_CASE("shortest cycle through a vertex")
{
    Digraph d = Digraph::build(5, {{0, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 0}, {1, 4}});
    std::vector<bool> all(5, true);
    CHECK(shortest_cycle_through(d, 0, all) == std::vector<Vertex>{0, 1});
    std::vector<bool> no1 = all;
    no1[1] = false;
    CHECK(shortest_cycle_through(d, 0, no1) == std::vector<Vertex>{0, 2, 3});
    no1[3] = false;
    CHECK(shortest_cycle_through(d, 0, no1).empty());
}

TEST_CASE("dicritical subdigraphs satisfy the degree and connectivity bounds")
{
    int checked = 0;
    for (std::uint64_t s = 0; checked < 60; ++s) {
        Digraph d = random_digraph({8, 0.45, s});
        const int k = dichromatic_number(d).k;
        if (k < 2)
            continue;
        ++checked;
        SubDigraph core = dicritical_subdigraph(d, k);
        const Digraph& h = core.graph;
        CHECK(dichromatic_number(h).k == k);
        CHECK(h.min_out_degree() >= k - 1);
        CHECK(h.min_in_degree() >= k - 1);
        CHECK(is_strongly_connected(h));
        for (const auto& a : h.arcs()) {
            std::vector<Arc> one{a};
            CHECK_FALSE(dichromatic_at_least(delete_arcs(h, one), k));
        }
        for (const auto& a : h.arcs())
            CHECK(d.has_arc(core.to_parent[a.tail], core.to_parent[a.head]));
    }
    CHECK_THROWS_AS(dicritical_subdigraph(directed_cycle(4), 3), std::invalid_argument);
}

TEST_CASE("kempe switch keeps colorings acyclic")
{
    std::mt19937_64 rng(3);
    for (std::uint64_t s = 0; s < 1000; ++s) {
        Digraph d = random_digraph({8, 0.3, s});
        AcyclicColoring c = random_acyclic(d, 3, rng);
        int i = 1 + static_cast<int>(rng() % 3);
        int j = 1 + static_cast<int>(rng() % 2);
        if (j >= i)
            ++j;
        std::vector<Vertex> members;
        for (Vertex v = 0; v < d.order(); ++v)
            if (c.color[v] == i || c.color[v] == j)
                members.push_back(v);
        if (members.empty())
            continue;
        Vertex x = members[rng() % members.size()];
        auto comp = bicolored_component(d, c, i, j, x);
        AcyclicColoring out = kempe_switch(d, c, i, j, comp);
        CHECK_FALSE(check_acyclic(d, out));
        for (Vertex v = 0; v < d.order(); ++v) {
            bool in = std::find(comp.begin(), comp.end(), v) != comp.end();
            int expect = !in ? c.color[v] : (c.color[v] == i ? j : i);
            CHECK(out.color[v] == expect);
        }
    }
}

TEST_CASE("kempe switch rejects non-components")
{
    Digraph d = Digraph::build(3, {{0, 1}, {1, 0}});
    AcyclicColoring c{{1, 2, 1}, 2};
    std::vector<Vertex> part{0};
    CHECK_THROWS_AS(kempe_switch(d, c, 1, 2, part), std::invalid_argument);
    std::vector<Vertex> whole{0, 1};
    AcyclicColoring swapped = kempe_switch(d, c, 1, 2, whole);
    CHECK(swapped.color == std::vector<int>{2, 1, 1});
    CHECK_THROWS_AS(kempe_switch(d, c, 1, 1, whole), std::invalid_argument);
    std::vector<Vertex> single{0};
    Digraph arcless = Digraph::build(2, {});
    CHECK(kempe_switch(arcless, AcyclicColoring{{1, 2}, 2}, 1, 2, single).color == std::vector<int>{2, 2});
}

TEST_CASE("minimize_preorder reaches switch-minimality without increasing v(c)")
{
    std::mt19937_64 rng(5);
    int done = 0;
    for (std::uint64_t s = 0; done < 300; ++s) {
        Digraph d = random_digraph({8, 0.4, s});
        Vertex x0 = static_cast<Vertex>(rng() % 8);
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < 8; ++v)
            if (v != x0)
                rest.push_back(v);
        SubDigraph y1 = induced(d, rest);
        AcyclicColoring sub = random_acyclic(y1.graph, 3, rng);
        AcyclicColoring c{std::vector<int>(8, 0), 3};
        for (std::size_t i = 0; i < rest.size(); ++i)
            c.color[rest[i]] = sub.color[i];
        AcyclicColoring out = minimize_preorder(d, c, x0);
        CHECK(is_switch_minimal(d, out, x0));
        CHECK(out.color[x0] == 0);
        CHECK(color_vector(d, out, x0) <= color_vector(d, c, x0));
        AcyclicColoring restricted{std::vector<int>(rest.size()), 3};
        for (std::size_t i = 0; i < rest.size(); ++i)
            restricted.color[i] = out.color[rest[i]];
        CHECK_FALSE(check_acyclic(y1.graph, restricted));
        ++done;
    }
}

TEST_CASE("coloring text format")
{
    AcyclicColoring c{{1, 2, 1}, 2};
    std::string text = format_coloring(c);
    CHECK(text == "0 1\n1 2\n2 1\n");
    CHECK(parse_coloring(text, 3) == c);
    CHECK_THROWS_AS(parse_coloring("0 1\n1 x\n", 3), ParseError);
}
