#include "mader/coloring.hpp"
#include "mader/extractors.hpp"
#include "mader/families.hpp"

#include <doctest.h>

#include <random>

using namespace mader;

TEST_CASE("tournaments inside K<->4")
{
    for (auto t : kAllTournaments4) {
        auto r = extract_tournament4(complete_bidigraph(4), t);
        CHECK_FALSE(verify_embedding(r.embedding));
        CHECK(r.embedding.pattern == tournament4(t));
        CHECK_FALSE(r.trace.empty());
    }
}

TEST_CASE("tournaments in random hosts with dichromatic number four")
{
    std::mt19937_64 rng(31);
    int hosts = 0;
    int proof_routes = 0;
    while (hosts < 25) {
        Digraph d = random_digraph({9, 0.5 + 0.01 * static_cast<double>(rng() % 40), rng()});
        if (!dichromatic_at_least(d, 4))
            continue;
        ++hosts;
        for (auto t : kAllTournaments4) {
            auto r = extract_tournament4(d, t);
            CHECK_FALSE(verify_embedding(r.embedding));
            CHECK(r.embedding.host == d);
            CHECK(r.embedding.pattern == tournament4(t));
            CHECK((r.route == "proof" || r.route == "oracle"));
            if (t == Tournament4::Strong)
                CHECK(r.route == "proof");
            proof_routes += r.route == "proof";
        }
    }
    MESSAGE("proof routes: " << proof_routes << " of " << 4 * hosts);
}

TEST_CASE("clique minus bicycle hosts all four tournaments")
{
    Digraph d = clique_minus_bicycle(4);
    for (auto t : kAllTournaments4)
        CHECK_FALSE(verify_embedding(extract_tournament4(d, t).embedding));
}

TEST_CASE("dichromatic precondition")
{
    CHECK_THROWS_AS(extract_tournament4(clique_minus_bicycle(3), Tournament4::Strong), std::invalid_argument);
}
