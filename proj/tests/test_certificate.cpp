#include "mader/certificate.hpp"
#include "mader/families.hpp"
#include "mader/menger.hpp"

#include <doctest.h>

using namespace mader;
using nlohmann::json;

TEST_CASE("embedding certificates round trip")
{
    auto e = find_subdivision(complete_bidigraph(5), tournament4(Tournament4::Strong));
    REQUIRE(e);
    json j = embedding_certificate(*e);
    CHECK(j["kind"] == "embedding");
    CHECK(embedding_from_json(j) == *e);
    CHECK(verify_certificate(j).ok);
    CHECK(verify_certificate(std::string_view(j.dump())).ok);
}

TEST_CASE("a perturbed path vertex is caught")
{
    auto e = find_subdivision(directed_cycle(6), directed_cycle(3));
    REQUIRE(e);
    json j = embedding_certificate(*e);
    auto& paths = j["paths"];
    bool changed = false;
    for (auto& p : paths) {
        auto& seq = p["path"];
        if (seq.size() > 2) {
            seq[1] = (seq[1].get<int>() + 3) % 6;
            changed = true;
            break;
        }
    }
    REQUIRE(changed);
    auto v = verify_certificate(j);
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.message.empty());
}

TEST_CASE("host hash mismatch is a violation")
{
    auto e = find_subdivision(directed_cycle(4), directed_cycle(2 + 1));
    REQUIRE(e);
    json j = embedding_certificate(*e);
    j["host_hash"] = "0000000000000000";
    CHECK_FALSE(verify_certificate(j).ok);
}

TEST_CASE("coloring certificates")
{
    Digraph d = directed_cycle(4);
    CHECK(verify_certificate(coloring_certificate(d, AcyclicColoring{{1, 1, 1, 2}, 2})).ok);
    auto bad = verify_certificate(coloring_certificate(d, AcyclicColoring{{1, 1, 1, 1}, 1}));
    CHECK_FALSE(bad.ok);
    CHECK(bad.message.find("0 -> 1 -> 2 -> 3 -> 0") != std::string::npos);
}

TEST_CASE("separator certificates")
{
    Digraph d = Digraph::build(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
    CHECK(verify_certificate(separator_certificate(d, {0}, {3}, {1, 2})).ok);
    CHECK_FALSE(verify_certificate(separator_certificate(d, {0}, {3}, {1})).ok);
}

TEST_CASE("counterexample certificates are re-checked")
{
    // Honest claim: clique_minus_bicycle(3) has chi >= 3 and no K<->3.
    auto ok = counterexample_certificate("demo", clique_minus_bicycle(3), 3, {complete_bidigraph(3)});
    CHECK(verify_certificate(ok).ok);
    // Dishonest: chi >= 4 is false.
    CHECK_FALSE(verify_certificate(counterexample_certificate("demo", clique_minus_bicycle(3), 4,
                                                              {complete_bidigraph(3)}))
                    .ok);
    // Dishonest: K<->5 contains K<->3.
    CHECK_FALSE(
        verify_certificate(counterexample_certificate("demo", complete_bidigraph(5), 3, {complete_bidigraph(3)})).ok);
}

TEST_CASE("parse errors carry the line number")
{
    try {
        verify_certificate(std::string_view("{\n\"kind\": \"embedding\",\n  oops\n}"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_FALSE(verify_certificate(std::string_view("{\"kind\": \"nothing\"}")).ok);
}
