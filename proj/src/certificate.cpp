#include "mader/certificate.hpp"

#include "mader/menger.hpp"

#include <algorithm>

namespace mader {

using nlohmann::json;

json digraph_to_json(const Digraph& d)
{
    json arcs = json::array();
    for (const auto& a : d.arcs())
        arcs.push_back({a.tail, a.head});
    return {{"n", d.order()}, {"arcs", arcs}};
}

Digraph digraph_from_json(const json& j)
{
    int n = j.at("n").get<int>();
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs"))
        arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    return Digraph::build(n, arcs);
}

json embedding_certificate(const SubdivisionEmbedding& e)
{
    json paths = json::array();
    for (const auto& [arc, path] : e.paths)
        paths.push_back({{"arc", {arc.tail, arc.head}}, {"path", path}});
    return {{"kind", "embedding"},
            {"pattern", digraph_to_json(e.pattern)},
            {"host", digraph_to_json(e.host)},
            {"host_hash", digraph_hash(e.host)},
            {"branch", e.branch},
            {"paths", paths}};
}

SubdivisionEmbedding embedding_from_json(const json& j)
{
    SubdivisionEmbedding e{digraph_from_json(j.at("pattern")), digraph_from_json(j.at("host")),
                           j.at("branch").get<std::vector<Vertex>>(), {}};
    for (const auto& p : j.at("paths")) {
        Arc a{p.at("arc").at(0).get<int>(), p.at("arc").at(1).get<int>()};
        e.paths[a] = p.at("path").get<std::vector<Vertex>>();
    }
    return e;
}

json coloring_certificate(const Digraph& d, const AcyclicColoring& c)
{
    return {{"kind", "coloring"},
            {"digraph", digraph_to_json(d)},
            {"host_hash", digraph_hash(d)},
            {"k", c.k},
            {"colors", c.color}};
}

json separator_certificate(const Digraph& d, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                           const std::vector<Vertex>& cut)
{
    return {{"kind", "separator"}, {"digraph", digraph_to_json(d)}, {"host_hash", digraph_hash(d)},
            {"A", a},          {"B", b},                       {"cut", cut}};
}

json counterexample_certificate(const std::string& conjecture, const Digraph& d, int chi_at_least,
                                const std::vector<Digraph>& absent_patterns)
{
    json patterns = json::array();
    for (const auto& p : absent_patterns)
        patterns.push_back(digraph_to_json(p));
    return {{"kind", "counterexample"},
            {"conjecture", conjecture},
            {"digraph", digraph_to_json(d)},
            {"host_hash", digraph_hash(d)},
            {"chi_at_least", chi_at_least},
            {"absent_patterns", patterns}};
}

namespace {

VerifyOutcome fail(std::string msg)
{
    return {false, std::move(msg)};
}

std::string cycle_text(const std::vector<Vertex>& cyc)
{
    std::string s;
    for (Vertex v : cyc)
        s += std::to_string(v) + " -> ";
    return s + std::to_string(cyc.front());
}

VerifyOutcome verify_parsed(const json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "embedding") {
        auto e = embedding_from_json(j);
        if (j.contains("host_hash") && j.at("host_hash").get<std::string>() != digraph_hash(e.host))
            return fail("host hash mismatch");
        if (auto v = verify_embedding(e))
            return fail("embedding violation: " + *v);
        return {true, "embedding ok"};
    }
    Digraph d = digraph_from_json(j.at("digraph"));
    if (j.contains("host_hash") && j.at("host_hash").get<std::string>() != digraph_hash(d))
        return fail("host hash mismatch");
    if (kind == "coloring") {
        AcyclicColoring c{j.at("colors").get<std::vector<int>>(), j.at("k").get<int>()};
        std::optional<std::vector<Vertex>> cyc;
        try {
            cyc = check_acyclic(d, c);
        } catch (const std::invalid_argument& ex) {
            return fail(std::string("coloring rejected: ") + ex.what());
        }
        if (cyc)
            return fail("monochromatic dicycle: " + cycle_text(*cyc));
        return {true, "coloring ok"};
    }
    if (kind == "separator") {
        auto a = j.at("A").get<std::vector<Vertex>>();
        auto b = j.at("B").get<std::vector<Vertex>>();
        auto cut = j.at("cut").get<std::vector<Vertex>>();
        try {
            if (!separates(d, a, b, cut))
                return fail("an A-B dipath survives the cut");
        } catch (const std::invalid_argument& ex) {
            return fail(std::string("separator rejected: ") + ex.what());
        }
        return {true, "separator ok"};
    }
    if (kind == "counterexample") {
        int chi = j.at("chi_at_least").get<int>();
        if (!dichromatic_at_least(d, chi))
            return fail("dichromatic number is below the claimed " + std::to_string(chi));
        for (const auto& pj : j.at("absent_patterns")) {
            Digraph p = digraph_from_json(pj);
            if (auto e = find_subdivision(d, p))
                return fail("claimed-absent pattern has a subdivision (pattern with " + std::to_string(p.order()) +
                            " vertices)");
        }
        return {true, "counterexample confirmed"};
    }
    return fail("unknown certificate kind '" + kind + "'");
}

} // namespace

VerifyOutcome verify_certificate(const json& j)
{
    try {
        return verify_parsed(j);
    } catch (const json::exception& ex) {
        return fail(std::string("malformed certificate: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        return fail(std::string("malformed certificate: ") + ex.what());
    }
}

VerifyOutcome verify_certificate(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        auto upto = text.substr(0, std::min<std::size_t>(ex.byte == 0 ? 0 : ex.byte - 1, text.size()));
        int line = 1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n'));
        throw ParseError(line, ex.what());
    }
    return verify_certificate(j);
}

} // namespace mader
