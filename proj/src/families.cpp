#include "mader/families.hpp"

#include "mader/canonical.hpp"
#include "mader/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>

namespace mader {

Digraph complete_bidigraph(int n)
{
    if (n < 0)
        throw PreconditionError("complete_bidigraph: n must be nonnegative");
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v)
                arcs.push_back({u, v});
    return Digraph::build(n, arcs);
}

Digraph directed_cycle(int l)
{
    if (l < 2)
        throw PreconditionError("directed_cycle: length must be at least 2");
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < l; ++i)
        arcs.push_back({i, (i + 1) % l});
    return Digraph::build(l, arcs);
}

Digraph directed_path(int l)
{
    if (l < 1)
        throw PreconditionError("directed_path: needs at least one vertex");
    std::vector<Arc> arcs;
    for (Vertex i = 0; i + 1 < l; ++i)
        arcs.push_back({i, i + 1});
    return Digraph::build(l, arcs);
}

Digraph oriented_cycle(int l, std::uint64_t bits)
{
    if (l < 2)
        throw PreconditionError("oriented_cycle: length must be at least 2");
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < l; ++i) {
        Vertex j = (i + 1) % l;
        arcs.push_back(((bits >> i) & 1U) ? Arc{i, j} : Arc{j, i});
    }
    return Digraph::build(l, arcs);
}

Digraph bioriented_path(int t)
{
    if (t < 1)
        throw PreconditionError("bioriented_path: needs at least one vertex");
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < t; ++i)
        edges.push_back({i, i + 1});
    return biorient(t, edges);
}

Digraph tournament4(Tournament4 which)
{
    switch (which) {
    case Tournament4::Transitive:
        return Digraph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    case Tournament4::Strong:
        return Digraph::build(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 0}});
    case Tournament4::SourceTriangle:
        return Digraph::build(4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}});
    case Tournament4::SinkTriangle:
        return reverse(tournament4(Tournament4::SourceTriangle));
    }
    throw PreconditionError("unknown tournament");
}

std::string_view tournament_name(Tournament4 which)
{
    switch (which) {
    case Tournament4::Transitive:
        return "K4";
    case Tournament4::Strong:
        return "K4s";
    case Tournament4::SourceTriangle:
        return "W4+";
    case Tournament4::SinkTriangle:
        return "W4-";
    }
    return "?";
}

std::optional<Tournament4> parse_tournament(std::string_view name)
{
    for (auto t : kAllTournaments4)
        if (tournament_name(t) == name)
            return t;
    if (name == "W4plus")
        return Tournament4::SourceTriangle;
    if (name == "W4minus")
        return Tournament4::SinkTriangle;
    return std::nullopt;
}

Digraph clique_minus_bicycle(int k)
{
    if (k < 3)
        throw PreconditionError("clique_minus_bicycle: k must be at least 3");
    std::vector<Arc> arcs;
    auto on_cycle = [](Vertex u, Vertex v) {
        if (u > 4 || v > 4)
            return false;
        int diff = (u - v + 5) % 5;
        return diff == 1 || diff == 4;
    };
    for (Vertex u = 0; u < k + 2; ++u)
        for (Vertex v = 0; v < k + 2; ++v)
            if (u != v && !on_cycle(u, v))
                arcs.push_back({u, v});
    return Digraph::build(k + 2, arcs);
}

Digraph k3_minus_e()
{
    return Digraph::build(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}});
}

FkConstruction f_k(int k)
{
    if (k < 3)
        throw PreconditionError("f_k: k must be at least 3");
    FkConstruction out{k3_minus_e(), {}};
    for (Vertex t = 3; t < k; ++t) {
        EarSpec ear{t - 1, {t}, {}, Closing::AnchorToEnd};
        out.graph = ear_add(out.graph, ear);
        out.ears.push_back(std::move(ear));
    }
    return out;
}

namespace {

double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Digraph random_digraph(const RandomSpec& spec)
{
    if (spec.n < 0 || !(spec.p >= 0.0 && spec.p <= 1.0))
        throw PreconditionError("random_digraph: need n >= 0 and 0 <= p <= 1");
    std::mt19937_64 rng(spec.seed);
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < spec.n; ++i)
        for (Vertex j = 0; j < spec.n; ++j) {
            if (i == j)
                continue;
            if (unit(rng) < spec.p)
                arcs.push_back({i, j});
        }
    return Digraph::build(spec.n, arcs);
}

std::vector<Edge> random_graph(int n, double p, std::uint64_t seed)
{
    if (n < 0 || !(p >= 0.0 && p <= 1.0))
        throw PreconditionError("random_graph: need n >= 0 and 0 <= p <= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (unit(rng) < p)
                edges.push_back({i, j});
    return edges;
}

Digraph random_tournament(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            arcs.push_back(unit(rng) < 0.5 ? Arc{i, j} : Arc{j, i});
    return Digraph::build(n, arcs);
}

std::uint64_t labeled_count(int n)
{
    if (n < 0 || n > kMaxEnumerationOrder)
        throw PreconditionError("enumeration supports 0 <= n <= " + std::to_string(kMaxEnumerationOrder));
    return std::uint64_t{1} << (n * (n - 1));
}

Digraph digraph_from_index(int n, std::uint64_t index)
{
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) {
            if (index & 1U)
                arcs.push_back({i, j});
            if (index & 2U)
                arcs.push_back({j, i});
            index >>= 2;
        }
    return Digraph::build(n, arcs);
}

namespace {

// Adjacency code under the placement at[], computed from out-masks.
std::uint64_t code_of(int n, const std::array<std::uint8_t, 8>& out, const std::array<int, 8>& at)
{
    std::uint64_t code = 0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            code = (code << 1) | ((out[at[p]] >> at[q]) & 1U);
            code = (code << 1) | ((out[at[q]] >> at[p]) & 1U);
        }
    return code;
}

struct PermTable {
    std::vector<std::array<int, 8>> perms;
    explicit PermTable(int n)
    {
        std::array<int, 8> at{};
        std::iota(at.begin(), at.begin() + n, 0);
        do
            perms.push_back(at);
        while (std::next_permutation(at.begin(), at.begin() + n));
    }
};

} // namespace

void for_each_digraph(int n, bool up_to_iso, const std::function<void(const Digraph&)>& visit, std::uint64_t start,
                      std::optional<std::uint64_t> end)
{
    const std::uint64_t total = labeled_count(n);
    const std::uint64_t stop = std::min(total, end.value_or(total));
    PermTable table(up_to_iso ? n : 0);
    for (std::uint64_t idx = start; idx < stop; ++idx) {
        if (up_to_iso) {
            std::array<std::uint8_t, 8> out{};
            std::uint64_t rest = idx;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (rest & 1U)
                        out[i] |= static_cast<std::uint8_t>(1U << j);
                    if (rest & 2U)
                        out[j] |= static_cast<std::uint8_t>(1U << i);
                    rest >>= 2;
                }
            const std::uint64_t own = code_of(n, out, table.perms.front());
            bool keep = true;
            for (std::size_t pi = 1; pi < table.perms.size() && keep; ++pi)
                keep = code_of(n, out, table.perms[pi]) <= own;
            if (!keep)
                continue;
        }
        visit(digraph_from_index(n, idx));
    }
}

std::vector<Digraph> enumerate_digraphs(int n, bool up_to_iso)
{
    std::vector<Digraph> out;
    for_each_digraph(n, up_to_iso, [&](const Digraph& d) { out.push_back(d); });
    return out;
}

std::vector<std::vector<Edge>> trees_up_to_iso(int t)
{
    if (t < 1 || t > kMaxCanonicalOrder)
        throw PreconditionError("trees_up_to_iso: 1 <= t <= " + std::to_string(kMaxCanonicalOrder));
    if (t == 1)
        return {{}};
    if (t == 2)
        return {{{0, 1}}};
    std::set<std::uint64_t> seen;
    std::vector<std::vector<Edge>> out;
    std::vector<int> seq(t - 2, 0);
    while (true) {
        // Decode the Pruefer sequence.
        std::vector<int> degree(t, 1);
        for (int x : seq)
            ++degree[x];
        std::vector<Edge> edges;
        for (int x : seq)
            for (int leaf = 0; leaf < t; ++leaf)
                if (degree[leaf] == 1) {
                    edges.push_back({std::min(leaf, x), std::max(leaf, x)});
                    --degree[leaf];
                    --degree[x];
                    break;
                }
        std::vector<int> last;
        for (int v = 0; v < t; ++v)
            if (degree[v] == 1)
                last.push_back(v);
        edges.push_back({last[0], last[1]});
        std::sort(edges.begin(), edges.end());
        if (seen.insert(canonical_code(biorient(t, edges))).second)
            out.push_back(edges);
        int pos = 0;
        while (pos < t - 2 && ++seq[pos] == t)
            seq[pos++] = 0;
        if (pos == t - 2)
            break;
    }
    return out;
}

std::vector<std::uint64_t> cycle_orientations_up_to_iso(int l)
{
    if (l < 2 || l > kMaxCanonicalOrder)
        throw PreconditionError("cycle_orientations_up_to_iso: 2 <= l <= " + std::to_string(kMaxCanonicalOrder));
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << l); ++bits)
        if (seen.insert(canonical_code(oriented_cycle(l, bits))).second)
            out.push_back(bits);
    return out;
}

} // namespace mader
