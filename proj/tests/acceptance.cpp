// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every random stream is seeded, so reruns are identical.

#include "mader/bounds.hpp"
#include "mader/campaign.hpp"
#include "mader/coloring.hpp"
#include "mader/extractors.hpp"
#include "mader/families.hpp"
#include "mader/menger.hpp"
#include "mader/octus.hpp"
#include "mader/subdivision.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

using namespace mader;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;
};

// Collects the first few failure messages of a criterion.
class Tally {
public:
    void fail(const std::string& what)
    {
        if (failures_++ < 5)
            first_ << (first_.tellp() > 0 ? "; " : "") << what;
    }
    void expect(bool cond, const std::string& what)
    {
        if (!cond)
            fail(what);
    }
    Outcome done(const std::string& summary) const
    {
        if (failures_ == 0)
            return {true, summary};
        return {false, summary + ", " + std::to_string(failures_) + " failures: " + first_.str()};
    }

private:
    long failures_ = 0;
    std::ostringstream first_;
};

std::string hex(std::uint64_t x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(x));
    return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random digraph on at most 10 vertices with dichromatic number >= chi.
Digraph host_with_chi(int chi, std::mt19937_64& rng)
{
    for (;;) {
        int n = pick(rng, std::max(chi + 2, 5), 10);
        double p = uniform(rng, 0.45, 0.9);
        Digraph d = random_digraph({n, p, rng()});
        if (dichromatic_at_least(d, chi))
            return d;
    }
}

std::string embedding_problem(const SubdivisionEmbedding& e, const Digraph& host, const Digraph& pattern)
{
    if (auto err = verify_embedding(e))
        return *err;
    if (!(e.host == host))
        return "embedding is in another host";
    if (!(e.pattern == pattern))
        return "embedding has another pattern";
    return {};
}

// Random acyclic k-coloring built greedily in a random vertex order, each
// vertex taking a random color that keeps its class acyclic.
std::optional<AcyclicColoring> random_acyclic(const Digraph& d, int k, std::mt19937_64& rng)
{
    std::vector<Vertex> order(d.order());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<Vertex>> classes(k);
    AcyclicColoring c{std::vector<int>(d.order(), 0), k};
    for (Vertex v : order) {
        std::vector<int> colors(k);
        std::iota(colors.begin(), colors.end(), 0);
        std::shuffle(colors.begin(), colors.end(), rng);
        bool placed = false;
        for (int col : colors) {
            classes[col].push_back(v);
            if (oracle::acyclic_on(d, classes[col])) {
                c.color[v] = col + 1;
                placed = true;
                break;
            }
            classes[col].pop_back();
        }
        if (!placed)
            return std::nullopt;
    }
    return c;
}

bool dicritical(const Digraph& d, int k)
{
    if (dichromatic_number(d).k != k)
        return false;
    for (Vertex v = 0; v < d.order(); ++v)
        if (d.out_degree(v) + d.in_degree(v) == 0)
            return false;
    for (const auto& a : d.arcs()) {
        std::vector<Arc> one{a};
        if (dichromatic_at_least(delete_arcs(d, one), k))
            return false;
    }
    return true;
}

// ------------------------------------------------------------------ 1

Outcome solver_equivalence()
{
    Tally t;
    int count = 0;
    for (std::uint64_t i = 0; i < labeled_count(4); ++i) {
        Digraph d = digraph_from_index(4, i);
        t.expect(dichromatic_number(d).k == oracle::dichromatic(d), "n=4 index " + std::to_string(i));
        ++count;
    }
    std::mt19937_64 rng(101);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t seed = rng();
        Digraph d = random_digraph({6, uniform(rng, 0.1, 0.9), seed});
        auto r = dichromatic_number(d);
        t.expect(r.k == oracle::dichromatic(d), "n=6 seed " + hex(seed));
        t.expect(!check_acyclic(d, r.coloring) && r.coloring.k == r.k, "bad coloring, seed " + hex(seed));
        ++count;
    }
    return t.done(std::to_string(count) + " digraphs");
}

// ------------------------------------------------------------------ 2

Outcome clique_minus_bicycle_witness()
{
    Tally t;
    for (int k : {3, 4}) {
        Digraph d = clique_minus_bicycle(k);
        t.expect(dichromatic_number(d).k == k, "chi of k=" + std::to_string(k));
        t.expect(oracle::dichromatic(d) == k, "oracle chi of k=" + std::to_string(k));
        auto r = find_subdivision(d, complete_bidigraph(k), SearchOptions{});
        t.expect(r.status == SearchStatus::None, "subdivision search for k=" + std::to_string(k));
    }
    return t.done("k = 3, 4");
}

// ------------------------------------------------------------------ 3

Outcome tournaments()
{
    Tally t;
    std::mt19937_64 rng(303);
    int oracle_routes = 0;
    for (int i = 0; i < 500; ++i) {
        Digraph d = host_with_chi(4, rng);
        for (auto which : kAllTournaments4) {
            try {
                auto r = extract_tournament4(d, which);
                auto err = embedding_problem(r.embedding, d, tournament4(which));
                t.expect(err.empty(), std::string(tournament_name(which)) + " host " + std::to_string(i) + ": " + err);
                oracle_routes += r.route == "oracle";
            } catch (const std::exception& ex) {
                t.fail(std::string(tournament_name(which)) + " host " + std::to_string(i) + ": " + ex.what());
            }
        }
    }
    return t.done("500 hosts x 4 tournaments, " + std::to_string(oracle_routes) + " oracle routes");
}

// ------------------------------------------------------------------ 4

Outcome oriented_cycles()
{
    Tally t;
    std::mt19937_64 rng(404);
    int embeddings = 0;
    for (int l = 3; l <= 5; ++l) {
        auto classes = cycle_orientations_up_to_iso(l);
        for (int i = 0; i < 200; ++i) {
            Digraph d = host_with_chi(l, rng);
            for (auto bits : classes) {
                Digraph c = oriented_cycle(l, bits);
                try {
                    auto err = embedding_problem(extract_octus(d, c), d, c);
                    t.expect(err.empty(), "l=" + std::to_string(l) + " bits=" + hex(bits) + ": " + err);
                } catch (const std::exception& ex) {
                    t.fail("l=" + std::to_string(l) + " bits=" + hex(bits) + ": " + ex.what());
                }
                ++embeddings;
            }
        }
    }
    return t.done(std::to_string(embeddings) + " embeddings");
}

// ------------------------------------------------------------------ 5

Outcome bioriented_trees()
{
    Tally t;
    std::mt19937_64 rng(505);
    int embeddings = 0;
    for (int size = 1; size <= 5; ++size) {
        std::vector<Digraph> trees;
        for (const auto& edges : trees_up_to_iso(size))
            trees.push_back(biorient(size, edges));
        for (int i = 0; i < 200; ++i) {
            Digraph d = host_with_chi(size, rng);
            for (const auto& tree : trees) {
                try {
                    auto err = embedding_problem(extract_octus(d, tree), d, tree);
                    t.expect(err.empty(), "t=" + std::to_string(size) + ": " + err);
                } catch (const std::exception& ex) {
                    t.fail("t=" + std::to_string(size) + ": " + ex.what());
                }
                ++embeddings;
            }
        }
    }
    return t.done(std::to_string(embeddings) + " embeddings");
}

// ------------------------------------------------------------------ 6

Outcome three_dicritical()
{
    Tally t;
    int critical = 0;
    for (int n = 1; n <= kMaxEnumerationOrder; ++n)
        for (const auto& d : enumerate_digraphs(n, true)) {
            if (!dicritical(d, 3))
                continue;
            ++critical;
            try {
                auto err = embedding_problem(extract_k3_minus_e(d), d, k3_minus_e());
                t.expect(err.empty(), "n=" + std::to_string(n) + ": " + err);
            } catch (const std::exception& ex) {
                t.fail("n=" + std::to_string(n) + ": " + ex.what());
            }
        }
    t.expect(critical > 0, "no 3-dicritical digraphs enumerated");
    return t.done(std::to_string(critical) + " 3-dicritical digraphs");
}

// ------------------------------------------------------------------ 7

constexpr int kTrials = 10000;

Outcome kempe_suite()
{
    Tally t;
    std::mt19937_64 rng(701);
    int trials = 0;
    while (trials < kTrials) {
        Digraph d = random_digraph({pick(rng, 4, 9), uniform(rng, 0.15, 0.5), rng()});
        const int k = pick(rng, 2, 4);
        auto colored = random_acyclic(d, k, rng);
        if (!colored)
            continue;
        const AcyclicColoring& c = *colored;
        int i = pick(rng, 1, k);
        int j = pick(rng, 1, k - 1);
        if (j >= i)
            ++j;
        std::vector<Vertex> members;
        for (Vertex v = 0; v < d.order(); ++v)
            if (c.color[v] == i || c.color[v] == j)
                members.push_back(v);
        if (members.empty())
            continue;
        auto comp = bicolored_component(d, c, i, j, members[rng() % members.size()]);
        AcyclicColoring out = kempe_switch(d, c, i, j, comp);
        std::vector<int> colors(out.color.begin(), out.color.end());
        t.expect(oracle::coloring_acyclic(d, colors), "switch created a monochromatic cycle");
        ++trials;
    }
    return t.done(std::to_string(trials) + " switches");
}

Outcome dicritical_suite()
{
    Tally t;
    std::mt19937_64 rng(702);
    int trials = 0;
    while (trials < kTrials) {
        Digraph d = random_digraph({pick(rng, 3, 7), uniform(rng, 0.25, 0.8), rng()});
        const int k = dichromatic_number(d).k;
        if (k < 2)
            continue;
        const Digraph h = dicritical_subdigraph(d, k).graph;
        t.expect(oracle::dichromatic(h) == k, "core changed the dichromatic number");
        t.expect(h.min_out_degree() >= k - 1 && h.min_in_degree() >= k - 1, "degree below k-1");
        t.expect(oracle::strongly_connected_without(h, 0), "core not strongly connected");
        ++trials;
    }
    return t.done(std::to_string(trials) + " cores");
}

Outcome menger_suite()
{
    Tally t;
    std::mt19937_64 rng(703);
    int trials = 0;
    auto one = [&](const Digraph& d) {
        const int n = d.order();
        std::vector<Vertex> a, b;
        while (a.empty() || b.empty()) {
            a.clear();
            b.clear();
            for (Vertex v = 0; v < n; ++v) {
                if (rng() % 3 == 0)
                    a.push_back(v);
                if (rng() % 3 == 0)
                    b.push_back(v);
            }
        }
        auto r = disjoint_paths(d, a, b);
        const int expect = oracle::min_separator(d, a, b);
        t.expect(static_cast<int>(r.system.paths.size()) == expect, "path count differs from separator");
        t.expect(static_cast<int>(r.separator.cut.size()) == expect, "cut size differs from separator");
        t.expect(!oracle::has_path_avoiding(d, a, b, [&] {
            std::uint32_t m = 0;
            for (Vertex v : r.separator.cut)
                m |= 1U << v;
            return m;
        }()),
                 "cut does not separate");
        std::set<Vertex> used;
        for (const auto& p : r.system.paths) {
            t.expect(is_dipath(d, p), "path is not a dipath");
            for (Vertex v : p)
                t.expect(used.insert(v).second, "paths share a vertex");
        }
        ++trials;
    };
    for (int n = 1; n <= 4; ++n)
        for (std::uint64_t i = 0; i < labeled_count(n); ++i)
            one(digraph_from_index(n, i));
    for (const auto& d : enumerate_digraphs(5, true)) {
        one(d);
        one(d);
    }
    return t.done(std::to_string(trials) + " instances");
}

const Digraph& sink_free_cubic(std::mt19937_64& rng)
{
    static const Digraph k4s = tournament4(Tournament4::Strong);
    static const Digraph w4p = tournament4(Tournament4::SourceTriangle);
    return rng() % 2 ? w4p : k4s;
}

Outcome lift_suite()
{
    Tally t;
    std::mt19937_64 rng(704);
    int lifts[3] = {0, 0, 0};
    auto check = [&](const ReductionStep& step, const SubdivisionEmbedding& e, const Digraph& original) {
        SubdivisionEmbedding up = lift(step, e);
        auto err = embedding_problem(up, original, e.pattern);
        t.expect(err.empty(), "lift: " + err);
    };
    const int per_kind = kTrials / 3 + 1;
    for (long attempt = 0; attempt < 40L * kTrials && std::min({lifts[0], lifts[1], lifts[2]}) < per_kind;
         ++attempt) {
        const int kind = static_cast<int>(attempt % 3);
        if (lifts[kind] >= per_kind)
            continue;
        if (kind == 0) {
            Digraph d = random_digraph({pick(rng, 5, 7), uniform(rng, 0.45, 0.75), rng()});
            if (d.size() == 0)
                continue;
            Arc a = d.arcs()[rng() % d.arcs().size()];
            Reduction r = butterfly_reduce(d, a.tail, a.head);
            auto e = find_subdivision(r.graph, sink_free_cubic(rng));
            if (!e)
                continue;
            check(r.step, *e, d);
        } else if (kind == 1) {
            const int n = pick(rng, 5, 8);
            Digraph d = random_digraph({n, uniform(rng, 0.35, 0.7), rng()});
            if (!is_strongly_connected(d))
                continue;
            Vertex v = static_cast<Vertex>(rng() % n);
            std::vector<Vertex> gone{v};
            SubDigraph minus = delete_vertices(d, gone);
            auto comps = strong_components(minus.graph);
            if (comps.size() < 2)
                continue;
            std::vector<Vertex> x;
            for (Vertex u : comps.back())
                x.push_back(minus.to_parent[u]);
            SinkSplit s = sink_split(d, v, x);
            auto e = find_subdivision(s.d2.graph, sink_free_cubic(rng));
            if (!e)
                continue;
            check(s.d2.step, *e, d);
        } else {
            const int n = pick(rng, 5, 7);
            Digraph d = random_digraph({n, uniform(rng, 0.5, 0.8), rng()});
            std::vector<std::array<Vertex, 3>> triples;
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = 0; v < n; ++v)
                    for (Vertex w = v + 1; w < n; ++w)
                        if (u != v && u != w && d.has_digon(u, v) && d.has_digon(u, w))
                            triples.push_back({u, v, w});
            if (triples.empty())
                continue;
            auto tr = triples[rng() % triples.size()];
            Reduction r = digon_contract(d, tr[0], tr[1], tr[2]);
            auto e = find_subdivision(r.graph, tournament4(kAllTournaments4[rng() % 4]));
            if (!e)
                continue;
            check(r.step, *e, d);
        }
        ++lifts[kind];
    }
    const int total = lifts[0] + lifts[1] + lifts[2];
    t.expect(total >= kTrials, "only " + std::to_string(total) + " lifts");
    return t.done(std::to_string(lifts[0]) + " butterfly, " + std::to_string(lifts[1]) + " sink-split, " +
                  std::to_string(lifts[2]) + " digon lifts");
}

Outcome merge_suite()
{
    Tally t;
    std::mt19937_64 rng(705);
    int trials = 0;
    while (trials < kTrials) {
        const int n = pick(rng, 4, 8);
        Digraph d = random_digraph({n, uniform(rng, 0.25, 0.6), rng()});
        if (!is_strongly_connected(d))
            continue;
        Vertex v = static_cast<Vertex>(rng() % n);
        std::vector<Vertex> gone{v};
        SubDigraph minus = delete_vertices(d, gone);
        auto comps = strong_components(minus.graph);
        if (comps.size() < 2)
            continue;
        std::vector<Vertex> x;
        for (Vertex u : comps.back())
            x.push_back(minus.to_parent[u]);
        SinkSplit s = sink_split(d, v, x);
        auto c1 = dichromatic_number(s.d1.graph).coloring;
        auto c2 = dichromatic_number(s.d2.graph).coloring;
        AcyclicColoring c = merge_sink_split_colorings(s, c1, c2);
        std::vector<int> colors(c.color.begin(), c.color.end());
        t.expect(oracle::coloring_acyclic(d, colors), "merged coloring has a monochromatic cycle");
        t.expect(c.k == std::max(c1.k, c2.k), "merged coloring uses extra colors");
        ++trials;
    }
    return t.done(std::to_string(trials) + " merges");
}

Outcome property_suites()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> suites{
        {"kempe", kempe_suite}, {"dicritical", dicritical_suite}, {"menger", menger_suite},
        {"lifts", lift_suite},  {"merge", merge_suite}};
    Outcome all{true, {}};
    for (auto& [name, fn] : suites) {
        Outcome o = fn();
        all.ok = all.ok && o.ok;
        all.note += (all.note.empty() ? "" : "; ") + name + ": " + o.note;
    }
    return all;
}

// ------------------------------------------------------------------ 8

Outcome ledger_numbers()
{
    Tally t;
    auto k3 = derive_bound(complete_bidigraph(3));
    t.expect(k3.lower == 4, "lower bound of K<->3");
    t.expect(k3.upper && *k3.upper == 9, "upper bound of K<->3");
    // 4^(n^2 - 3n + 1) (n - 1) + 1 at n = 3
    BigInt formula = 1;
    for (int i = 0; i < 3 * 3 - 3 * 3 + 1; ++i)
        formula *= 4;
    formula = formula * 2 + 1;
    t.expect(formula == 9 && complete_bidigraph_upper(3) == formula, "closed form at n = 3");
    for (int k = 3; k <= 10; ++k) {
        const Digraph f = f_k(k).graph;
        t.expect(f.order() == k, "v(f_k), k=" + std::to_string(k));
        t.expect(static_cast<int>(f.size()) == 2 * k - 1, "a(f_k), k=" + std::to_string(k));
        auto b = derive_bound(f);
        t.expect(b.exact() && b.lower == k, "value of f_k, k=" + std::to_string(k));
    }
    auto threshold = isolated_threshold(exact_known(directed_cycle(3)));
    t.expect(threshold && *threshold == 2, "k_F of the directed triangle");
    return t.done("K<->3 in [4, 9], f_3..f_10 exact, k_F(C3) = 2");
}

// ------------------------------------------------------------------ 9

Outcome biorientation()
{
    Tally t;
    std::mt19937_64 rng(909);
    for (int i = 0; i < 200; ++i) {
        const int n = pick(rng, 1, 8);
        std::uint64_t seed = rng();
        auto edges = random_graph(n, uniform(rng, 0.1, 0.9), seed);
        t.expect(dichromatic_number(biorient(n, edges)).k == oracle::chromatic(n, edges),
                 "n=" + std::to_string(n) + " seed " + hex(seed));
    }
    return t.done("200 graphs");
}

// ----------------------------------------------------------------- 10

Outcome campaigns()
{
    Tally t;
    CampaignParams p;
    p.n_max = 5;
    p.jobs = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1U, 16U));
    std::string summary;
    for (const char* id : {"biK3-mader4", "bicycle-subdivision"}) {
        auto r = run_conjecture(id, p);
        t.expect(r.counterexamples.empty(), std::string(id) + " reported counterexamples");
        summary += (summary.empty() ? "" : "; ") + std::string(id) + ": " + std::to_string(r.instances) +
                   " instances, " + std::to_string(r.filtered) + " filtered, " +
                   std::to_string(r.counterexamples.size()) + " counterexamples";
    }
    return t.done(summary);
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"dichromatic solver matches the partition oracle", solver_equivalence},
        {"clique minus bicycle has no complete-biorientation subdivision", clique_minus_bicycle_witness},
        {"all four tournaments of order 4 are extracted", tournaments},
        {"every oriented cycle of length 3..5 is extracted", oriented_cycles},
        {"every bioriented tree on up to 5 vertices is extracted", bioriented_trees},
        {"every 3-dicritical digraph on up to 5 vertices hosts K<->3 - e", three_dicritical},
        {"property suites", property_suites},
        {"bound ledger arithmetic", ledger_numbers},
        {"biorientation preserves the chromatic number", biorientation},
        {"campaigns find no counterexample up to 5 vertices", campaigns},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.ok;
        std::printf("%s %2zu  %s (%s; %.1f s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.note.c_str(), secs);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
