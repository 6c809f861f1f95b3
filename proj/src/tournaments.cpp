#include "mader/extractors.hpp"

#include "mader/canonical.hpp"
#include "mader/errors.hpp"
#include "mader/menger.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace mader {

namespace {

struct Context {
    std::vector<std::string> trace;
    bool used_oracle = false;
    int depth = 0;

    void note(const std::string& line) { trace.push_back(std::string(2 * depth, ' ') + line); }
};

SubdivisionEmbedding oracle(const Digraph& d, const Digraph& pattern, Context& ctx, const std::string& why)
{
    ctx.note("oracle search: " + why);
    ctx.used_oracle = true;
    auto e = find_subdivision(d, pattern);
    if (!e)
        throw InternalError("no subdivision found in a digraph with dichromatic number at least 4");
    return *e;
}

// The tournament inside four mutually bioriented vertices.
SubdivisionEmbedding inside_clique(const Digraph& d, const Digraph& pattern, std::array<Vertex, 4> q)
{
    std::sort(q.begin(), q.end());
    SubdivisionEmbedding e{pattern, d, std::vector<Vertex>(q.begin(), q.end()), {}};
    for (const auto& a : pattern.arcs())
        e.paths[a] = {q[a.tail], q[a.head]};
    return e;
}

std::string set_text(const std::vector<Vertex>& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

std::vector<Vertex> segment(const std::vector<Vertex>& seq, std::size_t from, std::size_t to)
{
    return {seq.begin() + static_cast<std::ptrdiff_t>(from), seq.begin() + static_cast<std::ptrdiff_t>(to) + 1};
}

std::size_t index_in(const std::vector<Vertex>& seq, Vertex v)
{
    return static_cast<std::size_t>(std::find(seq.begin(), seq.end(), v) - seq.begin());
}

struct Minus {
    SubDigraph sub;
    std::vector<Vertex> to_child;
};

Minus without(const Digraph& d, Vertex v)
{
    std::array<Vertex, 1> gone{v};
    Minus m{delete_vertices(d, gone), std::vector<Vertex>(d.order(), -1)};
    for (std::size_t i = 0; i < m.sub.to_parent.size(); ++i)
        m.to_child[m.sub.to_parent[i]] = static_cast<Vertex>(i);
    return m;
}

// Vertex-disjoint A-B dipaths in D - v, in D's ids.
std::vector<std::vector<Vertex>> disjoint_avoiding(const Digraph& d, Vertex v, const std::vector<Vertex>& a,
                                                   const std::vector<Vertex>& b)
{
    Minus m = without(d, v);
    std::vector<Vertex> ca;
    std::vector<Vertex> cb;
    for (Vertex x : a)
        ca.push_back(m.to_child[x]);
    for (Vertex x : b)
        cb.push_back(m.to_child[x]);
    auto dp = disjoint_paths(m.sub.graph, ca, cb);
    std::vector<std::vector<Vertex>> out;
    for (const auto& p : dp.system.paths) {
        std::vector<Vertex> q;
        for (Vertex x : p)
            q.push_back(m.sub.to_parent[x]);
        out.push_back(std::move(q));
    }
    return out;
}

// Monochromatic cycles through v for each color of a 3-coloring of D - v.
std::vector<std::vector<Vertex>> extension_cycles(const Digraph& d, Vertex v)
{
    Minus m = without(d, v);
    auto col = acyclic_coloring(m.sub.graph, 3);
    if (!col)
        return {};
    std::vector<int> color(d.order(), 0);
    for (std::size_t i = 0; i < m.sub.to_parent.size(); ++i)
        color[m.sub.to_parent[i]] = col->color[i];
    std::vector<std::vector<Vertex>> cycles;
    for (int i = 1; i <= 3; ++i) {
        std::vector<bool> allowed(d.order());
        for (Vertex x = 0; x < d.order(); ++x)
            allowed[x] = color[x] == i;
        cycles.push_back(shortest_cycle_through(d, v, allowed));
    }
    return cycles;
}

SubdivisionEmbedding solve(const Digraph& d, Tournament4 which, Context& ctx);

SubdivisionEmbedding strong_construction(const Digraph& d, Context& ctx)
{
    const Digraph pattern = tournament4(Tournament4::Strong);
    auto nv = find_noncritical_vertex(d, 2);
    if (!nv)
        return oracle(d, pattern, ctx, "no vertex leaves a strongly 2-connected remainder");
    const Vertex v = *nv;
    auto cyc = extension_cycles(d, v);
    if (cyc.size() != 3 || std::any_of(cyc.begin(), cyc.end(), [](const auto& c) { return c.empty(); }))
        throw InternalError("color-extension cycles missing in a 4-dicritical digraph");
    ctx.note("non-critical vertex " + std::to_string(v) + ", extension cycles of lengths " +
             std::to_string(cyc[0].size()) + "," + std::to_string(cyc[1].size()) + "," +
             std::to_string(cyc[2].size()));

    std::vector<std::vector<Vertex>> paths;
    auto long_cycle = std::find_if(cyc.begin(), cyc.end(), [](const auto& c) { return c.size() >= 3; });
    if (long_cycle == cyc.end()) {
        // Three digons at v.
        Vertex v1 = cyc[0][1];
        Vertex v2 = cyc[1][1];
        Vertex v3 = cyc[2][1];
        std::vector<bool> blocked(d.order());
        blocked[v] = true;
        std::vector<Vertex> from{v1};
        std::vector<Vertex> to{v2, v3};
        auto p = shortest_dipath(d, from, to, blocked);
        if (p.empty())
            throw InternalError("D - v is not strongly connected");
        if (p.back() == v3)
            std::swap(v2, v3);
        std::vector<Vertex> b;
        for (Vertex x : d.in_neighbors(v3))
            if (x != v)
                b.push_back(x);
        auto pp = disjoint_avoiding(d, v, p, b);
        if (pp.size() < 2)
            throw InternalError("fewer than two disjoint paths in a strongly 2-connected digraph");
        pp.resize(2);
        if (index_in(p, pp[0].front()) > index_in(p, pp[1].front()))
            std::swap(pp[0], pp[1]);
        const std::size_t i1 = index_in(p, pp[0].front());
        const std::size_t i2 = index_in(p, pp[1].front());
        std::vector<Vertex> first{v};
        auto head = segment(p, 0, i1);
        first.insert(first.end(), head.begin(), head.end());
        paths.push_back(std::move(first));
        paths.push_back(segment(p, i1, i2));
        auto tail = segment(p, i2, p.size() - 1);
        tail.push_back(v);
        paths.push_back(std::move(tail));
        for (auto& q : pp) {
            q.push_back(v3);
            paths.push_back(std::move(q));
        }
        paths.push_back({v3, v});
        ctx.note("three digons: Menger paths from the " + std::to_string(p.size()) + "-vertex connector");
    } else {
        const auto& c1 = *long_cycle;
        const auto& c2 = long_cycle == cyc.begin() ? cyc[1] : cyc[0];
        const Vertex v2 = c2[1];
        std::vector<Vertex> a;
        for (Vertex x : d.out_neighbors(v2))
            if (x != v)
                a.push_back(x);
        std::vector<Vertex> b(c1.begin() + 1, c1.end());
        auto pp = disjoint_avoiding(d, v, a, b);
        if (pp.size() < 2)
            throw InternalError("fewer than two disjoint paths in a strongly 2-connected digraph");
        std::size_t ya = index_in(c1, pp[0].back());
        std::size_t yb = index_in(c1, pp[1].back());
        if (ya > yb)
            std::swap(ya, yb);
        paths.push_back(segment(c1, 0, ya));
        paths.push_back(segment(c1, ya, yb));
        auto back = segment(c1, yb, c1.size() - 1);
        back.push_back(v);
        paths.push_back(std::move(back));
        paths.push_back({v, v2});
        for (int t = 0; t < 2; ++t) {
            std::vector<Vertex> q{v2};
            q.insert(q.end(), pp[t].begin(), pp[t].end());
            paths.push_back(std::move(q));
        }
        ctx.note("long extension cycle: two Menger paths onto it");
    }
    return assemble_embedding(pattern, d, paths);
}

// Dicycles of length >= 3 in ascending length (smallest vertex first);
// visit returns true to stop. Chordless (induced) cycles only if asked.
bool for_each_long_cycle(const Digraph& d, bool chordless, bool chorded,
                         const std::function<bool(const std::vector<Vertex>&)>& visit)
{
    const int n = d.order();
    for (int len = 3; len <= n; ++len) {
        std::vector<Vertex> path;
        std::vector<bool> used(n, false);
        bool stop = false;
        std::function<void(Vertex)> grow = [&](Vertex s) {
            if (stop)
                return;
            Vertex last = path.back();
            if (static_cast<int>(path.size()) == len) {
                if (!d.has_arc(last, s))
                    return;
                int inner = 0;
                for (Vertex x : path)
                    for (Vertex y : path)
                        if (x != y && d.has_arc(x, y))
                            ++inner;
                bool is_chordless = inner == len;
                if ((is_chordless && chordless) || (!is_chordless && chorded))
                    stop = visit(path);
                return;
            }
            for (Vertex w : d.out_neighbors(last))
                if (w > s && !used[w]) {
                    used[w] = true;
                    path.push_back(w);
                    grow(s);
                    path.pop_back();
                    used[w] = false;
                    if (stop)
                        return;
                }
        };
        for (Vertex s = 0; s < n && !stop; ++s) {
            path = {s};
            used.assign(n, false);
            used[s] = true;
            grow(s);
        }
        if (stop)
            return true;
    }
    return false;
}

std::optional<SubdivisionEmbedding> fan_onto(const Digraph& d, const Digraph& pattern, Vertex x,
                                             const std::vector<Vertex>& c)
{
    if (std::find(c.begin(), c.end(), x) != c.end())
        return std::nullopt;
    auto fan = vertex_fan(d, x, c, 3);
    if (!fan.fan)
        return std::nullopt;
    std::vector<std::size_t> at;
    for (const auto& p : fan.fan->paths)
        at.push_back(index_in(c, p.back()));
    std::sort(at.begin(), at.end());
    std::vector<std::vector<Vertex>> paths = fan.fan->paths;
    paths.push_back(segment(c, at[0], at[1]));
    paths.push_back(segment(c, at[1], at[2]));
    std::vector<Vertex> wrap = segment(c, at[2], c.size() - 1);
    wrap.insert(wrap.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(at[0]) + 1);
    paths.push_back(std::move(wrap));
    return assemble_embedding(pattern, d, paths);
}

SubdivisionEmbedding source_construction(const Digraph& d, Context& ctx)
{
    const Digraph pattern = tournament4(Tournament4::SourceTriangle);
    const int n = d.order();
    // Two-separators of the underlying graph: glue a digon and recurse.
    for (Vertex s1 = 0; s1 < n; ++s1)
        for (Vertex s2 = s1 + 1; s2 < n; ++s2) {
            std::array<Vertex, 2> k{s1, s2};
            SubDigraph rest = delete_vertices(d, k);
            auto comps = weak_components(rest.graph);
            if (comps.size() < 2)
                continue;
            std::vector<bool> first(n, false);
            for (Vertex x : comps[0])
                first[rest.to_parent[x]] = true;
            std::array<Arc, 2> digon{Arc{s1, s2}, Arc{s2, s1}};
            Digraph glued = add_arcs(d, digon);
            for (int side = 0; side < 2; ++side) {
                std::vector<Vertex> part;
                for (Vertex x = 0; x < n; ++x)
                    if (x == s1 || x == s2 || (x != s1 && x != s2 && first[x] == (side == 0)))
                        part.push_back(x);
                SubDigraph di = induced(glued, part);
                if (!dichromatic_at_least(di.graph, 4))
                    continue;
                ctx.note("2-separator {" + std::to_string(s1) + "," + std::to_string(s2) + "}: recurse into " +
                         set_text(part));
                auto e = pull_back(solve(di.graph, Tournament4::SourceTriangle, ctx), di, glued);
                std::vector<Arc> arcs;
                std::vector<bool> blocked(n, false);
                for (Vertex x = 0; x < n; ++x)
                    blocked[x] = x != s1 && x != s2 && first[x] == (side == 0);
                for (const auto& a : embedding_arcs(e)) {
                    if (d.has_arc(a.tail, a.head)) {
                        arcs.push_back(a);
                        continue;
                    }
                    std::vector<Vertex> from{a.tail};
                    std::vector<Vertex> to{a.head};
                    auto p = shortest_dipath(d, from, to, blocked);
                    if (p.empty())
                        throw InternalError("no dipath replaces the glued digon arc");
                    for (std::size_t i = 1; i < p.size(); ++i)
                        arcs.push_back({p[i - 1], p[i]});
                }
                auto lifted = trace_embedding(pattern, d, e.branch, arcs);
                if (!lifted)
                    throw InternalError("glued digon arc could not be rerouted");
                return *lifted;
            }
            throw InternalError("neither side of a 2-separator keeps dichromatic number 4");
        }

    // A vertex with three dipaths onto a long dicycle avoiding it.
    for (Vertex v = 0; v < n; ++v)
        for (const auto& c : extension_cycles(d, v)) {
            if (c.size() < 3)
                continue;
            for (Vertex x = 0; x < n; ++x)
                if (auto e = fan_onto(d, pattern, x, c)) {
                    ctx.note("fan from " + std::to_string(x) + " onto extension cycle " + set_text(c));
                    return *e;
                }
        }
    std::optional<SubdivisionEmbedding> found;
    auto attempt = [&](const std::vector<Vertex>& c) {
        for (Vertex x = 0; x < n; ++x)
            if ((found = fan_onto(d, pattern, x, c))) {
                ctx.note("fan from " + std::to_string(x) + " onto dicycle " + set_text(c));
                return true;
            }
        return false;
    };
    if (for_each_long_cycle(d, true, false, attempt) || for_each_long_cycle(d, false, true, attempt))
        return *found;
    return oracle(d, pattern, ctx, "no vertex/dicycle pair carries a 3-fan");
}

SubdivisionEmbedding solve_critical(const Digraph& d, Tournament4 which, Context& ctx)
{
    const Digraph pattern = tournament4(which);
    const int n = d.order();
    if (n == 4) {
        ctx.note("complete biorientation on 4 vertices");
        return inside_clique(d, pattern, {0, 1, 2, 3});
    }
    // Cut vertex: split at a sink component.
    for (Vertex v = 0; v < n; ++v) {
        Minus m = without(d, v);
        auto comps = strong_components(m.sub.graph);
        if (comps.size() < 2)
            continue;
        std::vector<Vertex> x;
        for (Vertex a : comps.back())
            x.push_back(m.sub.to_parent[a]);
        SinkSplit split = sink_split(d, v, x);
        if (dichromatic_at_least(split.d1.graph, 4)) {
            ctx.note("cut vertex " + std::to_string(v) + ": recurse into sink side " + set_text(x));
            return pull_back(solve(split.d1.graph, which, ctx), split.d1, d);
        }
        if (dichromatic_at_least(split.d2.graph, 4)) {
            ctx.note("cut vertex " + std::to_string(v) + ": recurse into source side, lift through " +
                     std::to_string(x.size()) + " butterfly undos");
            return lift(split.d2.step, solve(split.d2.graph, which, ctx));
        }
        throw InternalError("neither side of a sink split keeps dichromatic number 4");
    }
    // Out-degree three.
    for (Vertex u = 0; u < n; ++u) {
        if (d.out_degree(u) != 3)
            continue;
        auto outs = d.out_neighbors(u);
        auto one_way = std::find_if(outs.begin(), outs.end(), [&](Vertex w) { return !d.has_arc(w, u); });
        Reduction red;
        if (one_way != outs.end()) {
            ctx.note("out-degree 3 at " + std::to_string(u) + ": butterfly onto " + std::to_string(*one_way));
            red = butterfly_reduce(d, u, *one_way);
        } else {
            std::optional<std::pair<Vertex, Vertex>> gap;
            for (Vertex a : outs)
                for (Vertex b : outs)
                    if (a != b && !gap && !d.has_arc(a, b))
                        gap = std::pair{a, b};
            if (!gap) {
                ctx.note("out-degree 3 at " + std::to_string(u) + ": closed neighborhood is a complete biorientation");
                return inside_clique(d, pattern, {u, outs[0], outs[1], outs[2]});
            }
            ctx.note("out-degree 3 at " + std::to_string(u) + ": contract digons to " + std::to_string(gap->first) +
                     "," + std::to_string(gap->second));
            red = digon_contract(d, u, gap->first, gap->second);
        }
        if (!dichromatic_at_least(red.graph, 4))
            throw InternalError("degree reduction lowered the dichromatic number");
        return lift(red.step, solve(red.graph, which, ctx));
    }
    if (which == Tournament4::Strong) {
        if (d.min_in_degree() == 3) {
            ctx.note("in-degree 3: work in the reversed digraph");
            auto e = reverse_embedding(solve_critical(reverse(d), which, ctx));
            auto iso = find_isomorphism(e.pattern, pattern);
            return relabel_pattern(e, pattern, *iso);
        }
        return strong_construction(d, ctx);
    }
    return source_construction(d, ctx);
}

SubdivisionEmbedding solve(const Digraph& d, Tournament4 which, Context& ctx)
{
    SubDigraph core = dicritical_subdigraph(d, 4);
    ctx.note("4-dicritical core with " + std::to_string(core.graph.order()) + " vertices, " +
             std::to_string(core.graph.size()) + " arcs");
    ++ctx.depth;
    auto e = solve_critical(core.graph, which, ctx);
    --ctx.depth;
    return pull_back(e, core, d);
}

} // namespace

TournamentExtraction extract_tournament4(const Digraph& d, Tournament4 which)
{
    if (!dichromatic_at_least(d, 4))
        throw PreconditionError("extract_tournament4: dichromatic number below 4");
    Context ctx;
    TournamentExtraction out;
    switch (which) {
    case Tournament4::Transitive: {
        SubDigraph core = dicritical_subdigraph(d, 4);
        ctx.note("4-dicritical core with " + std::to_string(core.graph.order()) +
                 " vertices has minimum out-degree " + std::to_string(core.graph.min_out_degree()));
        out.embedding = pull_back(oracle(core.graph, tournament4(which), ctx, "transitive target"), core, d);
        break;
    }
    case Tournament4::Strong:
    case Tournament4::SourceTriangle:
        out.embedding = solve(d, which, ctx);
        break;
    case Tournament4::SinkTriangle: {
        auto r = extract_tournament4(reverse(d), Tournament4::SourceTriangle);
        out.embedding = reverse_embedding(r.embedding);
        out.route = r.route;
        out.trace = {"reverse the digraph and extract the source-triangle tournament"};
        out.trace.insert(out.trace.end(), r.trace.begin(), r.trace.end());
        return out;
    }
    }
    out.route = ctx.used_oracle ? "oracle" : "proof";
    out.trace = std::move(ctx.trace);
    if (auto bad = verify_embedding(out.embedding))
        throw InternalError("extract_tournament4: " + *bad);
    return out;
}

} // namespace mader
