#include "mader/extractors.hpp"

#include "mader/canonical.hpp"
#include "mader/errors.hpp"

#include <algorithm>
#include <map>

namespace mader {

SubdivisionEmbedding assemble_embedding(const Digraph& pattern, const Digraph& host,
                                        const std::vector<std::vector<Vertex>>& paths)
{
    std::vector<Vertex> ends;
    for (const auto& p : paths) {
        if (p.size() < 2)
            throw InternalError("assemble_embedding: degenerate path");
        ends.push_back(p.front());
        ends.push_back(p.back());
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    if (static_cast<int>(ends.size()) != pattern.order())
        throw InternalError("assemble_embedding: branch count does not match the pattern");
    auto index = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(ends.begin(), ends.end(), v) - ends.begin());
    };
    std::vector<Arc> skeleton_arcs;
    std::map<Arc, const std::vector<Vertex>*> by_ends;
    for (const auto& p : paths) {
        Arc a{index(p.front()), index(p.back())};
        if (!by_ends.emplace(a, &p).second)
            throw InternalError("assemble_embedding: two paths share endpoints");
        skeleton_arcs.push_back(a);
    }
    Digraph skeleton = Digraph::build(static_cast<int>(ends.size()), skeleton_arcs);
    auto iso = find_isomorphism(pattern, skeleton);
    if (!iso)
        throw InternalError("assemble_embedding: skeleton is not isomorphic to the pattern");
    SubdivisionEmbedding e{pattern, host, std::vector<Vertex>(pattern.order()), {}};
    for (Vertex x = 0; x < pattern.order(); ++x)
        e.branch[x] = ends[(*iso)[x]];
    for (const auto& a : pattern.arcs())
        e.paths[a] = *by_ends.at(Arc{(*iso)[a.tail], (*iso)[a.head]});
    if (auto bad = verify_embedding(e))
        throw InternalError("assemble_embedding: " + *bad);
    return e;
}

namespace {

// Vertex-critical core: drop vertices (descending id) while chi stays >= k.
SubDigraph vertex_core(const Digraph& d, int k)
{
    std::vector<Vertex> keep(d.order());
    for (Vertex v = 0; v < d.order(); ++v)
        keep[v] = v;
    for (Vertex v = d.order() - 1; v >= 0; --v) {
        std::vector<Vertex> trial;
        for (Vertex u : keep)
            if (u != v)
                trial.push_back(u);
        if (dichromatic_at_least(induced(d, trial).graph, k))
            keep = std::move(trial);
    }
    return induced(d, keep);
}

std::size_t position(const std::vector<Vertex>& seq, Vertex v)
{
    auto it = std::find(seq.begin(), seq.end(), v);
    if (it == seq.end())
        throw InternalError("extract_ear: vertex missing from a path trace");
    return static_cast<std::size_t>(it - seq.begin());
}

SubdivisionEmbedding extract_forward(const Digraph& d, const Digraph& f, const EarSpec& ear, int mader_f,
                                     const SubdivisionFinder& find_f, EarStats* stats)
{
    const int k = ear.length();
    const Digraph fstar = ear_add(f, ear);
    const int target = mader_f + k;
    if (!dichromatic_at_least(d, target))
        throw PreconditionError("extract_ear: dichromatic number below mader(F) + k = " + std::to_string(target));

    SubDigraph core = vertex_core(d, target);
    const Digraph& h = core.graph;
    const int n = h.order();
    std::vector<int> c0 = dichromatic_number(h).coloring.color;

    int restarts = 0;
    SubdivisionEmbedding s;
    AcyclicColoring c;
    std::vector<Vertex> cyc;
    Vertex x0 = 0;
    while (true) {
        std::vector<Vertex> y2;
        for (Vertex v = 0; v < n; ++v)
            if (c0[v] > k)
                y2.push_back(v);
        SubDigraph part = induced(h, y2);
        s = find_f(part.graph);
        if (!(s.pattern == f) || verify_embedding(s))
            throw InternalError("extract_ear: finder returned an invalid F-embedding");
        s = pull_back(s, part, h);
        x0 = s.branch[ear.anchor];

        c = AcyclicColoring{std::vector<int>(n, 0), k};
        for (Vertex v = 0; v < n; ++v)
            if (c0[v] <= k)
                c.color[v] = c0[v];
        c = minimize_preorder(h, c, x0);

        std::vector<bool> ones(n);
        for (Vertex v = 0; v < n; ++v)
            ones[v] = c.color[v] == 1;
        cyc = shortest_cycle_through(h, x0, ones);
        if (!cyc.empty())
            break;
        // x0 joins the first k classes; |Y1| grows.
        ++restarts;
        if (restarts > n)
            throw InternalError("extract_ear: restart loop exceeded n iterations");
        for (Vertex v = 0; v < n; ++v)
            if (c.color[v] != 0)
                c0[v] = c.color[v];
        c0[x0] = 1;
    }
    if (stats)
        stats->restarts = restarts;

    // x_1..x_k and the bicolored connectors P_{i-1,i}.
    std::vector<Vertex> x(k + 1);
    x[0] = x0;
    x[1] = cyc[1];
    std::vector<std::vector<Vertex>> trace(k + 1); // trace[i] runs x_{i-1} .. x_i
    std::vector<bool> fwd(k + 1, true);
    for (int i = 2; i <= k; ++i) {
        auto comp = bicolored_component(h, c, i - 1, i, x[i - 1]);
        auto it = std::find_if(comp.begin(), comp.end(),
                               [&](Vertex y) { return c.color[y] == i && h.has_arc(x0, y); });
        if (it == comp.end())
            throw InternalError("extract_ear: no out-neighbor of x0 in the bicolored component");
        x[i] = *it;
        std::vector<bool> blocked(n);
        for (Vertex v = 0; v < n; ++v)
            blocked[v] = c.color[v] != i - 1 && c.color[v] != i;
        fwd[i] = ear.forward[i - 2];
        std::vector<Vertex> from{fwd[i] ? x[i - 1] : x[i]};
        std::vector<Vertex> to{fwd[i] ? x[i] : x[i - 1]};
        auto p = shortest_dipath(h, from, to, blocked);
        if (p.empty())
            throw InternalError("extract_ear: bicolored connector missing");
        if (!fwd[i])
            std::reverse(p.begin(), p.end());
        trace[i] = std::move(p);
    }

    // z_1..z_k.
    std::vector<Vertex> z(k + 1);
    std::vector<bool> on_cycle(n);
    for (Vertex v : cyc)
        on_cycle[v] = true;
    if (k == 1) {
        z[1] = x[1];
    } else {
        for (Vertex v : trace[2])
            if (on_cycle[v])
                z[1] = v;
    }
    for (int i = 2; i < k; ++i) {
        std::vector<bool> next(n);
        for (Vertex v : trace[i + 1])
            next[v] = true;
        bool found = false;
        for (std::size_t p = position(trace[i], z[i - 1]); p < trace[i].size() && !found; ++p)
            if (next[trace[i][p]]) {
                z[i] = trace[i][p];
                found = true;
            }
        if (!found)
            throw InternalError("extract_ear: consecutive connectors do not meet");
    }
    if (k >= 2)
        z[k] = x[k];

    SubdivisionEmbedding e{fstar, h, std::vector<Vertex>(fstar.order()), {}};
    for (Vertex v = 0; v < f.order(); ++v)
        e.branch[v] = s.branch[v];
    for (const auto& [arc, path] : s.paths)
        e.paths[arc] = path;
    for (int i = 1; i <= k; ++i)
        e.branch[ear.vertices[i - 1]] = z[i];

    const Vertex v0 = ear.anchor;
    const Vertex v1 = ear.vertices[0];
    const std::size_t j = position(cyc, z[1]);
    e.paths[Arc{v0, v1}] = std::vector<Vertex>(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    std::vector<Vertex> back(cyc.begin() + static_cast<std::ptrdiff_t>(j), cyc.end());
    back.push_back(x0);
    e.paths[Arc{v1, v0}] = std::move(back);
    for (int i = 2; i <= k; ++i) {
        const auto& tr = trace[i];
        std::vector<Vertex> q(tr.begin() + static_cast<std::ptrdiff_t>(position(tr, z[i - 1])),
                              tr.begin() + static_cast<std::ptrdiff_t>(position(tr, z[i])) + 1);
        Vertex a = ear.vertices[i - 2];
        Vertex b = ear.vertices[i - 1];
        if (fwd[i]) {
            e.paths[Arc{a, b}] = std::move(q);
        } else {
            std::reverse(q.begin(), q.end());
            e.paths[Arc{b, a}] = std::move(q);
        }
    }
    if (k >= 2)
        e.paths[Arc{v0, ear.vertices[k - 1]}] = {x0, z[k]};

    if (auto bad = verify_embedding(e))
        throw InternalError("extract_ear: assembled subdivision is invalid: " + *bad);
    return pull_back(e, core, d);
}

} // namespace

SubdivisionEmbedding extract_ear(const Digraph& d, const Digraph& f, const EarSpec& ear, int mader_f,
                                 const SubdivisionFinder& find_f, EarStats* stats)
{
    if (ear.length() < 1 || ear.anchor < 0 || ear.anchor >= f.order())
        throw PreconditionError("extract_ear: bad ear");
    if (ear.closing == Closing::AnchorToEnd || ear.length() == 1)
        return extract_forward(d, f, ear, mader_f, find_f, stats);
    // The other closing direction is the reversed problem.
    EarSpec r = ear;
    for (std::size_t i = 0; i < r.forward.size(); ++i)
        r.forward[i] = !ear.forward[i];
    r.closing = Closing::AnchorToEnd;
    SubdivisionFinder reversed_finder = [&](const Digraph& host) {
        return reverse_embedding(find_f(reverse(host)));
    };
    return reverse_embedding(extract_forward(reverse(d), reverse(f), r, mader_f, reversed_finder, stats));
}

namespace {

// Connected target spanning the maximal octus built by its history.
SubdivisionEmbedding extract_spanning(const Digraph& d, const OctusHistory& maximal, const Digraph& target,
                                      std::span<const Vertex> into)
{
    std::vector<Vertex> labels(into.begin(), into.end());
    std::vector<Arc> arcs;
    for (const auto& a : target.arcs())
        arcs.push_back({into[a.tail], into[a.head]});
    OctusHistory spanning = spanning_maximal(maximal, labels, arcs);

    std::map<Vertex, Vertex> dense{{spanning.root, 0}};
    std::vector<Digraph> chain{Digraph::build(1, {})};
    std::vector<EarSpec> ears;
    for (const auto& step : spanning.steps) {
        EarSpec de{dense.at(step.ear.anchor), {}, step.ear.forward, step.ear.closing};
        for (Vertex v : step.ear.vertices) {
            Vertex id = static_cast<Vertex>(dense.size());
            dense.emplace(v, id);
            de.vertices.push_back(id);
        }
        chain.push_back(ear_add(chain.back(), de));
        ears.push_back(std::move(de));
    }

    std::function<SubdivisionEmbedding(const Digraph&, std::size_t)> embed = [&](const Digraph& host,
                                                                                 std::size_t t) {
        if (t == 0) {
            if (host.order() == 0)
                throw InternalError("extract_octus: empty host for the root");
            return SubdivisionEmbedding{chain[0], host, {0}, {}};
        }
        return extract_ear(host, chain[t - 1], ears[t - 1], chain[t - 1].order(),
                           [&](const Digraph& inner) { return embed(inner, t - 1); });
    };
    SubdivisionEmbedding e = embed(d, ears.size());
    std::vector<Vertex> into_dense;
    for (Vertex l : into)
        into_dense.push_back(dense.at(l));
    return restrict_embedding(e, target, into_dense);
}

} // namespace

SubdivisionEmbedding extract_octus(const Digraph& d, const OctusHistory& maximal, const Digraph& target,
                                   std::span<const Vertex> into)
{
    if (!maximal.ears_only())
        throw PreconditionError("extract_octus: history must consist of ear additions only");
    if (static_cast<int>(into.size()) != target.order())
        throw PreconditionError("extract_octus: inclusion map has the wrong size");
    Replay rm = replay(maximal);
    auto index_of = [&](Vertex label) {
        auto it = std::lower_bound(rm.labels.begin(), rm.labels.end(), label);
        if (it == rm.labels.end() || *it != label)
            throw PreconditionError("extract_octus: target vertex maps outside the octus");
        return static_cast<Vertex>(it - rm.labels.begin());
    };
    std::vector<Vertex> sorted(into.begin(), into.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("extract_octus: inclusion map is not injective");
    for (const auto& a : target.arcs())
        if (!rm.graph.has_arc(index_of(into[a.tail]), index_of(into[a.head])))
            throw PreconditionError("extract_octus: target arc missing from the octus");
    if (!dichromatic_at_least(d, target.order()))
        throw PreconditionError("extract_octus: dichromatic number below v(F)");

    SubdivisionEmbedding out{target, d, std::vector<Vertex>(target.order()), {}};
    if (target.order() == 0)
        return out;
    auto comps = weak_components(target);
    if (comps.size() == 1)
        return extract_spanning(d, maximal, target, into);

    // Disjoint union: give each component as many color classes as vertices.
    auto best = dichromatic_number(d);
    int next_color = 1;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        int last = ci + 1 == comps.size() ? best.k : next_color + static_cast<int>(comp.size()) - 1;
        std::vector<Vertex> part;
        for (Vertex v = 0; v < d.order(); ++v)
            if (best.coloring.color[v] >= next_color && best.coloring.color[v] <= last)
                part.push_back(v);
        next_color = last + 1;
        SubDigraph host = induced(d, part);
        SubDigraph piece = induced(target, comp);
        std::vector<Vertex> piece_into;
        for (Vertex v : piece.to_parent)
            piece_into.push_back(into[v]);
        auto e = pull_back(extract_spanning(host.graph, maximal, piece.graph, piece_into), host, d);
        for (Vertex x = 0; x < piece.graph.order(); ++x)
            out.branch[piece.to_parent[x]] = e.branch[x];
        for (const auto& [arc, path] : e.paths)
            out.paths[Arc{piece.to_parent[arc.tail], piece.to_parent[arc.head]}] = path;
    }
    if (auto bad = verify_embedding(out))
        throw InternalError("extract_octus: combined embedding invalid: " + *bad);
    return out;
}

SubdivisionEmbedding extract_octus(const Digraph& d, const Digraph& target)
{
    auto history = is_octus(target);
    if (!history)
        throw PreconditionError("extract_octus: target is not an octus");
    OctusHistory maximal = complete_to_maximal(*history);
    std::vector<Vertex> into(target.order());
    for (Vertex v = 0; v < target.order(); ++v)
        into[v] = v;
    return extract_octus(d, maximal, target, into);
}

} // namespace mader
