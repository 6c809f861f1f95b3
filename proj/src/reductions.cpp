#include "mader/extractors.hpp"

#include "mader/errors.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

namespace mader {

Reduction butterfly_reduce(const Digraph& d, Vertex u, Vertex w)
{
    if (u < 0 || u >= d.order() || w < 0 || w >= d.order() || !d.has_arc(u, w))
        throw PreconditionError("butterfly_reduce: (u,w) is not an arc");
    std::vector<Arc> extra;
    for (Vertex x : d.in_neighbors(u))
        if (x != w)
            extra.push_back({x, w});
    std::array<Vertex, 1> gone{u};
    SubDigraph sub = delete_vertices(add_arcs(d, extra), gone);
    ReductionStep step;
    step.kind = ReductionStep::Kind::Butterfly;
    step.original = d;
    step.to_original = sub.to_parent;
    step.u = u;
    step.w = w;
    return {std::move(sub.graph), std::move(step)};
}

SinkSplit sink_split(const Digraph& d, Vertex v, std::span<const Vertex> x)
{
    const int n = d.order();
    if (v < 0 || v >= n)
        throw PreconditionError("sink_split: bad cut vertex");
    std::vector<bool> in_x(n, false);
    for (Vertex a : x) {
        if (a < 0 || a >= n || a == v || in_x[a])
            throw PreconditionError("sink_split: bad vertex set X");
        in_x[a] = true;
    }
    std::array<Vertex, 1> gone{v};
    SubDigraph minus = delete_vertices(d, gone);
    auto comps = strong_components(minus.graph);
    bool is_sink = false;
    for (const auto& comp : comps) {
        std::vector<Vertex> mapped;
        for (Vertex a : comp)
            mapped.push_back(minus.to_parent[a]);
        std::vector<Vertex> sorted_x(x.begin(), x.end());
        std::sort(sorted_x.begin(), sorted_x.end());
        if (mapped != sorted_x)
            continue;
        is_sink = true;
        for (Vertex a : mapped)
            for (Vertex b : d.out_neighbors(a))
                if (b != v && !in_x[b])
                    is_sink = false;
    }
    if (!is_sink)
        throw PreconditionError("sink_split: X is not a sink strong component of D - v");
    std::vector<Vertex> side1{v};
    std::vector<Vertex> side2{v};
    for (Vertex a = 0; a < n; ++a)
        if (a != v)
            (in_x[a] ? side1 : side2).push_back(a);
    if (side2.size() == 1)
        throw PreconditionError("sink_split: Y is empty");
    std::sort(side1.begin(), side1.end());
    std::sort(side2.begin(), side2.end());

    std::vector<Arc> extra;
    for (Vertex y = 0; y < n; ++y)
        if (y != v && !in_x[y])
            for (Vertex b : d.out_neighbors(y))
                if (in_x[b]) {
                    extra.push_back({y, v});
                    break;
                }
    Digraph with_extra = add_arcs(d, extra);
    SubDigraph d2 = induced(with_extra, side2);
    ReductionStep step;
    step.kind = ReductionStep::Kind::SinkSplit;
    step.original = d;
    step.to_original = d2.to_parent;
    step.u = v;
    step.x_side.assign(x.begin(), x.end());
    std::sort(step.x_side.begin(), step.x_side.end());
    return {induced(d, side1), {std::move(d2.graph), std::move(step)}};
}

Reduction digon_contract(const Digraph& d, Vertex u, Vertex v, Vertex w)
{
    const int n = d.order();
    auto ok = [n](Vertex a) { return a >= 0 && a < n; };
    if (!ok(u) || !ok(v) || !ok(w) || u == v || u == w || v == w)
        throw PreconditionError("digon_contract: need three distinct vertices");
    if (!d.has_digon(u, v) || !d.has_digon(u, w))
        throw PreconditionError("digon_contract: {u,v} and {u,w} must be digons");
    std::vector<Arc> extra;
    for (Vertex x = 0; x < n; ++x) {
        if (x == u || x == v || x == w)
            continue;
        if (d.has_arc(v, x) || d.has_arc(w, x))
            extra.push_back({u, x});
        if (d.has_arc(x, v) || d.has_arc(x, w))
            extra.push_back({x, u});
    }
    std::array<Vertex, 2> gone{v, w};
    SubDigraph sub = delete_vertices(add_arcs(d, extra), gone);
    ReductionStep step;
    step.kind = ReductionStep::Kind::DigonContract;
    step.original = d;
    step.to_original = sub.to_parent;
    step.u = u;
    step.v = v;
    step.w = w;
    return {std::move(sub.graph), std::move(step)};
}

namespace {

struct Skeleton {
    std::vector<Vertex> branch;
    std::set<Arc> arcs;
};

// One butterfly undo in `host`: arcs (x,w) missing from host are rerouted
// through u, which is not yet used.
void undo_butterfly(const Digraph& host, Vertex u, Vertex w, Skeleton& s)
{
    std::vector<Arc> fresh;
    for (const auto& a : s.arcs)
        if (!host.has_arc(a.tail, a.head)) {
            if (a.head != w || !host.has_arc(a.tail, u))
                throw InternalError("butterfly lift: unexpected arc outside the original digraph");
            fresh.push_back(a);
        }
    if (fresh.empty())
        return;
    if (fresh.size() == 1) {
        s.arcs.erase(fresh[0]);
        s.arcs.insert({fresh[0].tail, u});
        s.arcs.insert({u, w});
        return;
    }
    if (fresh.size() > 2)
        throw InternalError("butterfly lift: branch vertex with three redirected in-arcs");
    // w is a branch vertex with in-degree two: move it to u.
    for (const auto& a : fresh) {
        s.arcs.erase(a);
        s.arcs.insert({a.tail, u});
    }
    s.arcs.insert({u, w});
    auto it = std::find(s.branch.begin(), s.branch.end(), w);
    if (it == s.branch.end())
        throw InternalError("butterfly lift: two redirected arcs into a subdivision vertex");
    *it = u;
}

void lift_sink_split(const ReductionStep& step, Skeleton& s)
{
    const Digraph& d = step.original;
    const int n = d.order();
    const Vertex v = step.u;
    std::vector<bool> in_x(n, false);
    for (Vertex a : step.x_side)
        in_x[a] = true;
    // In-arborescence of D[X + v] rooted at v, in BFS order.
    std::vector<Vertex> parent(n, -1);
    std::vector<Vertex> order{v};
    std::vector<bool> seen(n, false);
    seen[v] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex a : d.in_neighbors(order[i]))
            if (in_x[a] && !seen[a]) {
                seen[a] = true;
                parent[a] = order[i];
                order.push_back(a);
            }
    if (order.size() != step.x_side.size() + 1)
        throw InternalError("sink_split lift: X + v has no spanning in-arborescence");
    const int m = static_cast<int>(order.size()) - 1;
    std::vector<int> rank(n, -1);
    for (int i = 0; i <= m; ++i)
        rank[order[i]] = i;

    auto build_h = [&](int i) {
        std::vector<Arc> arcs;
        auto alive = [&](Vertex a) { return rank[a] < 0 || rank[a] <= i; };
        for (const auto& a : d.arcs()) {
            if (!alive(a.tail) || !alive(a.head))
                continue;
            bool inside = rank[a.tail] >= 0 && rank[a.head] >= 0;
            if (inside && parent[a.tail] != a.head)
                continue;
            arcs.push_back(a);
        }
        for (Vertex y = 0; y < n; ++y) {
            if (rank[y] >= 0)
                continue;
            for (Vertex b : d.out_neighbors(y)) {
                if (rank[b] <= i)
                    continue;
                Vertex up = b;
                while (rank[up] > i)
                    up = parent[up];
                arcs.push_back({y, up});
            }
        }
        return Digraph::build(n, arcs);
    };
    for (int i = 1; i <= m; ++i)
        undo_butterfly(build_h(i), order[i], parent[order[i]], s);
}

void lift_digon(const ReductionStep& step, Skeleton& s)
{
    const Digraph& d = step.original;
    const Vertex u = step.u;
    const std::array<Vertex, 3> line{step.v, u, step.w}; // the bioriented path v-u-w
    auto pos = [&](Vertex a) { return static_cast<int>(std::find(line.begin(), line.end(), a) - line.begin()); };
    std::vector<Vertex> ins;
    std::vector<Vertex> outs;
    for (const auto& a : s.arcs) {
        if (a.head == u)
            ins.push_back(a.tail);
        if (a.tail == u)
            outs.push_back(a.head);
    }
    if (ins.empty() && outs.empty())
        return;
    const std::array<Vertex, 3> pref{u, step.v, step.w};
    auto x_in = [&](Vertex y) {
        for (Vertex c : pref)
            if (d.has_arc(y, c))
                return c;
        throw InternalError("digon lift: in-neighbor without an arc into {u,v,w}");
    };
    auto x_out = [&](Vertex y) {
        for (Vertex c : pref)
            if (d.has_arc(c, y))
                return c;
        throw InternalError("digon lift: out-neighbor without an arc from {u,v,w}");
    };
    // Directed walk along the line between two of its vertices.
    auto segment = [&](Vertex from, Vertex to) {
        std::vector<Arc> arcs;
        int a = pos(from);
        int b = pos(to);
        int stepdir = a < b ? 1 : -1;
        for (int p = a; p != b; p += stepdir)
            arcs.push_back({line[p], line[p + stepdir]});
        return arcs;
    };
    for (Vertex y : ins)
        s.arcs.erase({y, u});
    for (Vertex y : outs)
        s.arcs.erase({u, y});

    if (ins.size() + outs.size() == 2) {
        if (ins.size() != 1)
            throw InternalError("digon lift: subdivision vertex with unbalanced degree");
        Vertex xm = x_in(ins[0]);
        Vertex xp = x_out(outs[0]);
        s.arcs.insert({ins[0], xm});
        for (const auto& a : segment(xm, xp))
            s.arcs.insert(a);
        s.arcs.insert({xp, outs[0]});
        return;
    }
    if (ins.size() + outs.size() != 3)
        throw InternalError("digon lift: branch vertex of degree other than three");
    struct Nb {
        Vertex y;
        bool incoming;
        Vertex x;
    };
    std::vector<Nb> nbs;
    for (Vertex y : ins)
        nbs.push_back({y, true, x_in(y)});
    for (Vertex y : outs)
        nbs.push_back({y, false, x_out(y)});
    std::stable_sort(nbs.begin(), nbs.end(), [&](const Nb& a, const Nb& b) { return pos(a.x) < pos(b.x); });
    const Vertex hub = nbs[1].x;
    for (const auto& nb : nbs) {
        if (nb.incoming) {
            s.arcs.insert({nb.y, nb.x});
            for (const auto& a : segment(nb.x, hub))
                s.arcs.insert(a);
        } else {
            for (const auto& a : segment(hub, nb.x))
                s.arcs.insert(a);
            s.arcs.insert({nb.x, nb.y});
        }
    }
    auto it = std::find(s.branch.begin(), s.branch.end(), u);
    if (it == s.branch.end())
        throw InternalError("digon lift: degree-three vertex is not a branch vertex");
    *it = hub;
}

bool cubic_orientation(const Digraph& p)
{
    for (Vertex x = 0; x < p.order(); ++x)
        if (p.in_degree(x) + p.out_degree(x) != 3)
            return false;
    for (const auto& a : p.arcs())
        if (p.has_arc(a.head, a.tail))
            return false;
    return true;
}

} // namespace

SubdivisionEmbedding lift(const ReductionStep& step, const SubdivisionEmbedding& reduced)
{
    const Digraph& pattern = reduced.pattern;
    if (!cubic_orientation(pattern))
        throw PreconditionError("lift: pattern must be an orientation of a cubic graph");
    if (step.kind != ReductionStep::Kind::DigonContract && pattern.min_out_degree() == 0)
        throw PreconditionError("lift: pattern must be sink-free");
    Skeleton s;
    for (Vertex b : reduced.branch)
        s.branch.push_back(step.to_original.at(b));
    for (const auto& a : embedding_arcs(reduced))
        s.arcs.insert({step.to_original.at(a.tail), step.to_original.at(a.head)});

    switch (step.kind) {
    case ReductionStep::Kind::Butterfly:
        undo_butterfly(step.original, step.u, step.w, s);
        break;
    case ReductionStep::Kind::SinkSplit:
        lift_sink_split(step, s);
        break;
    case ReductionStep::Kind::DigonContract:
        lift_digon(step, s);
        break;
    }
    std::vector<Arc> arcs(s.arcs.begin(), s.arcs.end());
    auto e = trace_embedding(pattern, step.original, s.branch, arcs);
    if (!e || verify_embedding(*e))
        throw InternalError("lift: lifted arc set is not a subdivision");
    return *e;
}

AcyclicColoring merge_sink_split_colorings(const SinkSplit& split, const AcyclicColoring& c1,
                                           const AcyclicColoring& c2)
{
    const ReductionStep& step = split.d2.step;
    const Digraph& d = step.original;
    if (static_cast<int>(c1.color.size()) != split.d1.graph.order() ||
        static_cast<int>(c2.color.size()) != split.d2.graph.order())
        throw PreconditionError("merge_sink_split_colorings: coloring sizes do not match");
    auto local = [](const std::vector<Vertex>& to_parent, Vertex v) {
        return static_cast<Vertex>(std::find(to_parent.begin(), to_parent.end(), v) - to_parent.begin());
    };
    const int at1 = c1.color[local(split.d1.to_parent, step.u)];
    const int at2 = c2.color[local(step.to_original, step.u)];
    AcyclicColoring out{std::vector<int>(d.order(), 0), std::max(c1.k, c2.k)};
    for (std::size_t i = 0; i < c1.color.size(); ++i) {
        int col = c1.color[i];
        if (col == at1)
            col = at2;
        else if (col == at2)
            col = at1;
        out.color[split.d1.to_parent[i]] = col;
    }
    for (std::size_t i = 0; i < c2.color.size(); ++i)
        out.color[step.to_original[i]] = c2.color[i];
    return out;
}

} // namespace mader
