#include "mader/octus.hpp"

#include "mader/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mader {

std::vector<Arc> EarSpec::arcs() const
{
    std::vector<Arc> out;
    if (vertices.empty())
        return out;
    out.push_back({anchor, vertices.front()});
    out.push_back({vertices.front(), anchor});
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        bool fwd = i < forward.size() ? forward[i] : true;
        out.push_back(fwd ? Arc{vertices[i], vertices[i + 1]} : Arc{vertices[i + 1], vertices[i]});
    }
    if (closing == Closing::AnchorToEnd)
        out.push_back({anchor, vertices.back()});
    else
        out.push_back({vertices.back(), anchor});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

void check_ear_shape(const EarSpec& ear)
{
    if (ear.vertices.empty())
        throw PreconditionError("ear must add at least one vertex");
    if (ear.forward.size() != ear.vertices.size() - 1)
        throw PreconditionError("ear orientation needs exactly k-1 bits");
    std::set<Vertex> distinct(ear.vertices.begin(), ear.vertices.end());
    if (distinct.size() != ear.vertices.size() || distinct.count(ear.anchor))
        throw PreconditionError("ear vertices must be distinct and differ from the anchor");
    if (*distinct.begin() < 0)
        throw PreconditionError("labels must be nonnegative");
}

struct LabeledDigraph {
    std::set<Vertex> vertices;
    std::set<Arc> arcs;

    void apply(const OctusStep& step)
    {
        switch (step.kind) {
        case OctusStep::Kind::Ear: {
            check_ear_shape(step.ear);
            if (!vertices.count(step.ear.anchor))
                throw PreconditionError("ear anchor " + std::to_string(step.ear.anchor) + " is not present");
            for (Vertex v : step.ear.vertices)
                if (vertices.count(v))
                    throw PreconditionError("ear vertex " + std::to_string(v) + " is not fresh");
            vertices.insert(step.ear.vertices.begin(), step.ear.vertices.end());
            for (const auto& a : step.ear.arcs())
                arcs.insert(a);
            break;
        }
        case OctusStep::Kind::DeleteVertex: {
            if (!vertices.erase(step.vertex))
                throw PreconditionError("deleted vertex " + std::to_string(step.vertex) + " is not present");
            for (auto it = arcs.begin(); it != arcs.end();)
                it = (it->tail == step.vertex || it->head == step.vertex) ? arcs.erase(it) : std::next(it);
            break;
        }
        case OctusStep::Kind::DeleteArc:
            if (!arcs.erase(step.arc))
                throw PreconditionError("deleted arc is not present");
            break;
        }
    }

    Replay to_replay() const
    {
        Replay r;
        r.labels.assign(vertices.begin(), vertices.end());
        std::map<Vertex, Vertex> index;
        for (std::size_t i = 0; i < r.labels.size(); ++i)
            index[r.labels[i]] = static_cast<Vertex>(i);
        std::vector<Arc> dense;
        for (const auto& a : arcs)
            dense.push_back({index.at(a.tail), index.at(a.head)});
        r.graph = Digraph::build(static_cast<int>(r.labels.size()), dense);
        return r;
    }
};

LabeledDigraph run(const OctusHistory& h)
{
    if (h.root < 0)
        throw PreconditionError("labels must be nonnegative");
    LabeledDigraph g;
    g.vertices.insert(h.root);
    for (const auto& s : h.steps)
        g.apply(s);
    return g;
}

OctusStep ear_step(EarSpec ear)
{
    OctusStep s;
    s.kind = OctusStep::Kind::Ear;
    s.ear = std::move(ear);
    return s;
}

OctusStep delete_arc_step(Arc a)
{
    OctusStep s;
    s.kind = OctusStep::Kind::DeleteArc;
    s.arc = a;
    return s;
}

OctusStep delete_vertex_step(Vertex v)
{
    OctusStep s;
    s.kind = OctusStep::Kind::DeleteVertex;
    s.vertex = v;
    return s;
}

EarSpec digon_ear(Vertex anchor, Vertex v)
{
    return EarSpec{anchor, {v}, {}, Closing::AnchorToEnd};
}

// Cyclic order of a cycle block starting at `start`.
std::vector<Vertex> cycle_order(const Block& b, Vertex start)
{
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const auto& e : b.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<Vertex> order{start};
    Vertex prev = -1;
    Vertex cur = start;
    while (true) {
        const auto& nb = adj.at(cur);
        Vertex next = nb[0] != prev ? nb[0] : nb[1];
        if (prev == -1)
            next = std::min(nb[0], nb[1]);
        if (next == start)
            break;
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

// Ear-only derivation of a maximal octus M on V(comp) with D[comp] a
// spanning subdigraph of M, or nullopt when no root works.
std::optional<OctusHistory> component_history(const Digraph& d, const std::vector<Vertex>& comp,
                                              const std::vector<Block>& all_blocks)
{
    const int n = d.order();
    std::vector<bool> in_comp(n, false);
    for (Vertex v : comp)
        in_comp[v] = true;
    std::vector<const Block*> bl;
    for (const auto& b : all_blocks)
        if (in_comp[b.vertices.front()])
            bl.push_back(&b);

    // Underlying adjacency for "which side of block B" computations.
    std::vector<std::vector<Vertex>> adj(n);
    for (const auto& b : bl)
        for (const auto& e : b->edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }

    std::vector<bool> candidate(n, false);
    for (Vertex v : comp)
        candidate[v] = true;
    for (const auto* b : bl) {
        if (b->kind == BlockKind::Other)
            return std::nullopt;
        if (b->kind != BlockKind::Cycle)
            continue;
        std::vector<Edge> digons;
        for (const auto& e : b->edges)
            if (d.has_digon(e.a, e.b))
                digons.push_back(e);
        if (digons.size() > 1)
            return std::nullopt;
        if (digons.empty())
            continue;
        // Vertices that reach B through p or q without using B's edges.
        std::set<Edge> own(b->edges.begin(), b->edges.end());
        std::vector<bool> side(n, false);
        std::vector<Vertex> stack{digons[0].a, digons[0].b};
        side[digons[0].a] = side[digons[0].b] = true;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : adj[u]) {
                if (side[w] || own.count(Edge{std::min(u, w), std::max(u, w)}))
                    continue;
                side[w] = true;
                stack.push_back(w);
            }
        }
        for (Vertex v : comp)
            candidate[v] = candidate[v] && side[v];
    }
    Vertex root = -1;
    for (Vertex v : comp)
        if (candidate[v]) {
            root = v;
            break;
        }
    if (root < 0)
        return std::nullopt;

    OctusHistory h{root, {}};
    std::vector<bool> block_done(bl.size(), false);
    std::vector<Vertex> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Vertex a = queue[qi];
        for (std::size_t bi = 0; bi < bl.size(); ++bi) {
            const Block& b = *bl[bi];
            if (block_done[bi] || !std::binary_search(b.vertices.begin(), b.vertices.end(), a))
                continue;
            block_done[bi] = true;
            if (b.kind == BlockKind::BridgeEdge) {
                Vertex other = b.edges[0].a == a ? b.edges[0].b : b.edges[0].a;
                h.steps.push_back(ear_step(digon_ear(a, other)));
                queue.push_back(other);
                continue;
            }
            auto cyc = cycle_order(b, a);
            std::vector<Vertex> path(cyc.begin() + 1, cyc.end());
            Vertex last = path.back();
            if (d.has_digon(a, last) || (!d.has_digon(a, path.front()) && last < path.front()))
                std::reverse(path.begin(), path.end());
            for (std::size_t i = 1; i < path.size(); ++i)
                if (d.has_digon(path[i - 1], path[i]))
                    return std::nullopt; // digon away from the anchor
            if (d.has_digon(a, path.back()) && path.size() > 1)
                return std::nullopt;
            EarSpec ear{a, path, {}, Closing::AnchorToEnd};
            for (std::size_t i = 0; i + 1 < path.size(); ++i)
                ear.forward.push_back(d.has_arc(path[i], path[i + 1]));
            ear.closing = d.has_arc(a, path.back()) ? Closing::AnchorToEnd : Closing::EndToAnchor;
            h.steps.push_back(ear_step(std::move(ear)));
            for (Vertex v : path)
                queue.push_back(v);
        }
    }
    return h;
}

} // namespace

bool OctusHistory::ears_only() const
{
    return std::all_of(steps.begin(), steps.end(), [](const OctusStep& s) { return s.kind == OctusStep::Kind::Ear; });
}

Digraph ear_add(const Digraph& f, const EarSpec& ear)
{
    check_ear_shape(ear);
    const int n = f.order();
    const int k = ear.length();
    if (ear.anchor < 0 || ear.anchor >= n)
        throw PreconditionError("ear anchor is not a vertex of F");
    for (Vertex v : ear.vertices)
        if (v < n || v >= n + k)
            throw PreconditionError("ear vertex " + std::to_string(v) + " is not fresh (expected ids n..n+k-1)");
    std::vector<Arc> arcs = f.arcs();
    auto extra = ear.arcs();
    arcs.insert(arcs.end(), extra.begin(), extra.end());
    return Digraph::build(n + k, arcs);
}

Replay replay(const OctusHistory& h)
{
    return run(h).to_replay();
}

std::optional<OctusHistory> is_octus(const Digraph& d)
{
    if (d.order() == 0)
        return OctusHistory{0, {delete_vertex_step(0)}};
    auto bl = blocks(d);
    auto comps = weak_components(d);
    std::vector<OctusHistory> parts;
    for (const auto& comp : comps) {
        auto h = component_history(d, comp, bl);
        if (!h)
            return std::nullopt;
        parts.push_back(std::move(*h));
    }
    OctusHistory out{parts[0].root, parts[0].steps};
    for (std::size_t i = 1; i < parts.size(); ++i) {
        // Bring the next component in through a temporary digon.
        out.steps.push_back(ear_step(digon_ear(out.root, parts[i].root)));
        out.steps.insert(out.steps.end(), parts[i].steps.begin(), parts[i].steps.end());
        out.steps.push_back(delete_arc_step({out.root, parts[i].root}));
        out.steps.push_back(delete_arc_step({parts[i].root, out.root}));
    }
    // Drop the arcs of the maximal octus that D lacks.
    auto maximal = run(out);
    for (const auto& a : maximal.arcs)
        if (!d.has_arc(a.tail, a.head))
            out.steps.push_back(delete_arc_step(a));
    auto check = replay(out);
    if (!(check.graph == d))
        throw InternalError("octus derivation does not replay to the input");
    return out;
}

OctusHistory complete_to_maximal(const OctusHistory& h)
{
    auto final_f = run(h);
    Vertex fresh = h.root;
    for (const auto& s : h.steps)
        for (Vertex v : s.ear.vertices)
            fresh = std::max(fresh, v);
    fresh += 1;

    std::map<Vertex, Vertex> phi; // current F label -> M label
    phi[h.root] = h.root;
    OctusHistory m{h.root, {}};
    std::vector<Vertex> creation{h.root};
    for (const auto& s : h.steps) {
        switch (s.kind) {
        case OctusStep::Kind::Ear: {
            EarSpec e = s.ear;
            e.anchor = phi.at(s.ear.anchor);
            for (std::size_t i = 0; i < e.vertices.size(); ++i) {
                Vertex label = fresh++;
                phi[s.ear.vertices[i]] = label;
                e.vertices[i] = label;
                creation.push_back(label);
            }
            m.steps.push_back(ear_step(std::move(e)));
            break;
        }
        case OctusStep::Kind::DeleteVertex:
            phi.erase(s.vertex);
            break;
        case OctusStep::Kind::DeleteArc:
            break;
        }
    }
    // Final relabel: F keeps its labels, the rest follow in creation order.
    std::map<Vertex, Vertex> back;
    for (const auto& [f, mm] : phi)
        back[mm] = f;
    Vertex next = final_f.vertices.empty() ? 0 : *final_f.vertices.rbegin() + 1;
    std::map<Vertex, Vertex> relabel;
    for (Vertex mm : creation)
        relabel[mm] = back.count(mm) ? back[mm] : next++;
    m.root = relabel.at(m.root);
    for (auto& s : m.steps) {
        s.ear.anchor = relabel.at(s.ear.anchor);
        for (auto& v : s.ear.vertices)
            v = relabel.at(v);
    }
    auto result = run(m);
    for (Vertex v : final_f.vertices)
        if (!result.vertices.count(v))
            throw InternalError("maximal completion lost a vertex");
    for (const auto& a : final_f.arcs)
        if (!result.arcs.count(a))
            throw InternalError("maximal completion lost an arc");
    return m;
}

OctusHistory spanning_maximal(const OctusHistory& m, std::span<const Vertex> vertices, std::span<const Arc> arcs)
{
    if (!m.ears_only())
        throw PreconditionError("spanning_maximal: M must be given by ear additions only");
    if (vertices.empty())
        throw PreconditionError("spanning_maximal: F must be nonempty");
    auto mg = run(m);
    std::set<Vertex> s(vertices.begin(), vertices.end());
    for (Vertex v : s)
        if (!mg.vertices.count(v))
            throw PreconditionError("spanning_maximal: F is not contained in M");
    for (const auto& a : arcs)
        if (!mg.arcs.count(a) || !s.count(a.tail) || !s.count(a.head))
            throw PreconditionError("spanning_maximal: F is not a subdigraph of M");
    {
        std::vector<Vertex> ids(s.begin(), s.end());
        std::vector<Arc> dense;
        for (const auto& a : arcs)
            dense.push_back({static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), a.tail) - ids.begin()),
                             static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), a.head) - ids.begin())});
        if (!is_weakly_connected(Digraph::build(static_cast<int>(ids.size()), dense)))
            throw PreconditionError("spanning_maximal: F must be connected");
    }

    std::optional<OctusHistory> out;
    std::set<Vertex> placed; // V(M_t) intersected with S
    if (s.count(m.root)) {
        out = OctusHistory{m.root, {}};
        placed.insert(m.root);
    }
    for (const auto& step : m.steps) {
        const EarSpec& e = step.ear;
        const int k = e.length();
        std::vector<int> hit;
        for (int i = 0; i < k; ++i)
            if (s.count(e.vertices[i]))
                hit.push_back(i);
        if (hit.empty())
            continue;
        if (!out) {
            // F so far lies inside this ear's path: a bioriented path spans it.
            for (std::size_t t = 1; t < hit.size(); ++t)
                if (hit[t] != hit[t - 1] + 1)
                    throw InternalError("spanning_maximal: disconnected piece inside an ear");
            out = OctusHistory{e.vertices[hit[0]], {}};
            for (std::size_t t = 1; t < hit.size(); ++t)
                out->steps.push_back(ear_step(digon_ear(e.vertices[hit[t - 1]], e.vertices[hit[t]])));
            for (int i : hit)
                placed.insert(e.vertices[i]);
            continue;
        }
        if (!placed.count(e.anchor))
            throw InternalError("spanning_maximal: ear vertices kept without their anchor");
        if (static_cast<int>(hit.size()) == k) {
            out->steps.push_back(ear_step(e));
        } else {
            int prefix = 0;
            while (prefix < k && s.count(e.vertices[prefix]))
                ++prefix;
            int suffix_start = k;
            while (suffix_start > 0 && s.count(e.vertices[suffix_start - 1]))
                --suffix_start;
            if (static_cast<int>(hit.size()) != prefix + (k - suffix_start))
                throw InternalError("spanning_maximal: kept ear vertices are not a prefix plus a suffix");
            if (prefix > 0) {
                EarSpec a{e.anchor,
                          {e.vertices.begin(), e.vertices.begin() + prefix},
                          {e.forward.begin(), e.forward.begin() + (prefix - 1)},
                          e.closing};
                out->steps.push_back(ear_step(std::move(a)));
            }
            if (suffix_start < k) {
                EarSpec b{e.anchor,
                          {e.vertices.begin() + suffix_start, e.vertices.end()},
                          {e.forward.begin() + suffix_start, e.forward.end()},
                          e.closing};
                out->steps.push_back(ear_step(std::move(b)));
            }
        }
        for (int i : hit)
            placed.insert(e.vertices[i]);
    }
    auto result = run(*out);
    if (result.vertices != s)
        throw InternalError("spanning_maximal: vertex set differs from F");
    for (const auto& a : arcs)
        if (!result.arcs.count(a))
            throw InternalError("spanning_maximal: lost an arc of F");
    return *out;
}

bool is_cactus_orientation(const Digraph& d)
{
    for (const auto& a : d.arcs())
        if (d.has_arc(a.head, a.tail))
            return false;
    for (const auto& b : blocks(d))
        if (b.kind == BlockKind::Other)
            return false;
    return true;
}

bool is_bioriented_forest(const Digraph& d)
{
    for (const auto& a : d.arcs())
        if (!d.has_arc(a.head, a.tail))
            return false;
    for (const auto& b : blocks(d))
        if (b.kind != BlockKind::BridgeEdge)
            return false;
    return true;
}

std::string format_history(const OctusHistory& h)
{
    std::ostringstream out;
    out << "ROOT " << h.root << '\n';
    for (const auto& s : h.steps) {
        switch (s.kind) {
        case OctusStep::Kind::Ear: {
            const auto& e = s.ear;
            out << "EAR " << e.anchor << ' ' << e.length() << ' '
                << (e.closing == Closing::AnchorToEnd ? "v0->vk" : "vk->v0") << ' ';
            if (e.forward.empty())
                out << '-';
            for (bool b : e.forward)
                out << (b ? '1' : '0');
            for (Vertex v : e.vertices)
                out << ' ' << v;
            out << '\n';
            break;
        }
        case OctusStep::Kind::DeleteVertex:
            out << "DELV " << s.vertex << '\n';
            break;
        case OctusStep::Kind::DeleteArc:
            out << "DELA " << s.arc.tail << ' ' << s.arc.head << '\n';
            break;
        }
    }
    return out.str();
}

OctusHistory parse_history(std::string_view text)
{
    OctusHistory h;
    bool have_root = false;
    Vertex max_label = -1;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto read_int = [&](std::istringstream& ls, const char* what) {
        long long v = 0;
        if (!(ls >> v) || v < 0 || v > 1'000'000'000)
            throw ParseError(line_no, std::string("expected nonnegative ") + what);
        return static_cast<Vertex>(v);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#')
            continue;
        if (word == "ROOT") {
            if (have_root)
                throw ParseError(line_no, "duplicate ROOT");
            h.root = read_int(ls, "root");
            max_label = std::max(max_label, h.root);
            have_root = true;
        } else {
            if (!have_root) {
                // A history may start directly with ears; K1 is then vertex 0.
                h.root = 0;
                max_label = std::max(max_label, 0);
                have_root = true;
            }
            if (word == "EAR") {
                EarSpec e;
                e.anchor = read_int(ls, "anchor");
                int k = read_int(ls, "ear length");
                if (k < 1)
                    throw ParseError(line_no, "ear length must be at least 1");
                std::string dir;
                std::string bits;
                if (!(ls >> dir >> bits))
                    throw ParseError(line_no, "expected direction and orientation bits");
                if (dir == "v0->vk")
                    e.closing = Closing::AnchorToEnd;
                else if (dir == "vk->v0")
                    e.closing = Closing::EndToAnchor;
                else
                    throw ParseError(line_no, "direction must be v0->vk or vk->v0");
                if (bits == "-")
                    bits.clear();
                if (static_cast<int>(bits.size()) != k - 1)
                    throw ParseError(line_no, "expected k-1 orientation bits");
                for (char c : bits) {
                    if (c != '0' && c != '1')
                        throw ParseError(line_no, "orientation bits must be 0 or 1");
                    e.forward.push_back(c == '1');
                }
                long long v = 0;
                while (ls >> v) {
                    if (v < 0)
                        throw ParseError(line_no, "labels must be nonnegative");
                    e.vertices.push_back(static_cast<Vertex>(v));
                }
                if (!ls.eof())
                    throw ParseError(line_no, "unexpected token");
                if (e.vertices.empty())
                    for (int i = 0; i < k; ++i)
                        e.vertices.push_back(++max_label);
                if (static_cast<int>(e.vertices.size()) != k)
                    throw ParseError(line_no, "expected k vertex labels");
                for (Vertex u : e.vertices)
                    max_label = std::max(max_label, u);
                h.steps.push_back(ear_step(std::move(e)));
            } else if (word == "DELV") {
                h.steps.push_back(delete_vertex_step(read_int(ls, "vertex")));
            } else if (word == "DELA") {
                Vertex u = read_int(ls, "tail");
                Vertex v = read_int(ls, "head");
                h.steps.push_back(delete_arc_step({u, v}));
            } else {
                throw ParseError(line_no, "unknown step '" + word + "'");
            }
        }
        std::string extra;
        if (word != "EAR" && (ls >> extra))
            throw ParseError(line_no, "trailing token '" + extra + "'");
    }
    if (!have_root)
        throw ParseError(line_no, "empty history");
    return h;
}

} // namespace mader
