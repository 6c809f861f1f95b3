#include "mader/digraph.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <istream>
#include <iterator>
#include <set>
#include <sstream>

namespace mader {

Digraph Digraph::build(int n, std::span<const Arc> arcs)
{
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
    Digraph d;
    d.arcs_.assign(arcs.begin(), arcs.end());
    for (const auto& a : d.arcs_) {
        if (a.tail < 0 || a.head < 0 || a.tail >= n || a.head >= n)
            throw std::invalid_argument("arc endpoint out of range: " + std::to_string(a.tail) + " "
                                        + std::to_string(a.head));
        if (a.tail == a.head)
            throw std::invalid_argument("loop at vertex " + std::to_string(a.tail));
    }
    std::sort(d.arcs_.begin(), d.arcs_.end());
    d.arcs_.erase(std::unique(d.arcs_.begin(), d.arcs_.end()), d.arcs_.end());

    d.out_.assign(n, {});
    d.in_.assign(n, {});
    for (const auto& a : d.arcs_) {
        d.out_[a.tail].push_back(a.head);
        d.in_[a.head].push_back(a.tail);
    }
    for (auto& list : d.in_)
        std::sort(list.begin(), list.end());
    if (n <= kMaxMaskOrder) {
        d.out_mask_.assign(n, 0);
        d.in_mask_.assign(n, 0);
        for (const auto& a : d.arcs_) {
            d.out_mask_[a.tail] |= VertexMask{1} << a.head;
            d.in_mask_[a.head] |= VertexMask{1} << a.tail;
        }
    }
    return d;
}

bool Digraph::has_arc(Vertex u, Vertex v) const
{
    if (u < 0 || v < 0 || u >= order() || v >= order())
        return false;
    if (fits_mask())
        return (out_mask_[u] >> v) & 1U;
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

int Digraph::min_out_degree() const
{
    int best = 0;
    for (Vertex v = 0; v < order(); ++v)
        best = v == 0 ? out_degree(v) : std::min(best, out_degree(v));
    return best;
}

int Digraph::min_in_degree() const
{
    int best = 0;
    for (Vertex v = 0; v < order(); ++v)
        best = v == 0 ? in_degree(v) : std::min(best, in_degree(v));
    return best;
}

Digraph reverse(const Digraph& d)
{
    std::vector<Arc> arcs;
    arcs.reserve(d.size());
    for (const auto& a : d.arcs())
        arcs.push_back({a.head, a.tail});
    return Digraph::build(d.order(), arcs);
}

SubDigraph induced(const Digraph& d, std::span<const Vertex> vertices)
{
    std::vector<Vertex> keep(vertices.begin(), vertices.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<Vertex> index(d.order(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= d.order())
            throw std::invalid_argument("induced: vertex " + std::to_string(keep[i]) + " not in digraph");
        index[keep[i]] = static_cast<Vertex>(i);
    }
    std::vector<Arc> arcs;
    for (const auto& a : d.arcs())
        if (index[a.tail] >= 0 && index[a.head] >= 0)
            arcs.push_back({index[a.tail], index[a.head]});
    return {Digraph::build(static_cast<int>(keep.size()), arcs), std::move(keep)};
}

SubDigraph delete_vertices(const Digraph& d, std::span<const Vertex> vertices)
{
    std::vector<bool> gone(d.order(), false);
    for (Vertex v : vertices) {
        if (v < 0 || v >= d.order())
            throw std::invalid_argument("delete_vertices: vertex out of range");
        gone[v] = true;
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < d.order(); ++v)
        if (!gone[v])
            keep.push_back(v);
    return induced(d, keep);
}

Digraph delete_arcs(const Digraph& d, std::span<const Arc> arcs)
{
    std::set<Arc> gone(arcs.begin(), arcs.end());
    std::vector<Arc> kept;
    for (const auto& a : d.arcs())
        if (!gone.contains(a))
            kept.push_back(a);
    return Digraph::build(d.order(), kept);
}

Digraph add_arcs(const Digraph& d, std::span<const Arc> arcs)
{
    std::vector<Arc> all = d.arcs();
    all.insert(all.end(), arcs.begin(), arcs.end());
    return Digraph::build(d.order(), all);
}

std::vector<std::vector<Vertex>> strong_components(const Digraph& d)
{
    // Iterative Tarjan. Components pop in reverse topological order.
    const int n = d.order();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::vector<std::vector<Vertex>> comps;
    int counter = 0;

    struct Frame {
        Vertex v;
        std::size_t next;
    };
    std::vector<Frame> call;
    for (Vertex root = 0; root < n; ++root) {
        if (index[root] >= 0)
            continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            auto outs = d.out_neighbors(f.v);
            if (f.next < outs.size()) {
                Vertex w = outs[f.next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            Vertex v = f.v;
            call.pop_back();
            if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<Vertex> comp;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }
    std::reverse(comps.begin(), comps.end());
    return comps;
}

bool is_strongly_connected(const Digraph& d)
{
    return d.order() > 0 && strong_components(d).size() == 1;
}

std::vector<std::vector<Vertex>> weak_components(const Digraph& d)
{
    const int n = d.order();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> result;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        std::vector<Vertex> members{s};
        comp[s] = static_cast<int>(result.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            Vertex v = members[i];
            for (auto list : {d.out_neighbors(v), d.in_neighbors(v)})
                for (Vertex w : list)
                    if (comp[w] < 0) {
                        comp[w] = comp[s];
                        members.push_back(w);
                    }
        }
        std::sort(members.begin(), members.end());
        result.push_back(std::move(members));
    }
    return result;
}

bool is_weakly_connected(const Digraph& d)
{
    return d.order() > 0 && weak_components(d).size() == 1;
}

std::vector<bool> reachable_from(const Digraph& d, std::span<const Vertex> sources,
                                 const std::vector<bool>& blocked)
{
    const int n = d.order();
    auto is_blocked = [&](Vertex v) { return !blocked.empty() && blocked[v]; };
    std::vector<bool> seen(n, false);
    std::vector<Vertex> queue;
    for (Vertex s : sources)
        if (!is_blocked(s) && !seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (Vertex w : d.out_neighbors(queue[i]))
            if (!seen[w] && !is_blocked(w)) {
                seen[w] = true;
                queue.push_back(w);
            }
    return seen;
}

std::vector<Vertex> shortest_dipath(const Digraph& d, std::span<const Vertex> sources,
                                    std::span<const Vertex> targets, const std::vector<bool>& blocked)
{
    const int n = d.order();
    auto is_blocked = [&](Vertex v) { return !blocked.empty() && blocked[v]; };
    std::vector<bool> target(n, false);
    for (Vertex t : targets)
        target[t] = true;
    std::vector<Vertex> src(sources.begin(), sources.end());
    std::sort(src.begin(), src.end());
    std::vector<Vertex> parent(n, -2);
    std::vector<Vertex> queue;
    for (Vertex s : src)
        if (!is_blocked(s) && parent[s] == -2) {
            parent[s] = -1;
            queue.push_back(s);
        }
    // BFS layers are scanned in id order so ties resolve to lowest ids.
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Vertex v = queue[i];
        if (target[v]) {
            std::vector<Vertex> path;
            for (Vertex x = v; x != -1; x = parent[x])
                path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (Vertex w : d.out_neighbors(v))
            if (parent[w] == -2 && !is_blocked(w)) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    return {};
}

std::vector<Edge> underlying_edges(const Digraph& d)
{
    std::vector<Edge> edges;
    for (const auto& a : d.arcs()) {
        Edge e{std::min(a.tail, a.head), std::max(a.tail, a.head)};
        if (a.tail < a.head || !d.has_arc(a.head, a.tail))
            edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<Block> blocks(const Digraph& d)
{
    const int n = d.order();
    auto edges = underlying_edges(d);
    std::vector<std::vector<std::pair<Vertex, int>>> adj(n);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        adj[edges[i].a].push_back({edges[i].b, i});
        adj[edges[i].b].push_back({edges[i].a, i});
    }
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> edge_stack;
    std::vector<Block> result;
    int timer = 0;

    auto emit = [&](int until_edge) {
        Block b;
        int e;
        do {
            e = edge_stack.back();
            edge_stack.pop_back();
            b.edges.push_back(edges[e]);
            b.vertices.push_back(edges[e].a);
            b.vertices.push_back(edges[e].b);
        } while (e != until_edge);
        std::sort(b.edges.begin(), b.edges.end());
        std::sort(b.vertices.begin(), b.vertices.end());
        b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
        if (b.edges.size() == 1)
            b.kind = BlockKind::BridgeEdge;
        else if (b.edges.size() == b.vertices.size())
            b.kind = BlockKind::Cycle;
        else
            b.kind = BlockKind::Other;
        result.push_back(std::move(b));
    };

    struct Frame {
        Vertex v;
        int parent_edge;
        std::size_t next;
    };
    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] >= 0)
            continue;
        std::vector<Frame> call{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.next < adj[f.v].size()) {
                auto [w, e] = adj[f.v][f.next++];
                if (e == f.parent_edge)
                    continue;
                if (disc[w] < 0) {
                    edge_stack.push_back(e);
                    disc[w] = low[w] = timer++;
                    call.push_back({w, e, 0});
                } else if (disc[w] < disc[f.v]) {
                    edge_stack.push_back(e);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            Frame done = f;
            call.pop_back();
            if (call.empty())
                break;
            Vertex parent = call.back().v;
            low[parent] = std::min(low[parent], low[done.v]);
            if (low[done.v] >= disc[parent])
                emit(done.parent_edge);
        }
    }
    std::sort(result.begin(), result.end(),
              [](const Block& x, const Block& y) { return x.edges < y.edges; });
    return result;
}

Digraph biorient(int n, std::span<const Edge> edges)
{
    std::vector<Arc> arcs;
    for (const auto& e : edges) {
        arcs.push_back({e.a, e.b});
        arcs.push_back({e.b, e.a});
    }
    return Digraph::build(n, arcs);
}

ParseError::ParseError(int line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what)
    , line(line_no)
{
}

namespace {

bool parse_int(std::string_view token, long long& out)
{
    if (token.empty())
        return false;
    long long value = 0;
    std::size_t i = 0;
    bool negative = false;
    if (token[0] == '-') {
        negative = true;
        i = 1;
        if (token.size() == 1)
            return false;
    }
    for (; i < token.size(); ++i) {
        if (token[i] < '0' || token[i] > '9')
            return false;
        value = value * 10 + (token[i] - '0');
        if (value > (1LL << 40))
            return false;
    }
    out = negative ? -value : value;
    return true;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

} // namespace

Digraph parse_digraph(std::string_view text)
{
    int line_no = 0;
    long long n = -1;
    std::vector<Arc> arcs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].starts_with('#'))
            continue;
        if (n < 0) {
            if (tokens.size() != 1 || !parse_int(tokens[0], n) || n < 0)
                throw ParseError(line_no, "expected vertex count");
            continue;
        }
        long long u = 0, v = 0;
        if (tokens.size() != 2 || !parse_int(tokens[0], u) || !parse_int(tokens[1], v))
            throw ParseError(line_no, "expected \"u v\" arc line");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError(line_no, "arc endpoint out of range");
        if (u == v)
            throw ParseError(line_no, "loop arc");
        arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (n < 0)
        throw ParseError(line_no, "missing vertex count");
    return Digraph::build(static_cast<int>(n), arcs);
}

Digraph read_digraph(std::istream& in)
{
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_digraph(text);
}

std::string format_digraph(const Digraph& d)
{
    std::string out = std::to_string(d.order()) + "\n";
    for (const auto& a : d.arcs())
        out += std::to_string(a.tail) + " " + std::to_string(a.head) + "\n";
    return out;
}

std::string format_dot(const Digraph& d, std::string_view name)
{
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (Vertex v = 0; v < d.order(); ++v)
        os << "  " << v << ";\n";
    for (const auto& a : d.arcs())
        os << "  " << a.tail << " -> " << a.head << ";\n";
    os << "}\n";
    return os.str();
}

std::string digraph_hash(const Digraph& d)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : format_digraph(d)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace mader
