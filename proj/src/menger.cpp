#include "mader/menger.hpp"

#include "mader/errors.hpp"

#include <algorithm>

namespace mader {

namespace {

// Unit-capacity flow on the split digraph: v_in = 2v, v_out = 2v+1,
// source = 2n, sink = 2n+1. Terminal arcs are uncapacitated so every
// minimum cut consists of vertex arcs.
class SplitFlow {
public:
    SplitFlow(const Digraph& d, const std::vector<bool>& is_a, const std::vector<bool>& is_b)
        : n_(d.order()), adj_(2 * n_ + 2)
    {
        for (Vertex v = 0; v < n_; ++v) {
            add(in(v), out(v), 1);
            if (is_a[v])
                add(source(), in(v), kOpen);
            if (is_b[v])
                add(out(v), sink(), kOpen);
        }
        for (const auto& arc : d.arcs())
            add(out(arc.tail), in(arc.head), 1);
    }

    int run()
    {
        int flow = 0;
        while (augment())
            ++flow;
        return flow;
    }

    // Vertices whose in-node is residual-reachable from the source but whose
    // out-node is not: a minimum vertex cut.
    std::vector<Vertex> min_cut() const
    {
        auto seen = residual_reach();
        std::vector<Vertex> cut;
        for (Vertex v = 0; v < n_; ++v)
            if (seen[in(v)] && !seen[out(v)])
                cut.push_back(v);
        return cut;
    }

    std::vector<std::vector<Vertex>> decompose() const
    {
        std::vector<std::vector<Vertex>> paths;
        for (const auto& e : adj_[source()]) {
            if (!e.forward || e.cap == e.cap0)
                continue;
            std::vector<Vertex> path;
            int node = e.to;
            while (node != sink()) {
                Vertex v = node / 2;
                path.push_back(v);
                int next = -1;
                for (const auto& f : adj_[out(v)])
                    if (f.forward && f.cap < f.cap0) {
                        next = f.to;
                        break;
                    }
                node = next;
            }
            paths.push_back(std::move(path));
        }
        return paths;
    }

private:
    struct E {
        int to;
        int cap;
        int cap0;
        int rev;
        bool forward;
    };

    static constexpr int kOpen = 1 << 20;

    int in(Vertex v) const { return 2 * v; }
    int out(Vertex v) const { return 2 * v + 1; }
    int source() const { return 2 * n_; }
    int sink() const { return 2 * n_ + 1; }

    void add(int u, int v, int cap)
    {
        adj_[u].push_back({v, cap, cap, static_cast<int>(adj_[v].size()), true});
        adj_[v].push_back({u, 0, 0, static_cast<int>(adj_[u].size()) - 1, false});
    }

    bool augment()
    {
        std::vector<std::pair<int, int>> parent(adj_.size(), {-1, -1});
        std::vector<int> queue{source()};
        parent[source()] = {source(), -1};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int ei = 0; ei < static_cast<int>(adj_[u].size()); ++ei) {
                const auto& e = adj_[u][ei];
                if (e.cap > 0 && parent[e.to].first < 0) {
                    parent[e.to] = {u, ei};
                    queue.push_back(e.to);
                }
            }
        }
        if (parent[sink()].first < 0)
            return false;
        for (int v = sink(); v != source();) {
            auto [u, ei] = parent[v];
            auto& e = adj_[u][ei];
            e.cap -= 1;
            adj_[v][e.rev].cap += 1;
            v = u;
        }
        return true;
    }

    std::vector<bool> residual_reach() const
    {
        std::vector<bool> seen(adj_.size(), false);
        std::vector<int> stack{source()};
        seen[source()] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& e : adj_[u])
                if (e.cap > 0 && !seen[e.to]) {
                    seen[e.to] = true;
                    stack.push_back(e.to);
                }
        }
        return seen;
    }

    int n_;
    std::vector<std::vector<E>> adj_;
};

std::vector<bool> membership(int n, std::span<const Vertex> xs)
{
    std::vector<bool> m(n, false);
    for (Vertex x : xs) {
        if (x < 0 || x >= n)
            throw PreconditionError("vertex out of range");
        m[x] = true;
    }
    return m;
}

Vertex sort_key(const std::vector<Vertex>& p)
{
    return p.size() > 1 ? p[1] : p[0];
}

} // namespace

bool is_dipath(const Digraph& d, std::span<const Vertex> path)
{
    if (path.empty())
        return false;
    std::vector<bool> seen(d.order(), false);
    for (std::size_t i = 0; i < path.size(); ++i) {
        Vertex v = path[i];
        if (v < 0 || v >= d.order() || seen[v])
            return false;
        seen[v] = true;
        if (i > 0 && !d.has_arc(path[i - 1], v))
            return false;
    }
    return true;
}

bool separates(const Digraph& d, std::span<const Vertex> a, std::span<const Vertex> b, std::span<const Vertex> cut)
{
    auto blocked = membership(d.order(), cut);
    auto reach = reachable_from(d, a, blocked);
    return std::none_of(b.begin(), b.end(), [&](Vertex v) { return reach[v]; });
}

DisjointPaths disjoint_paths(const Digraph& d, std::span<const Vertex> a, std::span<const Vertex> b)
{
    if (a.empty() || b.empty())
        throw PreconditionError("disjoint_paths: A and B must be nonempty");
    const int n = d.order();
    auto is_a = membership(n, a);
    auto is_b = membership(n, b);
    SplitFlow flow(d, is_a, is_b);
    flow.run();

    DisjointPaths res;
    for (auto& raw : flow.decompose()) {
        // Keep the segment from the last A-vertex to the first B-vertex after it.
        std::size_t start = 0;
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (is_a[raw[i]])
                start = i;
        std::size_t stop = start;
        while (!is_b[raw[stop]])
            ++stop;
        res.system.paths.emplace_back(raw.begin() + static_cast<std::ptrdiff_t>(start),
                                      raw.begin() + static_cast<std::ptrdiff_t>(stop) + 1);
    }
    std::sort(res.system.paths.begin(), res.system.paths.end(), [](const auto& p, const auto& q) {
        return std::pair(sort_key(p), p) < std::pair(sort_key(q), q);
    });
    res.separator.cut = flow.min_cut();
    auto reach = reachable_from(d, a, membership(n, res.separator.cut));
    for (Vertex v = 0; v < n; ++v)
        if (reach[v])
            res.separator.side.push_back(v);
    if (res.separator.cut.size() != res.system.paths.size())
        throw InternalError("disjoint_paths: cut size differs from path count");
    return res;
}

FanResult vertex_fan(const Digraph& d, Vertex v, std::span<const Vertex> a, int k)
{
    auto is_a = membership(d.order(), a);
    if (v < 0 || v >= d.order())
        throw PreconditionError("vertex_fan: v out of range");
    if (is_a[v])
        throw PreconditionError("vertex_fan: v must not lie in A");
    FanResult res;
    if (k <= 0) {
        res.fan = PathSystem{};
        return res;
    }
    std::vector<Vertex> gone{v};
    auto rest = delete_vertices(d, gone);
    std::vector<Vertex> to_child(d.order(), -1);
    for (std::size_t i = 0; i < rest.to_parent.size(); ++i)
        to_child[rest.to_parent[i]] = static_cast<Vertex>(i);
    std::vector<Vertex> sources;
    for (Vertex w : d.out_neighbors(v))
        sources.push_back(to_child[w]);
    std::vector<Vertex> targets;
    for (Vertex t : a)
        targets.push_back(to_child[t]);
    if (sources.empty() || targets.empty()) {
        res.cut = SeparatorCertificate{{}, {v}};
        return res;
    }
    auto dp = disjoint_paths(rest.graph, sources, targets);
    if (static_cast<int>(dp.system.paths.size()) >= k) {
        PathSystem fan;
        for (int i = 0; i < k; ++i) {
            std::vector<Vertex> p{v};
            for (Vertex u : dp.system.paths[i])
                p.push_back(rest.to_parent[u]);
            fan.paths.push_back(std::move(p));
        }
        res.fan = std::move(fan);
        return res;
    }
    SeparatorCertificate cert;
    for (Vertex u : dp.separator.cut)
        cert.cut.push_back(rest.to_parent[u]);
    std::sort(cert.cut.begin(), cert.cut.end());
    std::vector<Vertex> src{v};
    auto reach = reachable_from(d, src, membership(d.order(), cert.cut));
    for (Vertex u = 0; u < d.order(); ++u)
        if (reach[u])
            cert.side.push_back(u);
    res.cut = std::move(cert);
    return res;
}

bool is_strongly_k_connected_enumerate(const Digraph& d, int k)
{
    const int n = d.order();
    if (k <= 1)
        return is_strongly_connected(d);
    if (n < k)
        return false;
    std::vector<Vertex> subset;
    // Enumerate all subsets of size <= k-1 in lexicographic order.
    auto check = [&](auto&& self, Vertex next) -> bool {
        if (!is_strongly_connected(delete_vertices(d, subset).graph))
            return false;
        if (static_cast<int>(subset.size()) == k - 1)
            return true;
        for (Vertex v = next; v < n; ++v) {
            subset.push_back(v);
            bool ok = self(self, v + 1);
            subset.pop_back();
            if (!ok)
                return false;
        }
        return true;
    };
    return check(check, 0);
}

bool is_strongly_k_connected_flow(const Digraph& d, int k)
{
    const int n = d.order();
    if (k <= 1)
        return is_strongly_connected(d);
    if (n < k || !is_strongly_connected(d))
        return false;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v || d.has_arc(u, v))
                continue;
            std::vector<Vertex> ends{u, v};
            auto rest = delete_vertices(d, ends);
            std::vector<Vertex> to_child(n, -1);
            for (std::size_t i = 0; i < rest.to_parent.size(); ++i)
                to_child[rest.to_parent[i]] = static_cast<Vertex>(i);
            std::vector<Vertex> outs;
            std::vector<Vertex> ins;
            for (Vertex w : d.out_neighbors(u))
                if (w != v)
                    outs.push_back(to_child[w]);
            for (Vertex w : d.in_neighbors(v))
                if (w != u)
                    ins.push_back(to_child[w]);
            if (outs.empty() || ins.empty())
                return false;
            if (static_cast<int>(disjoint_paths(rest.graph, outs, ins).system.paths.size()) < k)
                return false;
        }
    return true;
}

bool is_strongly_k_connected(const Digraph& d, int k)
{
    const int n = d.order();
    if (k <= 1)
        return is_strongly_connected(d);
    double subsets = 1;
    double term = 1;
    for (int s = 1; s < k && s <= n; ++s) {
        term = term * (n - s + 1) / s;
        subsets += term;
    }
    if (subsets <= 4096)
        return is_strongly_k_connected_enumerate(d, k);
    return is_strongly_k_connected_flow(d, k);
}

std::optional<Vertex> find_noncritical_vertex(const Digraph& d, int k)
{
    for (Vertex v = 0; v < d.order(); ++v) {
        std::vector<Vertex> gone{v};
        if (is_strongly_k_connected(delete_vertices(d, gone).graph, k))
            return v;
    }
    if (d.order() > 0 && d.min_out_degree() >= 2 * k && d.min_in_degree() >= 2 * k &&
        is_strongly_k_connected(d, k))
        throw InternalError("no non-critical vertex although the degree and connectivity hypotheses hold");
    return std::nullopt;
}

} // namespace mader
