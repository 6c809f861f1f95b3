#include "mader/subdivision.hpp"

#include "mader/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace mader {

std::optional<std::string> verify_embedding(const SubdivisionEmbedding& e)
{
    const Digraph& f = e.pattern;
    const Digraph& d = e.host;
    if (static_cast<int>(e.branch.size()) != f.order())
        return "branch map has " + std::to_string(e.branch.size()) + " entries for " + std::to_string(f.order()) +
               " pattern vertices";
    std::vector<int> role(d.order(), -1); // pattern vertex whose branch image this is
    for (Vertex x = 0; x < f.order(); ++x) {
        Vertex b = e.branch[x];
        if (b < 0 || b >= d.order())
            return "branch image of " + std::to_string(x) + " is not a host vertex";
        if (role[b] >= 0)
            return "branch map is not injective: " + std::to_string(role[b]) + " and " + std::to_string(x) +
                   " both map to " + std::to_string(b);
        role[b] = x;
    }
    for (const auto& [arc, path] : e.paths)
        if (!f.has_arc(arc.tail, arc.head))
            return "path given for non-arc (" + std::to_string(arc.tail) + "," + std::to_string(arc.head) + ")";
    std::vector<bool> internal_used(d.order(), false);
    for (const auto& arc : f.arcs()) {
        auto it = e.paths.find(arc);
        std::string name = "(" + std::to_string(arc.tail) + "," + std::to_string(arc.head) + ")";
        if (it == e.paths.end())
            return "no path for pattern arc " + name;
        const auto& p = it->second;
        if (p.size() < 2)
            return "path for " + name + " has no arc";
        if (p.front() != e.branch[arc.tail] || p.back() != e.branch[arc.head])
            return "path for " + name + " does not join the branch images";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < 0 || p[i] >= d.order())
                return "path for " + name + " leaves the host";
            if (i > 0 && !d.has_arc(p[i - 1], p[i]))
                return "path for " + name + " uses missing arc (" + std::to_string(p[i - 1]) + "," +
                       std::to_string(p[i]) + ")";
        }
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            Vertex v = p[i];
            if (role[v] >= 0)
                return "path for " + name + " passes through branch vertex " + std::to_string(v);
            if (internal_used[v])
                return "internal vertex " + std::to_string(v) + " is shared (path for " + name + ")";
            internal_used[v] = true;
        }
    }
    return std::nullopt;
}

namespace {

VertexMask bit(Vertex v)
{
    return VertexMask{1} << v;
}

VertexMask reach_mask(const Digraph& d, Vertex s, VertexMask allowed)
{
    VertexMask reached = d.out_mask(s) & allowed;
    VertexMask frontier = reached;
    while (frontier) {
        Vertex u = std::countr_zero(frontier);
        frontier &= frontier - 1;
        VertexMask next = d.out_mask(u) & allowed & ~reached;
        reached |= next;
        frontier |= next;
    }
    return reached;
}

// s reaches t through vertices of `free` (t need not be free).
bool connects(const Digraph& d, Vertex s, Vertex t, VertexMask free)
{
    if (d.has_arc(s, t))
        return true;
    VertexMask r = reach_mask(d, s, free);
    return (r & d.in_mask(t)) != 0;
}

class Searcher {
public:
    Searcher(const Digraph& host, const Digraph& pattern, std::optional<int> cap)
        : d_(host), f_(pattern), cap_(cap), branch_(pattern.order(), -1)
    {
        order_.resize(f_.order());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
            return f_.out_degree(a) + f_.in_degree(a) > f_.out_degree(b) + f_.in_degree(b);
        });
        arcs_ = f_.arcs();
    }

    std::vector<Vertex> candidates(int depth) const
    {
        Vertex x = order_[depth];
        std::vector<Vertex> out;
        for (Vertex v = 0; v < d_.order(); ++v)
            if (d_.out_degree(v) >= f_.out_degree(x) && d_.in_degree(v) >= f_.in_degree(x))
                out.push_back(v);
        return out;
    }

    // Search with the first pattern vertex fixed to `first`.
    bool run_from(Vertex first, const std::atomic<bool>* stop)
    {
        stop_ = stop;
        branch_.assign(f_.order(), -1);
        images_ = 0;
        if (f_.order() == 0)
            return route_all();
        if (!try_assign(0, first))
            return false;
        bool ok = assign(1);
        if (!ok)
            unassign(0, first);
        return ok;
    }

    bool capped() const { return capped_; }

    SubdivisionEmbedding embedding() const
    {
        SubdivisionEmbedding e{f_, d_, branch_, {}};
        for (std::size_t i = 0; i < arcs_.size(); ++i)
            e.paths[arcs_[i]] = paths_[i];
        return e;
    }

private:
    bool stopped() const { return stop_ != nullptr && stop_->load(std::memory_order_relaxed); }

    bool try_assign(int depth, Vertex v)
    {
        Vertex x = order_[depth];
        if (images_ & bit(v))
            return false;
        branch_[x] = v;
        images_ |= bit(v);
        // Every pattern arc between assigned vertices needs a host route
        // avoiding the other branch images.
        VertexMask free = ~images_ & all_mask();
        for (Vertex w : f_.out_neighbors(x))
            if (branch_[w] >= 0 && !connects(d_, v, branch_[w], free)) {
                unassign(depth, v);
                return false;
            }
        for (Vertex w : f_.in_neighbors(x))
            if (branch_[w] >= 0 && !connects(d_, branch_[w], v, free)) {
                unassign(depth, v);
                return false;
            }
        return true;
    }

    void unassign(int depth, Vertex v)
    {
        branch_[order_[depth]] = -1;
        images_ &= ~bit(v);
    }

    VertexMask all_mask() const { return d_.order() == 64 ? ~VertexMask{0} : (bit(d_.order()) - 1); }

    bool assign(int depth)
    {
        if (stopped())
            return false;
        if (depth == f_.order())
            return route_all();
        Vertex x = order_[depth];
        for (Vertex v = 0; v < d_.order(); ++v) {
            if (d_.out_degree(v) < f_.out_degree(x) || d_.in_degree(v) < f_.in_degree(x))
                continue;
            if (!try_assign(depth, v))
                continue;
            if (assign(depth + 1))
                return true;
            unassign(depth, v);
        }
        return false;
    }

    bool route_all()
    {
        paths_.assign(arcs_.size(), {});
        used_ = images_;
        return route(0);
    }

    bool remaining_feasible(std::size_t from) const
    {
        VertexMask free = ~used_ & all_mask();
        for (std::size_t i = from; i < arcs_.size(); ++i)
            if (!connects(d_, branch_[arcs_[i].tail], branch_[arcs_[i].head], free))
                return false;
        return true;
    }

    bool route(std::size_t i)
    {
        if (i == arcs_.size())
            return true;
        if (stopped())
            return false;
        Vertex s = branch_[arcs_[i].tail];
        Vertex t = branch_[arcs_[i].head];
        std::vector<Vertex> path{s};
        return extend_path(i, path, t);
    }

    bool extend_path(std::size_t i, std::vector<Vertex>& path, Vertex t)
    {
        Vertex u = path.back();
        int length = static_cast<int>(path.size()) - 1;
        if (d_.has_arc(u, t)) {
            path.push_back(t);
            paths_[i] = path;
            if (remaining_feasible(i + 1) && route(i + 1))
                return true;
            path.pop_back();
        }
        if (cap_ && length + 2 > *cap_) {
            capped_ = true;
            return false;
        }
        VertexMask free = ~used_ & all_mask();
        for (Vertex w : d_.out_neighbors(u)) {
            if (!(free & bit(w)))
                continue;
            used_ |= bit(w);
            if (connects(d_, w, t, ~used_ & all_mask())) {
                path.push_back(w);
                if (extend_path(i, path, t))
                    return true;
                path.pop_back();
            }
            used_ &= ~bit(w);
        }
        return false;
    }

    const Digraph& d_;
    const Digraph& f_;
    std::optional<int> cap_;
    std::vector<Vertex> order_;
    std::vector<Arc> arcs_;
    std::vector<Vertex> branch_;
    VertexMask images_ = 0;
    VertexMask used_ = 0;
    std::vector<std::vector<Vertex>> paths_;
    bool capped_ = false;
    const std::atomic<bool>* stop_ = nullptr;
};

} // namespace

SearchResult find_subdivision(const Digraph& host, const Digraph& pattern, const SearchOptions& options)
{
    if (!host.fits_mask())
        throw PreconditionError("find_subdivision: host exceeds " + std::to_string(kMaxMaskOrder) + " vertices");
    SearchResult res;
    if (pattern.order() > host.order() || pattern.size() > host.size()) {
        res.status = SearchStatus::None;
        return res;
    }
    if (pattern.order() == 0) {
        res.status = SearchStatus::Found;
        res.embedding = SubdivisionEmbedding{pattern, host, {}, {}};
        return res;
    }
    Searcher probe(host, pattern, options.max_path_length);
    auto firsts = probe.candidates(0);
    const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(firsts.size())));

    if (jobs == 1) {
        bool capped = false;
        for (Vertex v : firsts) {
            Searcher s(host, pattern, options.max_path_length);
            if (s.run_from(v, nullptr)) {
                res.status = SearchStatus::Found;
                res.embedding = s.embedding();
                return res;
            }
            capped = capped || s.capped();
        }
        res.status = capped ? SearchStatus::Unknown : SearchStatus::None;
        return res;
    }

    // Candidates are dealt round-robin to workers. In deterministic mode the
    // lowest successful candidate index wins, matching the sequential order.
    std::atomic<std::size_t> best{firsts.size()};
    std::atomic<bool> any_capped{false};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::vector<std::optional<SubdivisionEmbedding>> found(firsts.size());
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t idx = static_cast<std::size_t>(w); idx < firsts.size(); idx += jobs) {
                if (idx >= best.load() || stop.load())
                    return;
                Searcher s(host, pattern, options.max_path_length);
                bool ok = s.run_from(firsts[idx], options.deterministic ? nullptr : &stop);
                if (s.capped())
                    any_capped = true;
                if (ok) {
                    std::lock_guard lock(mu);
                    found[idx] = s.embedding();
                    std::size_t cur = best.load();
                    while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                    }
                    if (!options.deterministic)
                        stop = true;
                    return;
                }
            }
        });
    }
    for (auto& t : workers)
        t.join();
    if (best.load() < firsts.size()) {
        res.status = SearchStatus::Found;
        res.embedding = found[best.load()];
        return res;
    }
    res.status = any_capped ? SearchStatus::Unknown : SearchStatus::None;
    return res;
}

std::optional<SubdivisionEmbedding> find_subdivision(const Digraph& host, const Digraph& pattern)
{
    return find_subdivision(host, pattern, SearchOptions{}).embedding;
}

bool contains_subdivision(const Digraph& host, const Digraph& pattern)
{
    return find_subdivision(host, pattern).has_value();
}

SubdivisionEmbedding reverse_embedding(const SubdivisionEmbedding& e)
{
    SubdivisionEmbedding r{reverse(e.pattern), reverse(e.host), e.branch, {}};
    for (const auto& [arc, path] : e.paths)
        r.paths[Arc{arc.head, arc.tail}] = std::vector<Vertex>(path.rbegin(), path.rend());
    return r;
}

SubdivisionEmbedding pull_back(const SubdivisionEmbedding& e, const SubDigraph& sub, const Digraph& parent)
{
    SubdivisionEmbedding r{e.pattern, parent, {}, {}};
    for (Vertex b : e.branch)
        r.branch.push_back(sub.to_parent.at(b));
    for (const auto& [arc, path] : e.paths) {
        std::vector<Vertex> p;
        for (Vertex v : path)
            p.push_back(sub.to_parent.at(v));
        r.paths[arc] = std::move(p);
    }
    return r;
}

SubdivisionEmbedding relabel_pattern(const SubdivisionEmbedding& e, const Digraph& q, std::span<const Vertex> iso)
{
    SubdivisionEmbedding r{q, e.host, std::vector<Vertex>(q.order(), -1), {}};
    for (Vertex x = 0; x < e.pattern.order(); ++x)
        r.branch[iso[x]] = e.branch[x];
    for (const auto& [arc, path] : e.paths)
        r.paths[Arc{iso[arc.tail], iso[arc.head]}] = path;
    return r;
}

SubdivisionEmbedding restrict_embedding(const SubdivisionEmbedding& e, const Digraph& sub_pattern,
                                        std::span<const Vertex> into)
{
    SubdivisionEmbedding r{sub_pattern, e.host, {}, {}};
    for (Vertex x = 0; x < sub_pattern.order(); ++x)
        r.branch.push_back(e.branch[into[x]]);
    for (const auto& arc : sub_pattern.arcs()) {
        auto it = e.paths.find(Arc{into[arc.tail], into[arc.head]});
        if (it == e.paths.end())
            throw PreconditionError("restrict_embedding: arc of the subpattern missing from the pattern");
        r.paths[arc] = it->second;
    }
    return r;
}

std::vector<Arc> embedding_arcs(const SubdivisionEmbedding& e)
{
    std::vector<Arc> arcs;
    for (const auto& [arc, path] : e.paths)
        for (std::size_t i = 1; i < path.size(); ++i)
            arcs.push_back({path[i - 1], path[i]});
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    return arcs;
}

std::vector<Vertex> embedding_vertices(const SubdivisionEmbedding& e)
{
    std::set<Vertex> vs(e.branch.begin(), e.branch.end());
    for (const auto& [arc, path] : e.paths)
        vs.insert(path.begin(), path.end());
    return {vs.begin(), vs.end()};
}

std::optional<SubdivisionEmbedding> trace_embedding(const Digraph& pattern, const Digraph& host,
                                                    std::span<const Vertex> branch, std::span<const Arc> arcs)
{
    const int n = host.order();
    if (static_cast<int>(branch.size()) != pattern.order())
        return std::nullopt;
    std::vector<int> role(n, -1);
    for (Vertex x = 0; x < pattern.order(); ++x) {
        if (branch[x] < 0 || branch[x] >= n || role[branch[x]] >= 0)
            return std::nullopt;
        role[branch[x]] = x;
    }
    std::vector<std::vector<Vertex>> out(n);
    std::vector<int> indeg(n, 0);
    for (const auto& a : arcs) {
        if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
            return std::nullopt;
        out[a.tail].push_back(a.head);
        ++indeg[a.head];
    }
    SubdivisionEmbedding e{pattern, host, std::vector<Vertex>(branch.begin(), branch.end()), {}};
    std::size_t consumed = 0;
    for (Vertex x = 0; x < pattern.order(); ++x)
        for (Vertex w : out[branch[x]]) {
            std::vector<Vertex> path{branch[x], w};
            consumed += 1;
            while (role[path.back()] < 0) {
                Vertex u = path.back();
                if (out[u].size() != 1 || indeg[u] != 1 || path.size() > static_cast<std::size_t>(n))
                    return std::nullopt;
                path.push_back(out[u][0]);
                consumed += 1;
            }
            Arc pa{x, role[path.back()]};
            if (!pattern.has_arc(pa.tail, pa.head) || e.paths.count(pa))
                return std::nullopt;
            e.paths[pa] = std::move(path);
        }
    if (consumed != arcs.size() || static_cast<int>(e.paths.size()) != pattern.size())
        return std::nullopt;
    if (verify_embedding(e))
        return std::nullopt;
    return e;
}

} // namespace mader
