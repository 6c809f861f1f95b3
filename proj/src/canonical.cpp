#include "mader/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace mader {

namespace {

std::uint64_t code_under(const Digraph& d, const std::vector<Vertex>& at)
{
    // at[p] = vertex placed at position p
    const int n = d.order();
    std::uint64_t code = 0;
    for (int p = 0; p < n; ++p) {
        VertexMask out_p = d.out_mask(at[p]);
        for (int q = p + 1; q < n; ++q) {
            code = (code << 1) | ((out_p >> at[q]) & 1U);
            code = (code << 1) | ((d.out_mask(at[q]) >> at[p]) & 1U);
        }
    }
    return code;
}

template <typename Visit>
void for_each_cell_ordering(std::vector<Vertex>& at, const std::vector<std::pair<int, int>>& cells,
                            std::size_t cell, Visit&& visit)
{
    if (cell == cells.size()) {
        visit(at);
        return;
    }
    auto [lo, hi] = cells[cell];
    auto first = at.begin() + lo;
    auto last = at.begin() + hi;
    std::sort(first, last);
    do {
        for_each_cell_ordering(at, cells, cell + 1, visit);
    } while (std::next_permutation(first, last));
}

std::pair<std::uint64_t, std::vector<Vertex>> canonical_search(const Digraph& d)
{
    const int n = d.order();
    if (n > kMaxCanonicalOrder)
        throw std::invalid_argument("canonical_code: order exceeds " + std::to_string(kMaxCanonicalOrder));
    auto cls = refined_classes(d);
    std::vector<Vertex> at(n);
    std::iota(at.begin(), at.end(), 0);
    std::stable_sort(at.begin(), at.end(), [&](Vertex a, Vertex b) { return cls[a] < cls[b]; });
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && cls[at[j]] == cls[at[i]])
            ++j;
        if (j - i > 1)
            cells.push_back({i, j});
        i = j;
    }
    std::uint64_t best = 0;
    std::vector<Vertex> best_at = at;
    bool first = true;
    for_each_cell_ordering(at, cells, 0, [&](const std::vector<Vertex>& order) {
        auto c = code_under(d, order);
        if (first || c > best) {
            best = c;
            best_at = order;
            first = false;
        }
    });
    return {best, best_at};
}

} // namespace

std::uint64_t adjacency_code(const Digraph& d)
{
    if (d.order() > kMaxCanonicalOrder)
        throw std::invalid_argument("adjacency_code: order too large");
    std::vector<Vertex> id(d.order());
    std::iota(id.begin(), id.end(), 0);
    return code_under(d, id);
}

std::vector<int> refined_classes(const Digraph& d)
{
    const int n = d.order();
    std::vector<int> cls(n, 0);
    {
        std::map<std::tuple<int, int, int>, int> rank;
        std::vector<std::tuple<int, int, int>> sig(n);
        for (Vertex v = 0; v < n; ++v) {
            int digons = 0;
            for (Vertex w : d.out_neighbors(v))
                digons += d.has_arc(w, v) ? 1 : 0;
            sig[v] = {d.out_degree(v), d.in_degree(v), digons};
            rank[sig[v]] = 0;
        }
        int r = 0;
        for (auto& [k, val] : rank)
            val = r++;
        for (Vertex v = 0; v < n; ++v)
            cls[v] = rank[sig[v]];
    }
    for (;;) {
        using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
        std::vector<Sig> sig(n);
        std::map<Sig, int> rank;
        for (Vertex v = 0; v < n; ++v) {
            std::vector<int> outs, ins;
            for (Vertex w : d.out_neighbors(v))
                outs.push_back(cls[w]);
            for (Vertex w : d.in_neighbors(v))
                ins.push_back(cls[w]);
            std::sort(outs.begin(), outs.end());
            std::sort(ins.begin(), ins.end());
            sig[v] = {cls[v], std::move(outs), std::move(ins)};
            rank[sig[v]] = 0;
        }
        int r = 0;
        for (auto& [k, val] : rank)
            val = r++;
        std::vector<int> next(n);
        for (Vertex v = 0; v < n; ++v)
            next[v] = rank[sig[v]];
        int before = n == 0 ? 0 : *std::max_element(cls.begin(), cls.end());
        int after = n == 0 ? 0 : *std::max_element(next.begin(), next.end());
        cls = std::move(next);
        if (after == before)
            return cls;
    }
}

std::uint64_t canonical_code(const Digraph& d)
{
    return canonical_search(d).first;
}

Digraph canonical_form(const Digraph& d)
{
    auto [code, at] = canonical_search(d);
    std::vector<Vertex> pos(d.order());
    for (int p = 0; p < d.order(); ++p)
        pos[at[p]] = p;
    std::vector<Arc> arcs;
    for (const auto& a : d.arcs())
        arcs.push_back({pos[a.tail], pos[a.head]});
    return Digraph::build(d.order(), arcs);
}

Digraph from_adjacency_code(int n, std::uint64_t code)
{
    std::vector<Arc> arcs;
    int bit = n * (n - 1) - 1;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            if ((code >> bit) & 1U)
                arcs.push_back({p, q});
            --bit;
            if ((code >> bit) & 1U)
                arcs.push_back({q, p});
            --bit;
        }
    return Digraph::build(n, arcs);
}

std::optional<std::vector<Vertex>> find_isomorphism(const Digraph& a, const Digraph& b)
{
    const int n = a.order();
    if (n != b.order() || a.size() != b.size())
        return std::nullopt;
    // Class labels are only comparable when the refinement signatures agree,
    // so refine the disjoint union instead.
    std::vector<Arc> both = a.arcs();
    for (const auto& arc : b.arcs())
        both.push_back({arc.tail + n, arc.head + n});
    auto joint = refined_classes(Digraph::build(2 * n, both));
    std::vector<Vertex> map(n, -1);
    std::vector<bool> used(n, false);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);

    auto consistent = [&](Vertex u, Vertex x) {
        if (joint[u] != joint[x + n])
            return false;
        for (Vertex w = 0; w < n; ++w) {
            if (map[w] < 0)
                continue;
            if (a.has_arc(u, w) != b.has_arc(x, map[w]) || a.has_arc(w, u) != b.has_arc(map[w], x))
                return false;
        }
        return true;
    };
    std::function<bool(int)> extend = [&](int i) {
        if (i == n)
            return true;
        Vertex u = order[i];
        for (Vertex x = 0; x < n; ++x) {
            if (used[x] || !consistent(u, x))
                continue;
            map[u] = x;
            used[x] = true;
            if (extend(i + 1))
                return true;
            map[u] = -1;
            used[x] = false;
        }
        return false;
    };
    if (!extend(0))
        return std::nullopt;
    return map;
}

bool is_max_labeling(const Digraph& d)
{
    const int n = d.order();
    if (n > kMaxCanonicalOrder)
        throw std::invalid_argument("is_max_labeling: order too large");
    std::vector<Vertex> at(n);
    std::iota(at.begin(), at.end(), 0);
    const std::uint64_t own = code_under(d, at);
    while (std::next_permutation(at.begin(), at.end()))
        if (code_under(d, at) > own)
            return false;
    return true;
}

bool are_isomorphic(const Digraph& a, const Digraph& b)
{
    if (a.order() != b.order() || a.size() != b.size())
        return false;
    if (a.order() <= kMaxCanonicalOrder)
        return canonical_code(a) == canonical_code(b);
    return find_isomorphism(a, b).has_value();
}

} // namespace mader
