#pragma once

// Brute-force reference implementations used only by the tests. They share
// nothing with the library beyond the Digraph container and weak components.

#include "mader/digraph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using mader::Arc;
using mader::Digraph;
using mader::Edge;
using mader::Vertex;

// Kahn on the vertices of `keep`.
inline bool acyclic_on(const Digraph& d, const std::vector<Vertex>& keep)
{
    std::vector<char> in(d.order(), 0);
    for (Vertex v : keep)
        in[v] = 1;
    std::vector<int> indeg(d.order(), 0);
    for (const auto& a : d.arcs())
        if (in[a.tail] && in[a.head])
            ++indeg[a.head];
    std::vector<Vertex> stack;
    for (Vertex v : keep)
        if (indeg[v] == 0)
            stack.push_back(v);
    std::size_t seen = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++seen;
        for (Vertex w : d.out_neighbors(v))
            if (in[w] && --indeg[w] == 0)
                stack.push_back(w);
    }
    return seen == keep.size();
}

inline bool coloring_acyclic(const Digraph& d, const std::vector<int>& color)
{
    int k = 0;
    for (int c : color)
        k = std::max(k, c);
    for (int c = 0; c <= k; ++c) {
        std::vector<Vertex> cls;
        for (Vertex v = 0; v < d.order(); ++v)
            if (color[v] == c)
                cls.push_back(v);
        if (!acyclic_on(d, cls))
            return false;
    }
    return true;
}

// Minimum number of blocks over all set partitions (restricted growth strings).
inline int dichromatic(const Digraph& d)
{
    const int n = d.order();
    if (n == 0)
        return 0;
    int best = n;
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (blocks >= best)
            return;
        if (i == n) {
            if (coloring_acyclic(d, rgs))
                best = blocks;
            return;
        }
        for (int c = 0; c <= blocks; ++c) {
            rgs[i] = c;
            rec(i + 1, std::max(blocks, c + 1));
        }
    };
    rec(0, 0);
    return best;
}

inline int chromatic(int n, const std::vector<Edge>& edges)
{
    if (n == 0)
        return 0;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (int k = 1; k <= n; ++k) {
        std::vector<int> col(n, -1);
        std::function<bool(int)> rec = [&](int v) {
            if (v == n)
                return true;
            for (int c = 0; c < k; ++c) {
                bool ok = true;
                for (int w : adj[v])
                    if (col[w] == c)
                        ok = false;
                if (!ok)
                    continue;
                col[v] = c;
                if (rec(v + 1))
                    return true;
                col[v] = -1;
            }
            return false;
        };
        if (rec(0))
            return k;
    }
    return n;
}

inline bool has_path_avoiding(const Digraph& d, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                              std::uint32_t removed)
{
    std::vector<char> seen(d.order(), 0);
    std::vector<Vertex> stack;
    for (Vertex v : a)
        if (!(removed >> v & 1U) && !seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : d.out_neighbors(v))
            if (!(removed >> w & 1U) && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    for (Vertex v : b)
        if (seen[v])
            return true;
    return false;
}

// Smallest vertex set (A and B vertices allowed) meeting every A-B dipath.
inline int min_separator(const Digraph& d, const std::vector<Vertex>& a, const std::vector<Vertex>& b)
{
    const int n = d.order();
    int best = n;
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
        int size = __builtin_popcount(s);
        if (size < best && !has_path_avoiding(d, a, b, s))
            best = size;
    }
    return best;
}

inline bool strongly_connected_without(const Digraph& d, std::uint32_t removed)
{
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < d.order(); ++v)
        if (!(removed >> v & 1U))
            rest.push_back(v);
    if (rest.empty())
        return false;
    for (Vertex v : rest)
        if (!has_path_avoiding(d, {rest[0]}, {v}, removed) || !has_path_avoiding(d, {v}, {rest[0]}, removed))
            return false;
    return true;
}

inline bool strongly_k_connected(const Digraph& d, int k)
{
    for (std::uint32_t s = 0; s < (1U << d.order()); ++s)
        if (__builtin_popcount(s) <= k - 1 && !strongly_connected_without(d, s))
            return false;
    return true;
}

// Is `small` (on m vertices) a spanning subdigraph of `big` (on m vertices)
// under some bijection?
inline bool spanning_subdigraph(const Digraph& small, const Digraph& big)
{
    const int m = small.order();
    if (big.order() != m || small.size() > big.size())
        return false;
    std::vector<Vertex> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& a : small.arcs())
            if (!big.has_arc(perm[a.tail], perm[a.head])) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// All maximal octi on exactly n vertices: K1 plus ears, written out from the
// definition (anchor <-> v1 digon, path arcs by orientation, one closing arc
// between the anchor and vk).
inline std::vector<Digraph> maximal_octi(int n)
{
    std::set<std::vector<Arc>> seen;
    std::vector<Digraph> out;
    std::function<void(int, std::vector<Arc>)> grow = [&](int have, std::vector<Arc> arcs) {
        if (have == n) {
            std::sort(arcs.begin(), arcs.end());
            arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
            if (seen.insert(arcs).second)
                out.push_back(Digraph::build(n, arcs));
            return;
        }
        for (Vertex anchor = 0; anchor < have; ++anchor)
            for (int k = 1; have + k <= n; ++k)
                for (std::uint32_t bits = 0; bits < (1U << (k - 1)); ++bits)
                    for (int closing = 0; closing < 2; ++closing) {
                        std::vector<Arc> next = arcs;
                        const Vertex v1 = have;
                        const Vertex vk = have + k - 1;
                        next.push_back({anchor, v1});
                        next.push_back({v1, anchor});
                        for (int i = 0; i + 1 < k; ++i) {
                            if (bits >> i & 1U)
                                next.push_back({have + i, have + i + 1});
                            else
                                next.push_back({have + i + 1, have + i});
                        }
                        if (closing)
                            next.push_back({anchor, vk});
                        else
                            next.push_back({vk, anchor});
                        grow(have + k, next);
                    }
    };
    if (n >= 1)
        grow(1, {});
    return out;
}

// Octus membership for small digraphs: every weak component must be a
// spanning subdigraph of a maximal octus of the same order.
inline bool is_octus(const Digraph& d)
{
    for (const auto& comp : mader::weak_components(d)) {
        if (comp.size() == 1)
            continue;
        Digraph c = mader::induced(d, comp).graph;
        bool found = false;
        for (const auto& m : maximal_octi(c.order()))
            if (spanning_subdigraph(c, m)) {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

} // namespace oracle
