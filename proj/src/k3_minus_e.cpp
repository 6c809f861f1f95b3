#include "mader/extractors.hpp"

#include "mader/errors.hpp"
#include "mader/menger.hpp"

#include <algorithm>
#include <array>

namespace mader {

SubdivisionEmbedding extract_k3_minus_e(const Digraph& d)
{
    if (!dichromatic_at_least(d, 3))
        throw PreconditionError("extract_k3_minus_e: dichromatic number below 3");
    SubDigraph core = dicritical_subdigraph(d, 3);
    const Digraph& h = core.graph;
    auto nv = find_noncritical_vertex(h, 1);
    if (!nv)
        throw InternalError("3-dicritical digraph without a vertex keeping strong connectivity");
    const Vertex v = *nv;

    std::array<Vertex, 1> gone{v};
    SubDigraph minus = delete_vertices(h, gone);
    auto two = acyclic_coloring(minus.graph, 2);
    if (!two)
        throw InternalError("D - v of a 3-dicritical digraph is not 2-colorable");
    std::vector<int> color(h.order(), 0);
    for (std::size_t i = 0; i < minus.to_parent.size(); ++i)
        color[minus.to_parent[i]] = two->color[i];

    std::array<std::vector<Vertex>, 2> c;
    for (int i = 0; i < 2; ++i) {
        std::vector<bool> allowed(h.order());
        for (Vertex x = 0; x < h.order(); ++x)
            allowed[x] = color[x] == i + 1;
        c[i] = shortest_cycle_through(h, v, allowed);
        if (c[i].empty())
            throw InternalError("2-coloring of D - v extends to D");
    }

    std::vector<bool> blocked(h.order(), false);
    blocked[v] = true;
    std::vector<Vertex> from(c[0].begin() + 1, c[0].end());
    std::vector<Vertex> to(c[1].begin() + 1, c[1].end());
    auto p = shortest_dipath(h, from, to, blocked);
    if (p.size() < 2)
        throw InternalError("no dipath between the two extension cycles in D - v");

    std::vector<std::vector<Vertex>> paths;
    for (int i = 0; i < 2; ++i) {
        Vertex xi = i == 0 ? p.front() : p.back();
        auto at = static_cast<std::size_t>(std::find(c[i].begin(), c[i].end(), xi) - c[i].begin());
        paths.emplace_back(c[i].begin(), c[i].begin() + static_cast<std::ptrdiff_t>(at) + 1);
        std::vector<Vertex> back(c[i].begin() + static_cast<std::ptrdiff_t>(at), c[i].end());
        back.push_back(v);
        paths.push_back(std::move(back));
    }
    paths.push_back(p);
    return pull_back(assemble_embedding(k3_minus_e(), h, paths), core, d);
}

} // namespace mader
