#pragma once

#include "mader/digraph.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mader {

/// color[v] in 1..k. A value of 0 marks a vertex outside the colored set;
/// only minimize_preorder and kempe_switch accept such partial colorings.
struct AcyclicColoring {
    std::vector<int> color;
    int k = 0;

    friend bool operator==(const AcyclicColoring&, const AcyclicColoring&) = default;
};

/// Ok (nullopt) or a monochromatic dicycle as a vertex sequence
/// (the closing arc runs from the last vertex back to the first).
/// Throws PreconditionError when c is not total on V(D) or uses a color
/// outside 1..k.
std::optional<std::vector<Vertex>> check_acyclic(const Digraph& d, const AcyclicColoring& c);

/// Some dicycle of d, or nullopt if d is acyclic.
std::optional<std::vector<Vertex>> find_dicycle(const Digraph& d);
bool is_acyclic(const Digraph& d);

/// Shortest dicycle through v whose other vertices all lie in `allowed`,
/// lowest ids preferred. Returned as v, a1, ..., am. Empty if none.
std::vector<Vertex> shortest_cycle_through(const Digraph& d, Vertex v, const std::vector<bool>& allowed);

struct DichromaticResult {
    int k = 0;
    AcyclicColoring coloring;
};

/// Exact dichromatic number with a deterministic optimal coloring (the
/// lexicographically first one per strong component).
DichromaticResult dichromatic_number(const Digraph& d);

/// An acyclic coloring with at most k colors (coloring.k == k), or nullopt.
std::optional<AcyclicColoring> acyclic_coloring(const Digraph& d, int k);

/// chi(D) >= k, decided without computing chi exactly.
bool dichromatic_at_least(const Digraph& d, int k);

/// Greedy vertex-then-arc deletion down to a k-dicritical subdigraph.
/// Throws PreconditionError if chi(D) < k and InternalError if the result
/// violates the minimum-degree or strong-connectivity guarantees.
SubDigraph dicritical_subdigraph(const Digraph& d, int k);

/// Swaps colors i and j on X, which must be the vertex set of a strong
/// component of D[c^-1({i,j})].
AcyclicColoring kempe_switch(const Digraph& d, const AcyclicColoring& c, int i, int j,
                             std::span<const Vertex> x);

/// v(c): entry i-1 counts the out-neighbors of x0 with color i.
std::vector<int> color_vector(const Digraph& d, const AcyclicColoring& c, Vertex x0);

/// For all i<j and x in N+(x0) with color i, the strong component of x in
/// D[c^-1({i,j})] contains an out-neighbor of x0 with color j.
bool is_switch_minimal(const Digraph& d, const AcyclicColoring& c, Vertex x0);

/// Kempe-switches until is_switch_minimal holds. c may be partial (color 0
/// outside the colored set Y1); x0 must be uncolored.
AcyclicColoring minimize_preorder(const Digraph& d, const AcyclicColoring& c, Vertex x0);

/// Sorted vertex set of the strong component of D[c^-1({i,j})] holding x.
std::vector<Vertex> bicolored_component(const Digraph& d, const AcyclicColoring& c, int i, int j, Vertex x);

/// "v c" lines sorted by v.
std::string format_coloring(const AcyclicColoring& c);

/// Parses the coloring format for a digraph with n vertices; k is the
/// largest color used. Throws ParseError.
AcyclicColoring parse_coloring(std::string_view text, int n);

} // namespace mader
