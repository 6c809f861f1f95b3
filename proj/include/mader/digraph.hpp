#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mader {

using Vertex = int;
using VertexMask = std::uint64_t;

/// Largest order accepted by the mask-based solvers.
inline constexpr int kMaxMaskOrder = 64;

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Loopless digraph on vertices 0..n-1 without parallel arcs. Digons are
/// allowed. Instances are immutable values; every transformation returns a
/// new digraph.
class Digraph {
public:
    Digraph() = default;

    /// Validates and builds. Duplicate arcs collapse; loops and endpoints
    /// outside 0..n-1 throw std::invalid_argument.
    static Digraph build(int n, std::span<const Arc> arcs);
    static Digraph build(int n, std::initializer_list<Arc> arcs)
    {
        return build(n, std::span<const Arc>(arcs.begin(), arcs.size()));
    }

    [[nodiscard]] int order() const { return static_cast<int>(out_.size()); }
    [[nodiscard]] int size() const { return static_cast<int>(arcs_.size()); }
    [[nodiscard]] bool empty() const { return out_.empty(); }

    /// Arcs in lexicographic (tail, head) order.
    [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
    [[nodiscard]] bool has_arc(Vertex u, Vertex v) const;
    [[nodiscard]] bool has_digon(Vertex u, Vertex v) const { return has_arc(u, v) && has_arc(v, u); }

    /// Sorted ascending.
    [[nodiscard]] std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }
    [[nodiscard]] std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }
    [[nodiscard]] int out_degree(Vertex v) const { return static_cast<int>(out_[v].size()); }
    [[nodiscard]] int in_degree(Vertex v) const { return static_cast<int>(in_[v].size()); }
    [[nodiscard]] int min_out_degree() const;
    [[nodiscard]] int min_in_degree() const;

    /// Only meaningful when order() <= kMaxMaskOrder.
    [[nodiscard]] VertexMask out_mask(Vertex v) const { return out_mask_[v]; }
    [[nodiscard]] VertexMask in_mask(Vertex v) const { return in_mask_[v]; }
    [[nodiscard]] bool fits_mask() const { return order() <= kMaxMaskOrder; }

    friend bool operator==(const Digraph& a, const Digraph& b)
    {
        return a.order() == b.order() && a.arcs_ == b.arcs_;
    }

private:
    std::vector<Arc> arcs_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::vector<VertexMask> out_mask_;
    std::vector<VertexMask> in_mask_;
};

/// A derived digraph together with the map from its dense ids back to the
/// ids of the digraph it was derived from.
struct SubDigraph {
    Digraph graph;
    std::vector<Vertex> to_parent;
};

Digraph reverse(const Digraph& d);

/// D[X]. Vertices of the result are numbered in ascending order of X.
SubDigraph induced(const Digraph& d, std::span<const Vertex> vertices);
SubDigraph delete_vertices(const Digraph& d, std::span<const Vertex> vertices);
Digraph delete_arcs(const Digraph& d, std::span<const Arc> arcs);
Digraph add_arcs(const Digraph& d, std::span<const Arc> arcs);

/// Strong components in a topological order of the condensation: no arc
/// runs from a later component to an earlier one. Each component is sorted.
std::vector<std::vector<Vertex>> strong_components(const Digraph& d);
bool is_strongly_connected(const Digraph& d);
bool is_weakly_connected(const Digraph& d);
std::vector<std::vector<Vertex>> weak_components(const Digraph& d);

/// Vertices reachable from `sources` by dipaths avoiding `blocked`.
std::vector<bool> reachable_from(const Digraph& d, std::span<const Vertex> sources,
                                 const std::vector<bool>& blocked = {});

/// Shortest dipath from any source to any target avoiding `blocked`,
/// lowest ids preferred on ties. Empty when none exists.
std::vector<Vertex> shortest_dipath(const Digraph& d, std::span<const Vertex> sources,
                                    std::span<const Vertex> targets,
                                    const std::vector<bool>& blocked = {});

enum class BlockKind { BridgeEdge, Cycle, Other };

struct Edge {
    Vertex a = 0;
    Vertex b = 0; // a < b
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Block {
    BlockKind kind = BlockKind::Other;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

/// Underlying simple undirected graph: one edge per adjacent pair.
std::vector<Edge> underlying_edges(const Digraph& d);

/// Biconnected blocks of the underlying simple graph. Isolated vertices
/// belong to no block.
std::vector<Block> blocks(const Digraph& d);

/// Biorientation of an undirected graph on n vertices.
Digraph biorient(int n, std::span<const Edge> edges);

// Text format: line 1 is n, then one "u v" line per arc. '#' starts a
// comment line. Parse errors throw ParseError carrying the line number.
struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what);
    int line;
};

Digraph parse_digraph(std::string_view text);
Digraph read_digraph(std::istream& in);
std::string format_digraph(const Digraph& d);
std::string format_dot(const Digraph& d, std::string_view name = "D");

/// FNV-1a over the text serialization; stable across platforms.
std::string digraph_hash(const Digraph& d);

} // namespace mader
