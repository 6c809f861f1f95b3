#pragma once

#include "mader/digraph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mader {

struct PathSystem {
    std::vector<std::vector<Vertex>> paths;
};

/// No dipath from the source side to the target side survives in D - cut.
/// `side` is the set reachable from the sources in D - cut.
struct SeparatorCertificate {
    std::vector<Vertex> cut;
    std::vector<Vertex> side;
};

struct DisjointPaths {
    PathSystem system;
    SeparatorCertificate separator; // |cut| == number of paths
};

/// Maximum family of pairwise vertex-disjoint A-B dipaths, each meeting
/// A only in its first vertex and B only in its last (a single vertex of
/// A and B counts as a path), with a minimum A-B vertex cut. Paths are
/// ordered by their first vertex after the start (the start itself for
/// one-vertex paths).
DisjointPaths disjoint_paths(const Digraph& d, std::span<const Vertex> a, std::span<const Vertex> b);

struct FanResult {
    std::optional<PathSystem> fan;            // k v-A dipaths meeting only in v
    std::optional<SeparatorCertificate> cut;  // |cut| < k, no v-A dipath in D - cut
};

FanResult vertex_fan(const Digraph& d, Vertex v, std::span<const Vertex> a, int k);

/// D - K strongly connected for every K with |K| <= k-1. The empty digraph
/// is not strongly connected, so k >= v(D)+1 always fails.
bool is_strongly_k_connected(const Digraph& d, int k);

/// Same predicate via subset enumeration and via pairwise flow, exposed so
/// the two routes can be compared.
bool is_strongly_k_connected_enumerate(const Digraph& d, int k);
bool is_strongly_k_connected_flow(const Digraph& d, int k);

/// Lowest v with D - v strongly k-connected. Throws InternalError when D
/// is strongly k-connected with min in/out-degree >= 2k and no such v exists.
std::optional<Vertex> find_noncritical_vertex(const Digraph& d, int k);

/// Checks that every path follows arcs of D and that the family meets the
/// A-B contract; used by tests and the certificate verifier.
bool is_dipath(const Digraph& d, std::span<const Vertex> path);

/// True iff no A-B dipath exists in D - cut.
bool separates(const Digraph& d, std::span<const Vertex> a, std::span<const Vertex> b,
               std::span<const Vertex> cut);

} // namespace mader
