#pragma once

#include "mader/digraph.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mader {

enum class Closing { AnchorToEnd, EndToAnchor };

/// Ear addition at `anchor`: the new path v1..vk (ids in `vertices`), with
/// forward[i] true iff the path arc runs vertices[i] -> vertices[i+1]; both
/// arcs between anchor and v1; and one closing arc between anchor and vk.
/// For k = 1 the closing arc coincides with the digon.
struct EarSpec {
    Vertex anchor = 0;
    std::vector<Vertex> vertices;
    std::vector<bool> forward;
    Closing closing = Closing::AnchorToEnd;

    [[nodiscard]] int length() const { return static_cast<int>(vertices.size()); }
    /// Arcs the ear adds, with the ids it carries.
    [[nodiscard]] std::vector<Arc> arcs() const;

    friend bool operator==(const EarSpec&, const EarSpec&) = default;
};

/// F plus the ear. The ear's vertices must be exactly n..n+k-1 (in any
/// order) for an F on n vertices.
Digraph ear_add(const Digraph& f, const EarSpec& ear);

struct OctusStep {
    enum class Kind { Ear, DeleteVertex, DeleteArc };
    Kind kind = Kind::Ear;
    EarSpec ear;
    Vertex vertex = 0;
    Arc arc;

    friend bool operator==(const OctusStep&, const OctusStep&) = default;
};

/// A derivation from K1 on vertex `root`. Vertices carry arbitrary
/// nonnegative labels; ear vertices must be fresh when added.
struct OctusHistory {
    Vertex root = 0;
    std::vector<OctusStep> steps;

    [[nodiscard]] bool ears_only() const;
    friend bool operator==(const OctusHistory&, const OctusHistory&) = default;
};

struct Replay {
    Digraph graph;               // vertices numbered by ascending label
    std::vector<Vertex> labels;  // labels[i] = label of vertex i
};

/// Throws PreconditionError on an invalid derivation.
Replay replay(const OctusHistory& h);

/// Structural recognizer; a positive answer is a derivation whose replay
/// equals D (labels 0..n-1 preserved).
std::optional<OctusHistory> is_octus(const Digraph& d);

/// Ear-only derivation of a maximal octus containing replay(h), with the
/// labels of replay(h) preserved; added vertices take the smallest labels
/// above all labels of replay(h).
OctusHistory complete_to_maximal(const OctusHistory& h);

/// Ear-only derivation on exactly `vertices` whose arcs include `arcs`,
/// given a maximal octus `m` (ear-only, same labels) containing them. The
/// subdigraph (vertices, arcs) must be weakly connected.
OctusHistory spanning_maximal(const OctusHistory& m, std::span<const Vertex> vertices, std::span<const Arc> arcs);

bool is_cactus_orientation(const Digraph& d);
bool is_bioriented_forest(const Digraph& d);

/// One step per line:
///   ROOT r
///   EAR anchor k v0->vk|vk->v0 bits [id1 ... idk]
///   DELV v
///   DELA u v
/// bits is a 0/1 string of length k-1 ("-" when k = 1). Omitted ids take the
/// next unused labels in order.
std::string format_history(const OctusHistory& h);
OctusHistory parse_history(std::string_view text);

} // namespace mader
