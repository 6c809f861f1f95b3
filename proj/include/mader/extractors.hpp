#pragma once

#include "mader/coloring.hpp"
#include "mader/digraph.hpp"
#include "mader/families.hpp"
#include "mader/octus.hpp"
#include "mader/subdivision.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mader {

/// Produces an embedding of a fixed pattern in any host whose dichromatic
/// number reaches the pattern's Mader number.
using SubdivisionFinder = std::function<SubdivisionEmbedding(const Digraph& host)>;

/// Joins host dipaths into an embedding of `pattern`. The branch vertices
/// are the path endpoints; the pattern is matched against the endpoint
/// skeleton by isomorphism. Throws InternalError if the result is invalid.
SubdivisionEmbedding assemble_embedding(const Digraph& pattern, const Digraph& host,
                                        const std::vector<std::vector<Vertex>>& paths);

// ---------------------------------------------------------------- ears

struct EarStats {
    int restarts = 0;
};

/// Embedding of F* = ear_add(f, ear) in d, given chi(d) >= mader_f + k and
/// a finder for F. Ear vertices play the roles z_1..z_k of the Kempe
/// argument; the anchor is the branch vertex of the F-subdivision.
SubdivisionEmbedding extract_ear(const Digraph& d, const Digraph& f, const EarSpec& ear, int mader_f,
                                 const SubdivisionFinder& find_f, EarStats* stats = nullptr);

/// Embedding of `target` given an ear-only history of a maximal octus M and
/// into[x] = label in M of target vertex x (target must be a subdigraph of
/// M under that map). Requires chi(d) >= v(target).
SubdivisionEmbedding extract_octus(const Digraph& d, const OctusHistory& maximal, const Digraph& target,
                                   std::span<const Vertex> into);

/// Recognizes `target` as an octus, completes it and extracts.
SubdivisionEmbedding extract_octus(const Digraph& d, const Digraph& target);

// ---------------------------------------------------------- reductions

struct ReductionStep {
    enum class Kind { Butterfly, SinkSplit, DigonContract };
    Kind kind = Kind::Butterfly;
    Digraph original;
    /// reduced vertex -> original vertex
    std::vector<Vertex> to_original;
    // Butterfly: u deleted, w receives the redirected arcs.
    // DigonContract: u kept, v and w contracted into it.
    // SinkSplit: u is the cut vertex, x_side the sink component X.
    Vertex u = 0;
    Vertex v = 0;
    Vertex w = 0;
    std::vector<Vertex> x_side;
};

struct Reduction {
    Digraph graph;
    ReductionStep step;
};

Reduction butterfly_reduce(const Digraph& d, Vertex u, Vertex w);

struct SinkSplit {
    SubDigraph d1;  // D[X + v]
    Reduction d2;   // on Y + v
};

/// v and the vertex set X of a sink strong component of D - v.
SinkSplit sink_split(const Digraph& d, Vertex v, std::span<const Vertex> x);

Reduction digon_contract(const Digraph& d, Vertex u, Vertex v, Vertex w);

/// Pulls an embedding of a sink-free orientation of a cubic graph (any
/// orientation of a cubic graph for digon contraction) back to the
/// original digraph.
SubdivisionEmbedding lift(const ReductionStep& step, const SubdivisionEmbedding& reduced);

/// Combines acyclic colorings of D[X + v] and of the sink-split D2 that
/// agree at v into one of D.
AcyclicColoring merge_sink_split_colorings(const SinkSplit& split, const AcyclicColoring& c1,
                                           const AcyclicColoring& c2);

// --------------------------------------------------------- tournaments

struct TournamentExtraction {
    SubdivisionEmbedding embedding;
    /// "proof" when the constructive argument finished, "oracle" when the
    /// exhaustive search produced the final embedding.
    std::string route;
    std::vector<std::string> trace;
};

/// Requires chi(d) >= 4. Pattern labeling as in tournament4().
TournamentExtraction extract_tournament4(const Digraph& d, Tournament4 which);

/// Requires chi(d) >= 3. Pattern labeling as in k3_minus_e().
SubdivisionEmbedding extract_k3_minus_e(const Digraph& d);

} // namespace mader
