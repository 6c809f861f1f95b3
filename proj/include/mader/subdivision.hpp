#pragma once

#include "mader/digraph.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mader {

/// A subdivision of `pattern` inside `host`: branch[x] is the image of the
/// pattern vertex x; paths[(x,y)] is the host dipath from branch[x] to
/// branch[y] replacing the pattern arc (x,y).
struct SubdivisionEmbedding {
    Digraph pattern;
    Digraph host;
    std::vector<Vertex> branch;
    std::map<Arc, std::vector<Vertex>> paths;

    friend bool operator==(const SubdivisionEmbedding&, const SubdivisionEmbedding&) = default;
};

/// First violated condition, or nullopt when the embedding is valid.
std::optional<std::string> verify_embedding(const SubdivisionEmbedding& e);

enum class SearchStatus { Found, None, Unknown };

struct SearchOptions {
    int jobs = 1;
    /// With several jobs, return the embedding the sequential search would
    /// find (true) or whichever worker finishes first (false).
    bool deterministic = true;
    /// Longest allowed subdivision path, in arcs. Capped searches report
    /// Unknown instead of None when the cap pruned anything.
    std::optional<int> max_path_length;
};

struct SearchResult {
    SearchStatus status = SearchStatus::None;
    std::optional<SubdivisionEmbedding> embedding;
};

/// Exhaustive decision: does `host` contain a subdivision of `pattern`?
SearchResult find_subdivision(const Digraph& host, const Digraph& pattern, const SearchOptions& options);
std::optional<SubdivisionEmbedding> find_subdivision(const Digraph& host, const Digraph& pattern);
bool contains_subdivision(const Digraph& host, const Digraph& pattern);

/// The same subdivision read in reverse(host) as a subdivision of reverse(pattern).
SubdivisionEmbedding reverse_embedding(const SubdivisionEmbedding& e);

/// Re-expresses an embedding found in sub.graph as one in `parent`.
SubdivisionEmbedding pull_back(const SubdivisionEmbedding& e, const SubDigraph& sub, const Digraph& parent);

/// Transfers an embedding of pattern P to an isomorphic pattern Q, where
/// iso maps V(P) -> V(Q).
SubdivisionEmbedding relabel_pattern(const SubdivisionEmbedding& e, const Digraph& q, std::span<const Vertex> iso);

/// Restricts to a subdigraph F' of the pattern; into[x'] is the pattern
/// vertex playing the role of x'.
SubdivisionEmbedding restrict_embedding(const SubdivisionEmbedding& e, const Digraph& sub_pattern,
                                        std::span<const Vertex> into);

/// Host arcs used by the subdivision paths.
std::vector<Arc> embedding_arcs(const SubdivisionEmbedding& e);

/// Sorted set of host vertices used (branch and internal).
std::vector<Vertex> embedding_vertices(const SubdivisionEmbedding& e);

/// Rebuilds an embedding from a subdigraph of the host that is itself a
/// subdivision of the pattern with the given branch map: every pattern arc
/// is traced through the degree-2 internal vertices. nullopt if the arc set
/// does not have that shape.
std::optional<SubdivisionEmbedding> trace_embedding(const Digraph& pattern, const Digraph& host,
                                                    std::span<const Vertex> branch, std::span<const Arc> arcs);

} // namespace mader
