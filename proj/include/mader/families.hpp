#pragma once

#include "mader/digraph.hpp"
#include "mader/octus.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace mader {

Digraph complete_bidigraph(int n);
/// 0 -> 1 -> ... -> l-1 -> 0; requires l >= 2.
Digraph directed_cycle(int l);
/// Dipath on l vertices 0 -> 1 -> ... -> l-1; requires l >= 1.
Digraph directed_path(int l);
/// Cycle 0..l-1 where bit i of `bits` set means the edge {i, i+1 mod l}
/// is oriented i -> i+1, else i+1 -> i. Requires l >= 2.
Digraph oriented_cycle(int l, std::uint64_t bits);
Digraph bioriented_path(int t);

enum class Tournament4 { Transitive, Strong, SourceTriangle, SinkTriangle };

/// Fixed labelings. Transitive: i -> j for i < j. Strong: 0->1, 0->2, 1->2,
/// 1->3, 2->3, 3->0. SourceTriangle (W4+): triangle 0->1->2->0 and 3 -> {0,1,2}.
/// SinkTriangle (W4-): the reverse of SourceTriangle.
Digraph tournament4(Tournament4 which);
std::string_view tournament_name(Tournament4 which);
std::optional<Tournament4> parse_tournament(std::string_view name);
inline constexpr Tournament4 kAllTournaments4[] = {Tournament4::Transitive, Tournament4::Strong,
                                                   Tournament4::SourceTriangle, Tournament4::SinkTriangle};

/// Bioriented K_{k+2} minus the bioriented 5-cycle 0-1-2-3-4-0; k >= 3.
Digraph clique_minus_bicycle(int k);

/// Bioriented triangle minus one arc: digons 0-1 and 1-2 plus the arc 0 -> 2.
Digraph k3_minus_e();

struct FkConstruction {
    Digraph graph;
    std::vector<EarSpec> ears; // digon ears applied to k3_minus_e(), in order
};

/// K3-e followed by k-3 digon ears (vertex t attached to t-1); k >= 3.
FkConstruction f_k(int k);

struct RandomSpec {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

/// Identifier of the sampling scheme: std::mt19937_64 seeded with `seed`;
/// ordered pairs (i, j), i != j, visited row by row; the pair is an arc iff
/// (next() >> 11) * 2^-53 < p.
inline constexpr std::string_view kRandomAlgorithm = "mt19937_64/u53-threshold";

Digraph random_digraph(const RandomSpec& spec);
/// Undirected G(n,p) edge list with the same generator and pair order i < j.
std::vector<Edge> random_graph(int n, double p, std::uint64_t seed);
Digraph random_tournament(int n, std::uint64_t seed);

/// Largest order enumerate_digraphs accepts.
inline constexpr int kMaxEnumerationOrder = 5;

/// The digraph with the given index among the 4^(n(n-1)/2) labeled
/// digraphs on n vertices: base-4 digit t describes the t-th pair (i<j) in
/// lexicographic order (bit 0: i -> j, bit 1: j -> i).
Digraph digraph_from_index(int n, std::uint64_t index);
std::uint64_t labeled_count(int n);

/// Streams digraphs in index order; iso-reduced mode keeps only labelings
/// whose adjacency code is maximal over all vertex permutations (one per
/// isomorphism class). Indices start..end (exclusive) allow sharding.
void for_each_digraph(int n, bool up_to_iso, const std::function<void(const Digraph&)>& visit,
                      std::uint64_t start = 0, std::optional<std::uint64_t> end = std::nullopt);
std::vector<Digraph> enumerate_digraphs(int n, bool up_to_iso);

/// Undirected trees on t labeled vertices, one per isomorphism class.
std::vector<std::vector<Edge>> trees_up_to_iso(int t);

/// Orientation bit patterns of C_l, one per isomorphism class of the
/// resulting oriented cycle.
std::vector<std::uint64_t> cycle_orientations_up_to_iso(int l);

} // namespace mader
