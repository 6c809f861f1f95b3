#pragma once

#include "mader/digraph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mader {

/// Largest order supported by canonical_code (n(n-1) must fit in 64 bits).
inline constexpr int kMaxCanonicalOrder = 8;

/// Adjacency code of `d` under its own labeling: one bit per ordered pair,
/// pairs (i,j), i<j in lexicographic order, bit for (i,j) before (j,i),
/// first pair most significant.
std::uint64_t adjacency_code(const Digraph& d);

/// Isomorphism-invariant code: the maximum adjacency code over all
/// relabelings that order vertices by their refined degree classes.
/// Requires order() <= kMaxCanonicalOrder.
std::uint64_t canonical_code(const Digraph& d);

/// The relabeling of `d` whose adjacency code equals canonical_code(d).
Digraph canonical_form(const Digraph& d);

/// Decodes an adjacency code back into a digraph on n vertices.
Digraph from_adjacency_code(int n, std::uint64_t code);

/// Bijection f: V(a) -> V(b) with (u,v) in A(a) iff (f(u),f(v)) in A(b).
std::optional<std::vector<Vertex>> find_isomorphism(const Digraph& a, const Digraph& b);

/// True iff no vertex permutation gives a larger adjacency code; exactly
/// one labeling per isomorphism class passes.
bool is_max_labeling(const Digraph& d);

bool are_isomorphic(const Digraph& a, const Digraph& b);

/// Iso-invariant vertex classes from iterated degree refinement; equal
/// values mean "not yet distinguished". Values are ranks 0..c-1.
std::vector<int> refined_classes(const Digraph& d);

} // namespace mader
