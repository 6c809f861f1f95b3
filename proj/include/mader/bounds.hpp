#pragma once

#include "mader/digraph.hpp"
#include "mader/octus.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mader {

using BigInt = boost::multiprecision::cpp_int;

enum class BoundRule { Base, DisjointUnion, Ear, ArcAdd, IsolatedVertices, ExactKnown, Generic, Intersect };

std::string rule_name(BoundRule rule);

/// One node of a bound's derivation tree.
struct Derivation {
    BoundRule rule = BoundRule::Base;
    std::string note;
    std::vector<Derivation> inputs;
};

/// An interval for the Mader number of `pattern`; upper == nullopt is
/// infinity.
struct BoundExpr {
    Digraph pattern;
    BigInt lower;
    std::optional<BigInt> upper;
    Derivation provenance;

    [[nodiscard]] bool exact() const { return upper && *upper == lower; }
};

/// lower = v(F), witnessed by the complete biorientation on v(F)-1
/// vertices; complete biorientations of order k >= 3 get k+1, witnessed by
/// clique_minus_bicycle(k).
BoundExpr base_lower(const Digraph& f);

/// Exact values known for octi (v(F)), order-4 tournaments (4) and K3-e (3).
/// Throws PreconditionError for any other F.
BoundExpr exact_known(const Digraph& f);
bool has_exact_known(const Digraph& f);

/// F1 + F2 with F2's vertices shifted by v(F1).
BoundExpr disjoint_union(const BoundExpr& a, const BoundExpr& b);
/// F* = ear_add(F, ear): upper + k.
BoundExpr ear_rule(const BoundExpr& f, const EarSpec& ear);
/// F + e from F: upper 4U - 3. Throws if e is already an arc or a loop.
BoundExpr arc_add(const BoundExpr& f, Arc e);
/// F plus k isolated vertices; exact v(F)+k once k >= 2U - v(F) - 1.
BoundExpr isolated_vertices(const BoundExpr& f, int k);
/// 2U - v(F) - 1 for the current upper bound U; nullopt when U is infinite.
std::optional<BigInt> isolated_threshold(const BoundExpr& f);
/// 4^m (n-1) + 1; opt-in only.
BoundExpr generic_upper(const Digraph& f);
/// Meet of two bounds on the same pattern.
BoundExpr intersect(const BoundExpr& a, const BoundExpr& b);

/// 4^(n^2-3n+1) (n-1) + 1, the bound reached from f_n by arc additions.
BigInt complete_bidigraph_upper(int n);

/// Applies the rules automatically: exact values, components, digon
/// leaves (ear rule), then arc removal (arc-add rule). Generic only when
/// allow_generic is set.
BoundExpr derive_bound(const Digraph& f, bool allow_generic = false);

/// Mader-perfect status for v(F) <= 6: every induced subdigraph's derived
/// interval is degenerate at its order. Unknown when some interval is not
/// decided either way.
enum class Perfection { Perfect, NotPerfect, Unknown };
Perfection mader_perfect(const Digraph& f);
std::string perfection_name(Perfection p);

struct LowerEstimate {
    int lower = 0;
    Digraph witness; // chi(witness) = lower - 1 and no F-subdivision
    std::uint64_t examined = 0;
};

/// Searches small hosts without an F-subdivision: the iso-reduced
/// enumeration up to n_max (at most 5), then `samples` random digraphs on
/// up to sample_order vertices.
LowerEstimate estimate_lower(const Digraph& f, int n_max, int samples = 0, int sample_order = 7,
                             std::uint64_t seed = 1);

/// Structured text: pattern, interval and the derivation tree.
std::string format_bound(const BoundExpr& b);
std::string format_big(const std::optional<BigInt>& v);

} // namespace mader
