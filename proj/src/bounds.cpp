#include "mader/bounds.hpp"

#include "mader/canonical.hpp"
#include "mader/coloring.hpp"
#include "mader/errors.hpp"
#include "mader/families.hpp"
#include "mader/subdivision.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

namespace mader {

std::string rule_name(BoundRule rule)
{
    switch (rule) {
    case BoundRule::Base:
        return "base";
    case BoundRule::DisjointUnion:
        return "disjoint-union";
    case BoundRule::Ear:
        return "ear";
    case BoundRule::ArcAdd:
        return "arc-add";
    case BoundRule::IsolatedVertices:
        return "isolated-vertices";
    case BoundRule::ExactKnown:
        return "exact-known";
    case BoundRule::Generic:
        return "generic";
    case BoundRule::Intersect:
        return "intersect";
    }
    return "?";
}

std::string format_big(const std::optional<BigInt>& v)
{
    return v ? v->str() : std::string("inf");
}

namespace {

bool is_complete_bidigraph(const Digraph& f)
{
    return f.size() == f.order() * (f.order() - 1);
}

BigInt max_big(const BigInt& a, const BigInt& b)
{
    return a < b ? b : a;
}

} // namespace

BoundExpr base_lower(const Digraph& f)
{
    const int n = f.order();
    if (n >= 3 && is_complete_bidigraph(f))
        return {f, n + 1, std::nullopt,
                {BoundRule::Base,
                 "complete biorientation minus a bioriented 5-cycle on " + std::to_string(n + 2) +
                     " vertices has dichromatic number " + std::to_string(n) + " and no subdivision",
                 {}}};
    std::string note = n == 0 ? "empty pattern"
                              : "complete biorientation of order " + std::to_string(n - 1) +
                                    " has too few vertices";
    return {f, n, std::nullopt, {BoundRule::Base, note, {}}};
}

bool has_exact_known(const Digraph& f)
{
    if (f.order() == 4 && f.size() == 6) {
        for (auto t : kAllTournaments4)
            if (are_isomorphic(f, tournament4(t)))
                return true;
    }
    if (f.order() == 3 && are_isomorphic(f, k3_minus_e()))
        return true;
    return is_octus(f).has_value();
}

BoundExpr exact_known(const Digraph& f)
{
    const int n = f.order();
    if (n == 4 && f.size() == 6)
        for (auto t : kAllTournaments4)
            if (are_isomorphic(f, tournament4(t)))
                return {f, 4, BigInt(4), {BoundRule::ExactKnown, "order-4 tournament " + std::string(tournament_name(t)), {}}};
    if (n == 3 && are_isomorphic(f, k3_minus_e()))
        return {f, 3, BigInt(3), {BoundRule::ExactKnown, "bioriented triangle minus an arc", {}}};
    if (is_octus(f))
        return {f, n, BigInt(n), {BoundRule::ExactKnown, "octus on " + std::to_string(n) + " vertices", {}}};
    throw PreconditionError("exact_known: no exact value known for this pattern");
}

BoundExpr disjoint_union(const BoundExpr& a, const BoundExpr& b)
{
    const int na = a.pattern.order();
    std::vector<Arc> arcs = a.pattern.arcs();
    for (const auto& e : b.pattern.arcs())
        arcs.push_back({e.tail + na, e.head + na});
    Digraph u = Digraph::build(na + b.pattern.order(), arcs);
    BigInt lower = max_big(BigInt(u.order()), max_big(a.lower, b.lower));
    std::optional<BigInt> upper;
    if (a.upper && b.upper)
        upper = *a.upper + *b.upper;
    return {u, lower, upper,
            {BoundRule::DisjointUnion, "upper " + format_big(a.upper) + " + " + format_big(b.upper),
             {a.provenance, b.provenance}}};
}

BoundExpr ear_rule(const BoundExpr& f, const EarSpec& ear)
{
    Digraph star = ear_add(f.pattern, ear);
    const int k = ear.length();
    std::optional<BigInt> upper;
    if (f.upper)
        upper = *f.upper + k;
    BigInt lower = max_big(BigInt(star.order()), f.lower);
    return {star, lower, upper,
            {BoundRule::Ear,
             "ear of length " + std::to_string(k) + " at " + std::to_string(ear.anchor) + ": upper " +
                 format_big(f.upper) + " + " + std::to_string(k),
             {f.provenance}}};
}

BoundExpr arc_add(const BoundExpr& f, Arc e)
{
    const int n = f.pattern.order();
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n || e.tail == e.head)
        throw PreconditionError("arc_add: arc endpoints out of range");
    if (f.pattern.has_arc(e.tail, e.head))
        throw PreconditionError("arc_add: arc already present");
    std::array<Arc, 1> one{e};
    Digraph g = add_arcs(f.pattern, one);
    std::optional<BigInt> upper;
    if (f.upper)
        upper = 4 * *f.upper - 3;
    return {g, max_big(BigInt(n), f.lower), upper,
            {BoundRule::ArcAdd,
             "add " + std::to_string(e.tail) + "->" + std::to_string(e.head) + ": upper 4*" + format_big(f.upper) +
                 "-3",
             {f.provenance}}};
}

std::optional<BigInt> isolated_threshold(const BoundExpr& f)
{
    if (!f.upper)
        return std::nullopt;
    BigInt t = 2 * *f.upper - f.pattern.order() - 1;
    return t < 0 ? BigInt(0) : t;
}

BoundExpr isolated_vertices(const BoundExpr& f, int k)
{
    if (k < 0)
        throw PreconditionError("isolated_vertices: k must be nonnegative");
    const int n = f.pattern.order();
    Digraph g = Digraph::build(n + k, f.pattern.arcs());
    BigInt lower = max_big(BigInt(n + k), f.lower);
    std::optional<BigInt> upper;
    std::string note;
    auto threshold = isolated_threshold(f);
    if (threshold && BigInt(k) >= *threshold) {
        upper = BigInt(n + k);
        note = std::to_string(k) + " isolated vertices >= k_F = 2*" + format_big(f.upper) + "-" + std::to_string(n) +
               "-1 = " + threshold->str();
    } else {
        if (f.upper)
            upper = *f.upper + k;
        note = std::to_string(k) + " isolated vertices below k_F = " + format_big(threshold) + ": upper + " +
               std::to_string(k);
    }
    return {g, lower, upper, {BoundRule::IsolatedVertices, note, {f.provenance}}};
}

BoundExpr generic_upper(const Digraph& f)
{
    const int n = f.order();
    const int m = f.size();
    BigInt upper = boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(m)) * (n - 1) + 1;
    if (n == 0)
        upper = 0;
    BoundExpr base = base_lower(f);
    return {f, base.lower, max_big(upper, base.lower),
            {BoundRule::Generic, "4^" + std::to_string(m) + "*(" + std::to_string(n) + "-1)+1", {base.provenance}}};
}

BoundExpr intersect(const BoundExpr& a, const BoundExpr& b)
{
    if (!(a.pattern == b.pattern) && !are_isomorphic(a.pattern, b.pattern))
        throw PreconditionError("intersect: bounds concern different patterns");
    std::optional<BigInt> upper = a.upper;
    if (b.upper && (!upper || *b.upper < *upper))
        upper = b.upper;
    BigInt lower = max_big(a.lower, b.lower);
    if (upper && *upper < lower)
        throw InternalError("intersect: empty interval " + lower.str() + ".." + upper->str());
    return {a.pattern, lower, upper, {BoundRule::Intersect, "", {a.provenance, b.provenance}}};
}

BigInt complete_bidigraph_upper(int n)
{
    if (n < 3)
        throw PreconditionError("complete_bidigraph_upper: n must be at least 3");
    BoundExpr b = derive_bound(f_k(n).graph);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && !b.pattern.has_arc(u, v))
                b = arc_add(b, {u, v});
    return *b.upper;
}

namespace {

BoundExpr with_pattern(BoundExpr b, const Digraph& f)
{
    b.pattern = f;
    return b;
}

BoundExpr derive_core(const Digraph& f)
{
    if (has_exact_known(f))
        return exact_known(f);
    auto comps = weak_components(f);
    if (comps.size() > 1) {
        std::optional<BoundExpr> acc;
        for (const auto& comp : comps) {
            BoundExpr part = derive_core(induced(f, comp).graph);
            acc = acc ? disjoint_union(*acc, part) : part;
        }
        return with_pattern(*acc, f);
    }
    // A digon leaf is a length-one ear.
    for (Vertex x = 0; x < f.order(); ++x) {
        if (f.out_degree(x) != 1 || f.in_degree(x) != 1 || f.out_neighbors(x)[0] != f.in_neighbors(x)[0])
            continue;
        std::array<Vertex, 1> gone{x};
        SubDigraph rest = delete_vertices(f, gone);
        Vertex anchor = static_cast<Vertex>(std::find(rest.to_parent.begin(), rest.to_parent.end(),
                                                      f.out_neighbors(x)[0]) -
                                            rest.to_parent.begin());
        EarSpec ear{anchor, {rest.graph.order()}, {}, Closing::AnchorToEnd};
        return with_pattern(ear_rule(derive_core(rest.graph), ear), f);
    }
    // Remove an arc, preferring one that leaves a known value.
    Arc pick = f.arcs().front();
    for (const auto& a : f.arcs()) {
        std::array<Arc, 1> one{a};
        if (has_exact_known(delete_arcs(f, one))) {
            pick = a;
            break;
        }
    }
    std::array<Arc, 1> one{pick};
    return arc_add(derive_core(delete_arcs(f, one)), pick);
}

} // namespace

BoundExpr derive_bound(const Digraph& f, bool allow_generic)
{
    BoundExpr b = derive_core(f);
    BoundExpr base = base_lower(f);
    if (base.lower > b.lower)
        b = intersect(b, base);
    if (allow_generic) {
        BoundExpr g = generic_upper(f);
        if (!b.upper || *g.upper < *b.upper)
            b = intersect(b, g);
    }
    b.pattern = f;
    return b;
}

Perfection mader_perfect(const Digraph& f)
{
    const int n = f.order();
    if (n > 6)
        throw PreconditionError("mader_perfect: supported for at most 6 vertices");
    bool unknown = false;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        std::vector<Vertex> s;
        for (Vertex v = 0; v < n; ++v)
            if (mask & (1U << v))
                s.push_back(v);
        BoundExpr b = derive_bound(induced(f, s).graph);
        if (b.lower > static_cast<int>(s.size()))
            return Perfection::NotPerfect;
        if (!b.exact())
            unknown = true;
    }
    return unknown ? Perfection::Unknown : Perfection::Perfect;
}

std::string perfection_name(Perfection p)
{
    switch (p) {
    case Perfection::Perfect:
        return "perfect";
    case Perfection::NotPerfect:
        return "not-perfect";
    case Perfection::Unknown:
        return "unknown";
    }
    return "?";
}

LowerEstimate estimate_lower(const Digraph& f, int n_max, int samples, int sample_order, std::uint64_t seed)
{
    if (n_max > kMaxEnumerationOrder)
        throw PreconditionError("estimate_lower: enumeration limited to n <= " + std::to_string(kMaxEnumerationOrder));
    if (samples < 0 || sample_order < 0 || sample_order > kMaxMaskOrder)
        throw PreconditionError("estimate_lower: bad sampling parameters");
    LowerEstimate best;
    best.lower = f.order();
    best.witness = complete_bidigraph(std::max(0, f.order() - 1));
    auto consider = [&](const Digraph& d) {
        ++best.examined;
        if (!dichromatic_at_least(d, best.lower))
            return;
        int chi = dichromatic_number(d).k;
        if (chi + 1 > best.lower && !contains_subdivision(d, f)) {
            best.lower = chi + 1;
            best.witness = d;
        }
    };
    for (int n = 1; n <= n_max; ++n)
        for_each_digraph(n, true, consider);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> density(0.3, 0.9);
    for (int i = 0; i < samples; ++i) {
        double p = density(rng);
        consider(random_digraph({sample_order, p, rng()}));
    }
    return best;
}

namespace {

void format_tree(std::ostringstream& out, const Derivation& d, int depth)
{
    out << std::string(2 * depth + 2, ' ') << rule_name(d.rule);
    if (!d.note.empty())
        out << ": " << d.note;
    out << '\n';
    for (const auto& in : d.inputs)
        format_tree(out, in, depth + 1);
}

} // namespace

std::string format_bound(const BoundExpr& b)
{
    std::ostringstream out;
    out << "pattern: n=" << b.pattern.order() << " m=" << b.pattern.size() << " hash=" << digraph_hash(b.pattern)
        << '\n';
    out << "lower: " << b.lower << '\n';
    out << "upper: " << format_big(b.upper) << '\n';
    out << "exact: " << (b.exact() ? "yes" : "no") << '\n';
    out << "derivation:\n";
    format_tree(out, b.provenance, 0);
    return out.str();
}

} // namespace mader
