#include "mader/coloring.hpp"

#include "mader/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace mader {

namespace {

VertexMask bit(Vertex v)
{
    return VertexMask{1} << v;
}

// True iff adding v to the acyclic set S closes a dicycle through v.
bool closes_cycle(const Digraph& g, Vertex v, VertexMask s)
{
    const VertexMask in = g.in_mask(v);
    VertexMask reached = g.out_mask(v) & s;
    VertexMask frontier = reached;
    while (frontier) {
        if (reached & in)
            return true;
        Vertex u = std::countr_zero(frontier);
        frontier &= frontier - 1;
        VertexMask next = g.out_mask(u) & s & ~reached;
        reached |= next;
        frontier |= next;
    }
    return (reached & in) != 0;
}

class ComponentSolver {
public:
    ComponentSolver(const Digraph& g, int k) : g_(g), k_(k), color_(g.order(), 0), classes_(k, 0) {}

    bool solve() { return extend(0, 0); }
    const std::vector<int>& color() const { return color_; }

private:
    // Vertices in id order, lowest color first; a fresh color only when all
    // used ones fail, which makes the first solution lexicographically least.
    bool extend(Vertex v, int used)
    {
        if (v == g_.order())
            return true;
        const int limit = std::min(k_, used + 1);
        for (int c = 0; c < limit; ++c) {
            if (closes_cycle(g_, v, classes_[c]))
                continue;
            classes_[c] |= bit(v);
            color_[v] = c + 1;
            if (extend(v + 1, std::max(used, c + 1)))
                return true;
            classes_[c] &= ~bit(v);
            color_[v] = 0;
        }
        return false;
    }

    const Digraph& g_;
    int k_;
    std::vector<int> color_;
    std::vector<VertexMask> classes_;
};

void require_mask_order(const Digraph& d)
{
    if (!d.fits_mask())
        throw PreconditionError("solver supports at most " + std::to_string(kMaxMaskOrder) + " vertices");
}

// Monochromatic dicycle among vertices with nonzero color.
std::optional<std::vector<Vertex>> colored_cycle(const Digraph& d, const std::vector<int>& color, int k)
{
    for (int c = 1; c <= k; ++c) {
        std::vector<Vertex> cls;
        for (Vertex v = 0; v < d.order(); ++v)
            if (color[v] == c)
                cls.push_back(v);
        if (cls.size() < 2)
            continue;
        auto sub = induced(d, cls);
        if (auto cyc = find_dicycle(sub.graph)) {
            for (auto& v : *cyc)
                v = sub.to_parent[v];
            return cyc;
        }
    }
    return std::nullopt;
}

void validate_colors(const Digraph& d, const AcyclicColoring& c, bool allow_uncolored)
{
    if (static_cast<int>(c.color.size()) != d.order())
        throw PreconditionError("coloring size does not match the digraph");
    for (int col : c.color) {
        if (col == 0 && allow_uncolored)
            continue;
        if (col < 1 || col > c.k)
            throw PreconditionError("coloring is not total with colors in 1..k");
    }
}

} // namespace

std::optional<std::vector<Vertex>> find_dicycle(const Digraph& d)
{
    for (const auto& comp : strong_components(d)) {
        if (comp.size() < 2)
            continue;
        std::vector<bool> allowed(d.order(), false);
        for (Vertex v : comp)
            allowed[v] = true;
        return shortest_cycle_through(d, comp.front(), allowed);
    }
    return std::nullopt;
}

bool is_acyclic(const Digraph& d)
{
    return !find_dicycle(d).has_value();
}

std::vector<Vertex> shortest_cycle_through(const Digraph& d, Vertex v, const std::vector<bool>& allowed)
{
    std::vector<bool> blocked(d.order(), true);
    for (Vertex u = 0; u < d.order(); ++u)
        blocked[u] = !allowed[u];
    blocked[v] = true;
    auto outs = d.out_neighbors(v);
    auto ins = d.in_neighbors(v);
    auto path = shortest_dipath(d, std::vector<Vertex>(outs.begin(), outs.end()),
                                std::vector<Vertex>(ins.begin(), ins.end()), blocked);
    if (path.empty())
        return {};
    path.insert(path.begin(), v);
    return path;
}

std::optional<std::vector<Vertex>> check_acyclic(const Digraph& d, const AcyclicColoring& c)
{
    validate_colors(d, c, false);
    return colored_cycle(d, c.color, c.k);
}

std::optional<AcyclicColoring> acyclic_coloring(const Digraph& d, int k)
{
    require_mask_order(d);
    AcyclicColoring out{std::vector<int>(d.order(), 0), k};
    if (d.order() == 0)
        return out;
    if (k <= 0)
        return std::nullopt;
    for (const auto& comp : strong_components(d)) {
        if (comp.size() == 1) {
            out.color[comp[0]] = 1;
            continue;
        }
        auto sub = induced(d, comp);
        ComponentSolver solver(sub.graph, k);
        if (!solver.solve())
            return std::nullopt;
        for (std::size_t i = 0; i < comp.size(); ++i)
            out.color[sub.to_parent[i]] = solver.color()[i];
    }
    return out;
}

bool dichromatic_at_least(const Digraph& d, int k)
{
    if (k <= 0)
        return true;
    return !acyclic_coloring(d, k - 1).has_value();
}

DichromaticResult dichromatic_number(const Digraph& d)
{
    require_mask_order(d);
    DichromaticResult res{0, AcyclicColoring{std::vector<int>(d.order(), 0), 0}};
    for (const auto& comp : strong_components(d)) {
        if (comp.size() == 1) {
            res.coloring.color[comp[0]] = 1;
            res.k = std::max(res.k, 1);
            continue;
        }
        auto sub = induced(d, comp);
        for (int k = 2;; ++k) {
            ComponentSolver solver(sub.graph, k);
            if (!solver.solve())
                continue;
            for (std::size_t i = 0; i < comp.size(); ++i)
                res.coloring.color[sub.to_parent[i]] = solver.color()[i];
            res.k = std::max(res.k, k);
            break;
        }
    }
    res.coloring.k = res.k;
    return res;
}

SubDigraph dicritical_subdigraph(const Digraph& d, int k)
{
    if (k < 1)
        throw PreconditionError("dicritical_subdigraph: k must be positive");
    if (!dichromatic_at_least(d, k))
        throw PreconditionError("dicritical_subdigraph: dichromatic number below k");

    std::vector<Vertex> keep;
    for (Vertex v = 0; v < d.order(); ++v)
        keep.push_back(v);
    for (Vertex v = d.order() - 1; v >= 0; --v) {
        std::vector<Vertex> trial;
        for (Vertex u : keep)
            if (u != v)
                trial.push_back(u);
        if (dichromatic_at_least(induced(d, trial).graph, k))
            keep = std::move(trial);
    }
    SubDigraph cur = induced(d, keep);
    std::vector<Arc> arcs = cur.graph.arcs();
    for (std::size_t i = 0; i < arcs.size();) {
        std::vector<Arc> trial = arcs;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (dichromatic_at_least(Digraph::build(cur.graph.order(), trial), k))
            arcs = std::move(trial);
        else
            ++i;
    }
    cur.graph = Digraph::build(cur.graph.order(), arcs);

    if (cur.graph.min_out_degree() < k - 1 || cur.graph.min_in_degree() < k - 1)
        throw InternalError("dicritical subdigraph has a vertex of degree below k-1");
    if (!is_strongly_connected(cur.graph))
        throw InternalError("dicritical subdigraph is not strongly connected");
    return cur;
}

std::vector<Vertex> bicolored_component(const Digraph& d, const AcyclicColoring& c, int i, int j, Vertex x)
{
    std::vector<Vertex> members;
    for (Vertex v = 0; v < d.order(); ++v)
        if (c.color[v] == i || c.color[v] == j)
            members.push_back(v);
    auto sub = induced(d, members);
    for (const auto& comp : strong_components(sub.graph)) {
        std::vector<Vertex> mapped;
        for (Vertex v : comp)
            mapped.push_back(sub.to_parent[v]);
        if (std::find(mapped.begin(), mapped.end(), x) != mapped.end())
            return mapped;
    }
    return {};
}

AcyclicColoring kempe_switch(const Digraph& d, const AcyclicColoring& c, int i, int j, std::span<const Vertex> x)
{
    validate_colors(d, c, true);
    if (i == j || i < 1 || j < 1 || i > c.k || j > c.k)
        throw PreconditionError("kempe_switch: colors must be distinct and in 1..k");
    if (colored_cycle(d, c.color, c.k))
        throw PreconditionError("kempe_switch: input coloring is not acyclic");
    std::vector<Vertex> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || sorted.front() < 0 || sorted.back() >= d.order())
        throw PreconditionError("kempe_switch: X is not a strong component of D_{i,j}");
    int cx = c.color[sorted.front()];
    if ((cx != i && cx != j) || bicolored_component(d, c, i, j, sorted.front()) != sorted)
        throw PreconditionError("kempe_switch: X is not a strong component of D_{i,j}");
    AcyclicColoring out = c;
    for (Vertex v : sorted)
        out.color[v] = c.color[v] == i ? j : i;
    return out;
}

std::vector<int> color_vector(const Digraph& d, const AcyclicColoring& c, Vertex x0)
{
    std::vector<int> v(c.k, 0);
    for (Vertex w : d.out_neighbors(x0))
        if (c.color[w] >= 1)
            ++v[c.color[w] - 1];
    return v;
}

namespace {

// First (i, j, X) violating switch-minimality, scanning pairs in
// lexicographic order and failing vertices by lowest id.
struct Violation {
    int i = 0;
    int j = 0;
    std::vector<Vertex> component;
};

std::optional<Violation> first_violation(const Digraph& d, const AcyclicColoring& c, Vertex x0)
{
    for (int i = 1; i <= c.k; ++i)
        for (int j = i + 1; j <= c.k; ++j)
            for (Vertex x : d.out_neighbors(x0)) {
                if (c.color[x] != i)
                    continue;
                auto comp = bicolored_component(d, c, i, j, x);
                bool hit = std::any_of(comp.begin(), comp.end(),
                                       [&](Vertex y) { return c.color[y] == j && d.has_arc(x0, y); });
                if (!hit)
                    return Violation{i, j, std::move(comp)};
            }
    return std::nullopt;
}

} // namespace

bool is_switch_minimal(const Digraph& d, const AcyclicColoring& c, Vertex x0)
{
    return !first_violation(d, c, x0).has_value();
}

AcyclicColoring minimize_preorder(const Digraph& d, const AcyclicColoring& c, Vertex x0)
{
    validate_colors(d, c, true);
    if (x0 < 0 || x0 >= d.order() || c.color[x0] != 0)
        throw PreconditionError("minimize_preorder: x0 must be an uncolored vertex");
    AcyclicColoring cur = c;
    while (auto viol = first_violation(d, cur, x0)) {
        auto before = color_vector(d, cur, x0);
        cur = kempe_switch(d, cur, viol->i, viol->j, viol->component);
        if (!(color_vector(d, cur, x0) < before))
            throw InternalError("Kempe switch did not decrease the color vector");
    }
    return cur;
}

std::string format_coloring(const AcyclicColoring& c)
{
    std::ostringstream out;
    for (std::size_t v = 0; v < c.color.size(); ++v)
        out << v << ' ' << c.color[v] << '\n';
    return out.str();
}

AcyclicColoring parse_coloring(std::string_view text, int n)
{
    AcyclicColoring c{std::vector<int>(n, 0), 0};
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#')
            continue;
        std::istringstream in{std::string(line)};
        long long v = -1;
        long long col = -1;
        std::string extra;
        if (!(in >> v >> col) || (in >> extra))
            throw ParseError(line_no, "expected \"v c\"");
        if (v < 0 || v >= n)
            throw ParseError(line_no, "vertex out of range");
        if (col < 1 || col > 1'000'000)
            throw ParseError(line_no, "color must be positive");
        if (c.color[v] != 0)
            throw ParseError(line_no, "vertex colored twice");
        c.color[v] = static_cast<int>(col);
        c.k = std::max(c.k, static_cast<int>(col));
    }
    for (Vertex v = 0; v < n; ++v)
        if (c.color[v] == 0)
            throw ParseError(line_no, "vertex " + std::to_string(v) + " has no color");
    return c;
}

} // namespace mader
