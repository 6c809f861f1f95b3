// mader: command-line front end for the dichromatic / subdivision library.
//
// Exit codes: 0 success, 1 counterexample or violation, 2 usage or input
// error, 3 internal consistency failure.

#include "mader/bounds.hpp"
#include "mader/campaign.hpp"
#include "mader/certificate.hpp"
#include "mader/coloring.hpp"
#include "mader/errors.hpp"
#include "mader/extractors.hpp"
#include "mader/families.hpp"
#include "mader/menger.hpp"
#include "mader/octus.hpp"
#include "mader/subdivision.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace mader;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 1;
    bool deterministic = false;
    std::string format = "text";
    int jobs = 1;
};

std::string read_text(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Digraph load_digraph(const std::string& path)
{
    return parse_digraph(read_text(path));
}

std::vector<Vertex> parse_list(const std::string& s)
{
    std::vector<Vertex> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoi(item));
    return out;
}

std::string join(const std::vector<Vertex>& v, const char* sep = " ")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string embedding_text(const SubdivisionEmbedding& e)
{
    std::ostringstream out;
    out << "pattern " << e.pattern.order() << " " << e.pattern.size() << "\n";
    out << "host_hash " << digraph_hash(e.host) << "\n";
    for (Vertex x = 0; x < e.pattern.order(); ++x)
        out << "branch " << x << " " << e.branch[x] << "\n";
    for (const auto& [arc, path] : e.paths)
        out << "path " << arc.tail << " " << arc.head << " : " << join(path) << "\n";
    return out.str();
}

std::string embedding_dot(const SubdivisionEmbedding& e)
{
    std::vector<Arc> used = embedding_arcs(e);
    std::ostringstream out;
    out << "digraph D {\n";
    for (Vertex v = 0; v < e.host.order(); ++v) {
        out << "  " << v;
        for (Vertex x = 0; x < e.pattern.order(); ++x)
            if (e.branch[x] == v)
                out << " [shape=doublecircle, xlabel=\"" << x << "\"]";
        out << ";\n";
    }
    for (const auto& a : e.host.arcs()) {
        out << "  " << a.tail << " -> " << a.head;
        if (std::binary_search(used.begin(), used.end(), a))
            out << " [penwidth=2.5, color=red]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

void print_embedding(const Globals& g, const SubdivisionEmbedding& e)
{
    if (g.format == "json")
        std::cout << embedding_certificate(e).dump(2) << "\n";
    else if (g.format == "dot")
        std::cout << embedding_dot(e);
    else
        std::cout << embedding_text(e);
}

void print_digraph(const Globals& g, const Digraph& d, const std::vector<Vertex>& to_parent = {})
{
    if (g.format == "json") {
        json j = digraph_to_json(d);
        if (!to_parent.empty())
            j["to_parent"] = to_parent;
        std::cout << j.dump(2) << "\n";
    } else if (g.format == "dot") {
        std::cout << format_dot(d);
    } else {
        if (!to_parent.empty())
            std::cout << "# vertices of the input: " << join(to_parent) << "\n";
        std::cout << format_digraph(d);
    }
}

// ---------------------------------------------------------------- commands

int cmd_solve(const Globals& g, const std::string& file)
{
    Digraph d = load_digraph(file);
    auto r = dichromatic_number(d);
    if (check_acyclic(d, r.coloring))
        throw InternalError("solver returned a coloring with a monochromatic dicycle");
    if (g.format == "json") {
        std::cout << coloring_certificate(d, r.coloring).dump(2) << "\n";
    } else if (g.format == "dot") {
        std::cout << "digraph D {\n";
        for (Vertex v = 0; v < d.order(); ++v)
            std::cout << "  " << v << " [label=\"" << v << ":" << r.coloring.color[v] << "\"];\n";
        for (const auto& a : d.arcs())
            std::cout << "  " << a.tail << " -> " << a.head << ";\n";
        std::cout << "}\n";
    } else {
        std::cout << "# dichromatic number " << r.k << "\n" << format_coloring(r.coloring);
    }
    return kOk;
}

int cmd_dicritical(const Globals& g, const std::string& file, int k)
{
    Digraph d = load_digraph(file);
    if (k <= 0)
        k = dichromatic_number(d).k;
    SubDigraph core = dicritical_subdigraph(d, k);
    print_digraph(g, core.graph, core.to_parent);
    return kOk;
}

int cmd_extract(const Globals& g, const std::string& target, const std::string& file, const std::string& pattern_file)
{
    Digraph d = load_digraph(file);
    if (auto t = parse_tournament(target)) {
        auto r = extract_tournament4(d, *t);
        if (auto v = verify_embedding(r.embedding))
            throw InternalError("extracted embedding fails verification: " + *v);
        if (g.format == "text") {
            std::cout << "# route " << r.route << "\n";
            for (const auto& line : r.trace)
                std::cout << "# " << line << "\n";
        }
        print_embedding(g, r.embedding);
        return kOk;
    }
    SubdivisionEmbedding e;
    if (target == "K3-e") {
        e = extract_k3_minus_e(d);
    } else if (target == "octus") {
        if (pattern_file.empty())
            throw UsageError("extract octus needs --pattern");
        Digraph f = load_digraph(pattern_file);
        if (!is_octus(f))
            throw PreconditionError("pattern is not an octus");
        e = extract_octus(d, f);
    } else {
        throw UsageError("unknown extraction target " + target + " (K4, K4s, W4+, W4-, K3-e, octus)");
    }
    if (auto v = verify_embedding(e))
        throw InternalError("extracted embedding fails verification: " + *v);
    print_embedding(g, e);
    return kOk;
}

int cmd_find(const Globals& g, const std::string& host_file, const std::string& pattern_file, int max_len)
{
    Digraph host = load_digraph(host_file);
    Digraph pattern = load_digraph(pattern_file);
    SearchOptions opt;
    opt.jobs = g.jobs;
    opt.deterministic = g.deterministic || g.jobs == 1;
    if (max_len > 0)
        opt.max_path_length = max_len;
    auto r = find_subdivision(host, pattern, opt);
    if (r.status == SearchStatus::Found) {
        print_embedding(g, *r.embedding);
        return kOk;
    }
    const char* word = r.status == SearchStatus::None ? "none" : "unknown";
    if (g.format == "json")
        std::cout << json{{"status", word}}.dump(2) << "\n";
    else
        std::cout << word << "\n";
    return kViolation;
}

int cmd_menger(const Globals& g, const std::string& file, const std::string& from, const std::string& to,
               int fan_vertex, int fan_k)
{
    Digraph d = load_digraph(file);
    std::vector<Vertex> b = parse_list(to);
    if (fan_vertex >= 0) {
        if (fan_k <= 0)
            throw UsageError("--fan needs --k");
        auto r = vertex_fan(d, fan_vertex, b, fan_k);
        if (g.format == "json") {
            json j;
            if (r.fan)
                j["fan"] = r.fan->paths;
            if (r.cut)
                j["cut"] = r.cut->cut;
            std::cout << j.dump(2) << "\n";
        } else {
            if (r.fan)
                for (const auto& p : r.fan->paths)
                    std::cout << "path " << join(p) << "\n";
            if (r.cut)
                std::cout << "cut " << join(r.cut->cut) << "\n";
        }
        return r.fan ? kOk : kViolation;
    }
    std::vector<Vertex> a = parse_list(from);
    auto r = disjoint_paths(d, a, b);
    if (g.format == "json") {
        json j = separator_certificate(d, a, b, r.separator.cut);
        j["paths"] = r.system.paths;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "paths " << r.system.paths.size() << "\n";
        for (const auto& p : r.system.paths)
            std::cout << "path " << join(p) << "\n";
        std::cout << "cut " << join(r.separator.cut) << "\n";
    }
    return kOk;
}

int need(const std::vector<std::string>& args, std::size_t i, const std::string& family)
{
    if (i >= args.size())
        throw UsageError("generate " + family + ": missing argument " + std::to_string(i + 1));
    return std::stoi(args[i]);
}

int cmd_generate(const Globals& g, const std::string& family, const std::vector<std::string>& args)
{
    Digraph d;
    if (family == "complete")
        d = complete_bidigraph(need(args, 0, family));
    else if (family == "cycle")
        d = directed_cycle(need(args, 0, family));
    else if (family == "path")
        d = directed_path(need(args, 0, family));
    else if (family == "oriented-cycle") {
        need(args, 1, family);
        d = oriented_cycle(need(args, 0, family), std::stoull(args[1], nullptr, 0));
    } else if (family == "bipath")
        d = bioriented_path(need(args, 0, family));
    else if (family == "tournament4") {
        if (args.empty())
            throw UsageError("generate tournament4: missing name");
        auto t = parse_tournament(args[0]);
        if (!t)
            throw UsageError("unknown tournament " + args[0]);
        d = tournament4(*t);
    } else if (family == "clique-minus-bicycle")
        d = clique_minus_bicycle(need(args, 0, family));
    else if (family == "k3-minus-e")
        d = k3_minus_e();
    else if (family == "f-k")
        d = f_k(need(args, 0, family)).graph;
    else if (family == "random") {
        need(args, 1, family);
        d = random_digraph({need(args, 0, family), std::stod(args[1]), g.seed});
    } else if (family == "random-tournament")
        d = random_tournament(need(args, 0, family), g.seed);
    else
        throw UsageError("unknown family " + family);
    if (g.format == "text")
        std::cout << "# " << family << (args.empty() ? "" : " ") << [&] {
            std::string s;
            for (std::size_t i = 0; i < args.size(); ++i)
                s += (i ? " " : "") + args[i];
            return s;
        }() << "\n";
    print_digraph(g, d);
    return kOk;
}

int cmd_octus(const Globals& g, const std::string& action, const std::vector<std::string>& files)
{
    auto emit = [&](const OctusHistory& h) {
        if (g.format == "json") {
            Replay r = replay(h);
            json j = digraph_to_json(r.graph);
            j["labels"] = r.labels;
            j["history"] = format_history(h);
            std::cout << j.dump(2) << "\n";
        } else if (g.format == "dot") {
            std::cout << format_dot(replay(h).graph);
        } else {
            std::cout << format_history(h);
        }
    };
    if (action == "check") {
        if (files.size() != 1)
            throw UsageError("octus check <digraph>");
        auto h = is_octus(load_digraph(files[0]));
        if (!h) {
            std::cout << "not an octus\n";
            return kViolation;
        }
        emit(*h);
        return kOk;
    }
    if (action == "complete") {
        if (files.size() != 1)
            throw UsageError("octus complete <history>");
        emit(complete_to_maximal(parse_history(read_text(files[0]))));
        return kOk;
    }
    if (action == "span") {
        if (files.size() != 2)
            throw UsageError("octus span <maximal-history> <digraph>");
        OctusHistory m = parse_history(read_text(files[0]));
        Digraph f = load_digraph(files[1]);
        std::vector<Vertex> vertices;
        for (Vertex v = 0; v < f.order(); ++v)
            if (f.out_degree(v) + f.in_degree(v) > 0 || f.order() == 1)
                vertices.push_back(v);
        emit(spanning_maximal(m, vertices, f.arcs()));
        return kOk;
    }
    throw UsageError("octus action must be check, complete or span");
}

int cmd_bounds(const Globals& g, const std::string& file, bool generic, bool perfect, int estimate, int isolated)
{
    Digraph f = load_digraph(file);
    BoundExpr b = derive_bound(f, generic);
    if (isolated > 0)
        b = isolated_vertices(b, isolated);
    std::optional<Perfection> perf;
    if (perfect)
        perf = mader_perfect(f);
    std::optional<LowerEstimate> est;
    if (estimate > 0)
        est = estimate_lower(f, estimate, 0, 7, g.seed);
    if (g.format == "json") {
        json j{{"pattern", digraph_to_json(b.pattern)},
               {"lower", b.lower.str()},
               {"upper", format_big(b.upper)},
               {"derivation", format_bound(b)}};
        if (perf)
            j["mader_perfect"] = perfection_name(*perf);
        if (est)
            j["estimate"] = {{"lower", est->lower}, {"witness", digraph_to_json(est->witness)}, {"examined", est->examined}};
        std::cout << j.dump(2) << "\n";
        return kOk;
    }
    std::cout << format_bound(b);
    if (isolated > 0) {
        Digraph plain = load_digraph(file);
        std::cout << "k_F: " << format_big(isolated_threshold(derive_bound(plain, generic))) << "\n";
    }
    if (perf)
        std::cout << "mader_perfect: " << perfection_name(*perf) << "\n";
    if (est) {
        std::cout << "estimate_lower: " << est->lower << " (" << est->examined << " hosts examined)\n";
        std::cout << "witness:\n" << format_digraph(est->witness);
    }
    return kOk;
}

int cmd_campaign(const Globals& g, const std::string& id, CampaignParams p)
{
    p.seed = g.seed;
    p.jobs = g.jobs;
    CampaignReport r = run_conjecture(id, p);
    if (g.format == "json") {
        json j{{"campaign", r.id}, {"seed", r.seed}, {"instances", r.instances}, {"filtered", r.filtered}};
        json details = json::object();
        for (const auto& [k, v] : r.details)
            details[k] = v;
        j["details"] = details;
        json cex = json::array();
        for (const auto& c : r.counterexamples)
            cex.push_back(c.certificate);
        j["counterexamples"] = cex;
        if (!g.deterministic)
            j["wall_seconds"] = r.wall_seconds;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << format_report(r, !g.deterministic);
    }
    return r.counterexamples.empty() ? kOk : kViolation;
}

int cmd_verify(const Globals& g, const std::string& file)
{
    const std::string text = read_text(file);
    VerifyOutcome v = verify_certificate(std::string_view(text));
    if (g.format == "json")
        std::cout << json{{"ok", v.ok}, {"message", v.message}}.dump(2) << "\n";
    else
        std::cout << (v.ok ? "ok: " : "violation: ") << v.message << "\n";
    return v.ok ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dichromatic number, subdivisions and Mader-number tools"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Seed for random generation")->capture_default_str();
    app.add_flag("--deterministic", g.deterministic, "Byte-identical output (no timings, sequential order)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}))->capture_default_str();
    app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();

    std::string file, file2, target, family, action, pattern_file, from, to, id;
    std::vector<std::string> rest;
    int k = 0, max_len = 0, fan_vertex = -1, estimate = 0, isolated = 0;
    bool generic = false, perfect = false;
    CampaignParams cp;

    auto* solve = app.add_subcommand("solve", "Exact dichromatic number with an optimal acyclic coloring");
    solve->add_option("digraph", file, "Digraph file ('-' for stdin)")->required();

    auto* dicrit = app.add_subcommand("dicritical", "Extract a k-dicritical subdigraph");
    dicrit->add_option("digraph", file)->required();
    dicrit->add_option("--k", k, "Target dichromatic number (default: that of the input)");

    auto* extract = app.add_subcommand("extract", "Constructive subdivision extraction");
    extract->add_option("target", target, "K4, K4s, W4+, W4-, K3-e or octus")->required();
    extract->add_option("digraph", file)->required();
    extract->add_option("--pattern", pattern_file, "Octus pattern for target 'octus'");

    auto* find = app.add_subcommand("find-subdivision", "Exhaustive subdivision search");
    find->add_option("host", file)->required();
    find->add_option("pattern", file2)->required();
    find->add_option("--max-length", max_len, "Cap on subdivision path length (arcs)");

    auto* menger = app.add_subcommand("menger", "Disjoint A-B dipaths with a minimum separator, or a fan");
    menger->add_option("digraph", file)->required();
    menger->add_option("--from", from, "A as comma-separated vertices");
    menger->add_option("--to", to, "B as comma-separated vertices")->required();
    menger->add_option("--fan", fan_vertex, "Fan source vertex (instead of --from)");
    menger->add_option("--k", k, "Fan size");

    auto* gen = app.add_subcommand("generate", "Emit a named digraph family");
    gen->add_option("family", family,
                    "complete N | cycle L | path L | oriented-cycle L BITS | bipath T | tournament4 NAME | "
                    "clique-minus-bicycle K | k3-minus-e | f-k K | random N P | random-tournament N")
        ->required();
    gen->add_option("args", rest, "Family parameters");

    auto* octus = app.add_subcommand("octus", "Octus recognition, completion and spanning");
    octus->add_option("action", action, "check | complete | span")->required()->check(
        CLI::IsMember({"check", "complete", "span"}));
    octus->add_option("files", rest, "Inputs")->required();

    auto* bounds = app.add_subcommand("bounds", "Mader-number interval with its derivation");
    bounds->add_option("pattern", file)->required();
    bounds->add_flag("--generic", generic, "Allow the generic 4^m(n-1)+1 upper bound");
    bounds->add_flag("--perfect", perfect, "Report Mader-perfect status (order <= 6)");
    bounds->add_option("--estimate", estimate, "Search hosts up to this order for a lower bound")->check(
        CLI::Range(1, kMaxEnumerationOrder));
    bounds->add_option("--isolated", isolated, "Add this many isolated vertices")->check(CLI::NonNegativeNumber);

    auto* campaign = app.add_subcommand("campaign", "Conjecture search campaigns");
    campaign->add_option("id", id, "biK3-mader4 | bicycle-subdivision | madperf-linear")->required()->check(
        CLI::IsMember({"biK3-mader4", "bicycle-subdivision", "madperf-linear"}));
    campaign->add_option("--n-max", cp.n_max, "Exhaustive order bound")->capture_default_str();
    campaign->add_option("--samples", cp.samples, "Random hosts beyond the enumeration")->capture_default_str();
    campaign->add_option("--sample-order", cp.sample_order, "Order of random hosts")->capture_default_str();
    campaign->add_option("--k", cp.k, "Pattern order for madperf-linear")->capture_default_str();
    campaign->add_option("--host-n-max", cp.host_n_max, "Refuting host order for madperf-linear")
        ->capture_default_str();
    std::string cert_dir;
    campaign->add_option("--certificates", cert_dir, "Directory for counterexample certificates");

    auto* verify = app.add_subcommand("verify", "Zero-trust certificate check");
    verify->add_option("certificate", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (solve->parsed())
            return cmd_solve(g, file);
        if (dicrit->parsed())
            return cmd_dicritical(g, file, k);
        if (extract->parsed())
            return cmd_extract(g, target, file, pattern_file);
        if (find->parsed())
            return cmd_find(g, file, file2, max_len);
        if (menger->parsed())
            return cmd_menger(g, file, from, to, fan_vertex, k);
        if (gen->parsed())
            return cmd_generate(g, family, rest);
        if (octus->parsed())
            return cmd_octus(g, action, rest);
        if (bounds->parsed())
            return cmd_bounds(g, file, generic, perfect, estimate, isolated);
        if (campaign->parsed()) {
            if (!cert_dir.empty())
                cp.certificate_dir = cert_dir;
            return cmd_campaign(g, id, cp);
        }
        if (verify->parsed())
            return cmd_verify(g, file);
    } catch (const InternalError& e) {
        std::cerr << "mader: " << e.what() << "\n";
        return kInternal;
    } catch (const ParseError& e) {
        std::cerr << "mader: parse error at line " << e.line << ": " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "mader: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mader: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "mader: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "mader: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
