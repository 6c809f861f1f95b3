#include "mader/certificate.hpp"
#include "mader/families.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace mader;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

const std::string& cli()
{
    static const std::string path = [] {
        const char* p = std::getenv("MADER_CLI");
        return std::string(p ? p : "mader");
    }();
    return path;
}

Run run(const std::string& args)
{
    Run r;
    std::string cmd = cli() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("mader-cli-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const
    {
        fs::path p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

} // namespace

TEST_CASE("generate emits the digraph text format")
{
    Run r = run("generate clique-minus-bicycle 3");
    CHECK(r.code == 0);
    CHECK(parse_digraph(r.out) == clique_minus_bicycle(3));
    Run rnd = run("--seed 5 generate random 6 0.4");
    CHECK(parse_digraph(rnd.out) == random_digraph({6, 0.4, 5}));
    CHECK(run("generate no-such-family").code == 2);
    CHECK(run("generate tournament4 W4+").code == 0);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run("").code == 2);
    CHECK(run("solve").code == 2);
    CHECK(run("--format yaml solve x").code == 2);
    CHECK(run("solve /nonexistent/file").code == 2);
    CHECK(run("campaign biK3-mader4 --n-max 9").code == 2);
}

TEST_CASE("solve, dicritical and extraction")
{
    TempDir tmp;
    std::string host = tmp.write("k5.txt", format_digraph(clique_minus_bicycle(4)));
    Run s = run("solve " + host);
    CHECK(s.code == 0);
    CHECK(s.out.find("# dichromatic number 4") == 0);
    Run j = run("--format json solve " + host);
    CHECK(verify_certificate(std::string_view(j.out)).ok);

    Run dc = run("dicritical " + host);
    CHECK(dc.code == 0);
    CHECK(parse_digraph(dc.out).order() >= 4);

    for (const char* t : {"K4", "K4s", "W4+", "W4-", "K3-e"}) {
        Run e = run(std::string("--format json extract ") + t + " " + host);
        CHECK(e.code == 0);
        std::string cert = tmp.write("cert.json", e.out);
        CHECK(run("verify " + cert).code == 0);
    }
    std::string pattern = tmp.write("c4.txt", format_digraph(oriented_cycle(4, 0b0110)));
    CHECK(run("extract octus --pattern " + pattern + " " + host).code == 0);
    std::string small = tmp.write("c3.txt", format_digraph(directed_cycle(3)));
    CHECK(run("extract K4 " + small).code == 2);
}

TEST_CASE("verify catches a perturbed certificate")
{
    TempDir tmp;
    auto e = find_subdivision(directed_cycle(6), directed_cycle(3));
    REQUIRE(e);
    auto j = embedding_certificate(*e);
    CHECK(run("verify " + tmp.write("good.json", j.dump())).code == 0);
    for (auto& p : j["paths"])
        if (p["path"].size() > 2) {
            p["path"][1] = 5 - p["path"][1].get<int>();
            break;
        }
    Run bad = run("verify " + tmp.write("bad.json", j.dump()));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("violation") == 0);
    CHECK(run("verify " + tmp.write("broken.json", "{\n\"kind\":\n")).code == 2);
}

TEST_CASE("find-subdivision and menger")
{
    TempDir tmp;
    std::string host = tmp.write("h.txt", format_digraph(clique_minus_bicycle(3)));
    std::string k3 = tmp.write("k3.txt", format_digraph(complete_bidigraph(3)));
    std::string c3 = tmp.write("c3.txt", format_digraph(directed_cycle(3)));
    Run none = run("find-subdivision " + host + " " + k3);
    CHECK(none.code == 1);
    CHECK(none.out == "none\n");
    CHECK(run("find-subdivision " + host + " " + c3).code == 0);
    Run m = run("menger " + host + " --from 0,1 --to 2,3");
    CHECK(m.code == 0);
    CHECK(m.out.find("paths 2") == 0);
    Run fan = run("menger " + host + " --fan 0 --to 2,3 --k 2");
    CHECK(fan.code == 0);
}

TEST_CASE("octus subcommands")
{
    TempDir tmp;
    std::string path = tmp.write("p.txt", format_digraph(Digraph::build(3, {{0, 1}, {2, 1}})));
    Run check = run("octus check " + path);
    CHECK(check.code == 0);
    std::string hist = tmp.write("h.txt", check.out);
    Run complete = run("octus complete " + hist);
    CHECK(complete.code == 0);
    std::string maximal = tmp.write("m.txt", complete.out);
    CHECK(run("octus span " + maximal + " " + path).code == 0);
    std::string k3e = tmp.write("k3e.txt", format_digraph(k3_minus_e()));
    CHECK(run("octus check " + k3e).code == 1);
}

TEST_CASE("bounds output")
{
    TempDir tmp;
    std::string k3 = tmp.write("k3.txt", format_digraph(complete_bidigraph(3)));
    Run b = run("bounds " + k3);
    CHECK(b.code == 0);
    CHECK(b.out.find("lower: 4") != std::string::npos);
    CHECK(b.out.find("upper: 9") != std::string::npos);
    std::string c3 = tmp.write("c3.txt", format_digraph(directed_cycle(3)));
    Run iso = run("bounds --isolated 2 " + c3);
    CHECK(iso.out.find("k_F: 2") != std::string::npos);
    CHECK(iso.out.find("lower: 5") != std::string::npos);
    CHECK(iso.out.find("upper: 5") != std::string::npos);
}

TEST_CASE("deterministic runs are byte-identical")
{
    const std::string args = "--deterministic --seed 3 --jobs 3 campaign biK3-mader4 --n-max 4 --samples 10 --sample-order 6";
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("counterexamples: 0") != std::string::npos);
    CHECK(a.out.find("wall_seconds") == std::string::npos);
    Run g1 = run("--deterministic --seed 8 generate random 7 0.3");
    Run g2 = run("--deterministic --seed 8 generate random 7 0.3");
    CHECK(g1.out == g2.out);
}
