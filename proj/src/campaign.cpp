#include "mader/campaign.hpp"

#include "mader/bounds.hpp"
#include "mader/canonical.hpp"
#include "mader/certificate.hpp"
#include "mader/coloring.hpp"
#include "mader/errors.hpp"
#include "mader/families.hpp"
#include "mader/subdivision.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace mader {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

void check_range(bool ok, const std::string& what)
{
    if (!ok)
        throw PreconditionError("campaign parameter out of range: " + what);
}

void validate(const CampaignParams& p)
{
    check_range(p.n_max >= 1 && p.n_max <= kMaxEnumerationOrder, "n_max must be in 1..5");
    check_range(p.samples >= 0 && p.samples <= 100000, "samples must be in 0..100000");
    check_range(p.sample_order >= 1 && p.sample_order <= 9, "sample_order must be in 1..9");
    check_range(p.k >= 1 && p.k <= kMaxEnumerationOrder, "k must be in 1..5");
    check_range(p.host_n_max >= 1 && p.host_n_max <= kMaxEnumerationOrder, "host_n_max must be in 1..5");
    check_range(p.jobs >= 1 && p.jobs <= 256, "jobs must be in 1..256");
}

/// Runs task(i) for i in 0..count-1 on `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        }
    };
    const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
}

Digraph bioriented_cycle(int l)
{
    std::vector<Edge> edges;
    for (int i = 0; i < l; ++i)
        edges.push_back({std::min(i, (i + 1) % l), std::max(i, (i + 1) % l)});
    return biorient(l, edges);
}

struct HostVerdict {
    bool filtered = false;
    std::optional<nlohmann::json> certificate;
};

using HostCheck = std::function<HostVerdict(const Digraph&)>;

HostVerdict check_bik3(const Digraph& d)
{
    static const Digraph k3 = complete_bidigraph(3);
    HostVerdict v;
    if (!dichromatic_at_least(d, 4))
        return v;
    v.filtered = true;
    if (!contains_subdivision(d, k3))
        v.certificate = counterexample_certificate("biK3-mader4", d, 4, {k3});
    return v;
}

HostVerdict check_bicycle(const Digraph& d)
{
    HostVerdict v;
    if (!dichromatic_at_least(d, 3))
        return v;
    v.filtered = true;
    std::vector<Digraph> absent;
    for (int l = 3; l <= d.order(); ++l) {
        Digraph c = bioriented_cycle(l);
        if (contains_subdivision(d, c))
            return v;
        absent.push_back(c);
    }
    v.certificate = counterexample_certificate("bicycle-subdivision", d, 3, absent);
    return v;
}

struct Found {
    int order = 0;
    std::uint64_t key = 0; // enumeration: adjacency code; samples: sample index
    bool sampled = false;
    Counterexample cex;
};

bool found_before(const Found& a, const Found& b)
{
    return std::tie(a.sampled, a.order, a.key) < std::tie(b.sampled, b.order, b.key);
}

void write_atomically(const std::string& path, const std::string& text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp);
        out << text;
        if (!out.flush())
            throw std::runtime_error("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void host_campaign(CampaignReport& report, const CampaignParams& p, const HostCheck& check)
{
    struct Chunk {
        int n;
        std::uint64_t start;
        std::uint64_t end;
    };
    std::vector<Chunk> chunks;
    for (int n = 1; n <= p.n_max; ++n) {
        const std::uint64_t total = labeled_count(n);
        const std::uint64_t step = std::max<std::uint64_t>(1, total / 256);
        for (std::uint64_t s = 0; s < total; s += step)
            chunks.push_back({n, s, std::min(total, s + step)});
    }
    const std::size_t sample_items = static_cast<std::size_t>(p.samples);

    std::mutex mutex;
    std::vector<Found> found;
    std::uint64_t instances = 0;
    std::uint64_t filtered = 0;

    auto record = [&](const Digraph& d, const HostVerdict& v, Found where, std::uint64_t& local_filtered,
                      std::vector<Found>& local_found) {
        if (v.filtered)
            ++local_filtered;
        if (v.certificate) {
            where.cex = {d, *v.certificate, {}};
            local_found.push_back(std::move(where));
        }
    };

    parallel_for(chunks.size() + sample_items, p.jobs, [&](std::size_t item) {
        std::uint64_t local_instances = 0;
        std::uint64_t local_filtered = 0;
        std::vector<Found> local_found;
        if (item < chunks.size()) {
            const Chunk& c = chunks[item];
            for_each_digraph(
                c.n, true,
                [&](const Digraph& d) {
                    ++local_instances;
                    record(d, check(d), {c.n, adjacency_code(d), false, {}}, local_filtered, local_found);
                },
                c.start, c.end);
        } else {
            const std::uint64_t i = item - chunks.size();
            const std::uint64_t s = mix_seed(p.seed, i);
            const double density = 0.35 + 0.6 * static_cast<double>(s >> 11) * 0x1.0p-53;
            Digraph d = random_digraph({p.sample_order, density, mix_seed(s, 1)});
            ++local_instances;
            record(d, check(d), {p.sample_order, i, true, {}}, local_filtered, local_found);
        }
        std::lock_guard lock(mutex);
        instances += local_instances;
        filtered += local_filtered;
        for (auto& f : local_found)
            found.push_back(std::move(f));
    });

    std::sort(found.begin(), found.end(), found_before);
    report.instances = instances;
    report.filtered = filtered;
    for (auto& f : found) {
        if (p.certificate_dir) {
            std::filesystem::create_directories(*p.certificate_dir);
            f.cex.path = (std::filesystem::path(*p.certificate_dir) /
                          (report.id + "-" + digraph_hash(f.cex.digraph) + ".json"))
                             .string();
            write_atomically(f.cex.path, f.cex.certificate.dump(2) + "\n");
        }
        report.counterexamples.push_back(std::move(f.cex));
    }
    report.details.emplace_back("exhaustive_n_max", std::to_string(p.n_max));
    report.details.emplace_back("samples", std::to_string(p.samples));
    report.details.emplace_back("sample_order", std::to_string(p.sample_order));
}

void madperf_campaign(CampaignReport& report, const CampaignParams& p)
{
    const int k = p.k;
    const std::vector<Digraph> patterns = enumerate_digraphs(k, true);

    // Hosts that could refute perfection: chi >= k, at most host_n_max vertices.
    std::vector<Digraph> hosts;
    for (int n = k; n <= p.host_n_max; ++n)
        for_each_digraph(n, true, [&](const Digraph& d) {
            if (dichromatic_at_least(d, k))
                hosts.push_back(d);
        });

    std::vector<Perfection> status(patterns.size());
    std::vector<char> refuted(patterns.size(), 0);
    parallel_for(patterns.size(), p.jobs, [&](std::size_t i) {
        status[i] = mader_perfect(patterns[i]);
        if (status[i] != Perfection::Unknown)
            return;
        for (const auto& h : hosts)
            if (!contains_subdivision(h, patterns[i])) {
                refuted[i] = 1;
                return;
            }
    });

    std::uint64_t perfect = 0;
    std::uint64_t not_perfect = 0;
    std::uint64_t open = 0;
    int max_perfect = -1;
    int max_open = -1;
    std::string example;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const int m = patterns[i].size();
        if (status[i] == Perfection::Perfect) {
            ++perfect;
            if (m > max_perfect) {
                max_perfect = m;
                example = digraph_hash(patterns[i]);
            }
        } else if (status[i] == Perfection::NotPerfect || refuted[i]) {
            ++not_perfect;
        } else {
            ++open;
            max_open = std::max(max_open, m);
        }
    }
    report.instances = patterns.size();
    report.filtered = perfect;
    report.details.emplace_back("order", std::to_string(k));
    report.details.emplace_back("baseline_arcs", std::to_string(2 * k - 1));
    report.details.emplace_back("refuting_hosts", std::to_string(hosts.size()));
    report.details.emplace_back("perfect", std::to_string(perfect));
    report.details.emplace_back("not_perfect", std::to_string(not_perfect));
    report.details.emplace_back("open", std::to_string(open));
    report.details.emplace_back("max_perfect_arcs", max_perfect < 0 ? "none" : std::to_string(max_perfect));
    report.details.emplace_back("max_perfect_example", example.empty() ? "none" : example);
    report.details.emplace_back("max_open_arcs", max_open < 0 ? "none" : std::to_string(max_open));
    if (k >= 3) {
        const Digraph fk = f_k(k).graph;
        bool listed = false;
        for (std::size_t i = 0; i < patterns.size(); ++i)
            if (status[i] == Perfection::Perfect && patterns[i].size() == fk.size() &&
                are_isomorphic(patterns[i], fk))
                listed = true;
        report.details.emplace_back("f_k_perfect", listed ? "yes" : "no");
    }
}

} // namespace

CampaignReport run_conjecture(std::string_view id, const CampaignParams& params)
{
    validate(params);
    const auto started = std::chrono::steady_clock::now();
    CampaignReport report;
    report.id = std::string(id);
    report.seed = params.seed;
    if (id == "biK3-mader4")
        host_campaign(report, params, check_bik3);
    else if (id == "bicycle-subdivision")
        host_campaign(report, params, check_bicycle);
    else if (id == "madperf-linear")
        madperf_campaign(report, params);
    else
        throw PreconditionError("unknown campaign: " + std::string(id));
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

std::string format_report(const CampaignReport& r, bool include_time)
{
    std::ostringstream out;
    out << "campaign: " << r.id << '\n';
    out << "seed: " << r.seed << '\n';
    for (const auto& [key, value] : r.details)
        out << key << ": " << value << '\n';
    out << "instances: " << r.instances << '\n';
    out << "filtered: " << r.filtered << '\n';
    out << "counterexamples: " << r.counterexamples.size() << '\n';
    for (const auto& c : r.counterexamples) {
        out << "  host " << digraph_hash(c.digraph) << " n=" << c.digraph.order() << " m=" << c.digraph.size();
        if (!c.path.empty())
            out << " certificate=" << c.path;
        out << '\n';
    }
    if (include_time) {
        out.setf(std::ios::fixed);
        out.precision(3);
        out << "wall_seconds: " << r.wall_seconds << '\n';
    }
    return out.str();
}

} // namespace mader
