#pragma once

#include "mader/digraph.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mader {

inline constexpr std::string_view kCampaignIds[] = {"biK3-mader4", "bicycle-subdivision", "madperf-linear"};

/// Every field is bounded; run_conjecture rejects values outside the
/// documented ranges.
struct CampaignParams {
    int n_max = 5;          // exhaustive hosts (or patterns) up to this order, <= 5
    int samples = 0;        // extra random hosts, <= 100000
    int sample_order = 7;   // order of sampled hosts, <= 9
    int k = 4;              // madperf-linear: pattern order, 1..5
    int host_n_max = 5;     // madperf-linear: host enumeration used to refute, <= 5
    std::uint64_t seed = 1;
    int jobs = 1;
    /// Counterexample certificates are written here (atomically) when set.
    std::optional<std::string> certificate_dir;
};

struct Counterexample {
    Digraph digraph;
    nlohmann::json certificate;
    std::string path; // empty unless written to disk
};

struct CampaignReport {
    std::string id;
    std::uint64_t instances = 0;
    std::uint64_t filtered = 0; // instances meeting the dichromatic threshold
    std::vector<Counterexample> counterexamples;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> details;
    double wall_seconds = 0.0;
};

CampaignReport run_conjecture(std::string_view id, const CampaignParams& params);

/// Stable field order; wall time omitted when include_time is false.
std::string format_report(const CampaignReport& r, bool include_time = true);

/// splitmix64 step; per-instance seeds are mix(seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

} // namespace mader
