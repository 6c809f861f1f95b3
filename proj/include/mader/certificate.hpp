#pragma once

#include "mader/coloring.hpp"
#include "mader/digraph.hpp"
#include "mader/subdivision.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace mader {

nlohmann::json digraph_to_json(const Digraph& d);
Digraph digraph_from_json(const nlohmann::json& j);

/// {"kind":"embedding", pattern, host, host_hash, branch, paths}
nlohmann::json embedding_certificate(const SubdivisionEmbedding& e);
SubdivisionEmbedding embedding_from_json(const nlohmann::json& j);

/// {"kind":"coloring", digraph, host_hash, k, colors}
nlohmann::json coloring_certificate(const Digraph& d, const AcyclicColoring& c);

/// {"kind":"separator", digraph, host_hash, A, B, cut}
nlohmann::json separator_certificate(const Digraph& d, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                                     const std::vector<Vertex>& cut);

/// {"kind":"counterexample", conjecture, digraph, host_hash, claim}
/// claim: "no-subdivision" with a pattern and a dichromatic lower bound, or
/// "no-bicycle" with a dichromatic lower bound.
nlohmann::json counterexample_certificate(const std::string& conjecture, const Digraph& d, int chi_at_least,
                                          const std::vector<Digraph>& absent_patterns);

struct VerifyOutcome {
    bool ok = false;
    std::string message;
};

/// Zero-trust re-check of any certificate kind above. Throws ParseError
/// (with the line of the offending byte) on malformed JSON.
VerifyOutcome verify_certificate(std::string_view text);
VerifyOutcome verify_certificate(const nlohmann::json& j);

} // namespace mader
