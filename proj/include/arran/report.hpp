#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arran/arrangement.hpp"
#include "arran/character.hpp"
#include "arran/json_io.hpp"
#include "arran/multinet.hpp"
#include "arran/presentation.hpp"

namespace arran::rep {

inline constexpr const char* schema_version = "1";

struct AnalyzeOptions {
    std::size_t infinity_line = static_cast<std::size_t>(-1); // default: last line
    bool reduced_only = false;
    unsigned max_mu = 4;
    std::optional<std::size_t> max_support; // subarrangement sweep when set
    std::uint64_t budget_ms = 30000;        // per enumeration call
    std::optional<unsigned> only_k;         // restrict enumeration to one k
    std::optional<cover::GroupPresentation> presentation; // external pi1 input
    std::vector<Character> characters;      // extra rank-1 systems to evaluate
};

struct AnalysisOutcome {
    io::json report;
    bool consistent = true; // every consistency check passed
};

// Full pipeline: lattice, resonance components, multinet search with pencil
// realizations / monodromy bounds / certificates, the exact eigenspace
// oracle (wiring-based when the arrangement is complexified-real, else the
// supplied presentation, else bounds-only with a warning), the cyclic-cover
// deck action, pullback checks for the supplied characters, and a
// recomputed consistency section. The report is canonical: objects
// serialize with sorted keys, arrays in deterministic library order, and
// every number is an integer or an exact rational string.
AnalysisOutcome analyze(const geom::Arrangement& arr, const AnalyzeOptions& opts = {});

// Sub-reports shared with the narrower CLI commands.
io::json lattice_to_json(const geom::Arrangement& arr, const geom::Lattice& lat);
io::json multinet_to_json(const net::Multinet& mn);
io::json eigenspaces_to_json(const cover::EigenspaceReport& rep);

// Serialized with a trailing newline, keys sorted, two-space indent.
std::string render(const io::json& report);

} // namespace arran::rep
