#ifndef TREELINE_REPORT_HPP
#define TREELINE_REPORT_HPP

#include <json.hpp>

#include "treeline/checkers.hpp"
#include "treeline/clique_bridge.hpp"
#include "treeline/interval_realizer.hpp"
#include "treeline/tree_realizer.hpp"

// JSON views of the domain objects for machine-readable reports.  nlohmann
// objects keep keys sorted, so identical values serialize byte-identically;
// reports stay canonical as long as callers keep volatile data (timings)
// under the reserved key "timings_ms".

namespace treeline {

uint64_t fnv1a64(std::string_view bytes);

// "fnv1a64:" followed by 16 hex digits of the byte hash.
std::string digest_string(std::string_view bytes);

nlohmann::json tree_json(const Tree& t);
nlohmann::json ordering_json(const Ordering& ord);
nlohmann::json helly_json(const HellyViolation& v);
nlohmann::json cycle_json(const ChordlessCycle& c);
nlohmann::json obstruction_json(const ObstructionTriple& t);
nlohmann::json decomposition_json(const PathDecomposition& d);
nlohmann::json decomposition_violation_json(const DecompositionViolation& v);
nlohmann::json representation_json(const SubtreeRepresentation& r);
nlohmann::json chain_json(const MeetingChainReport& r);

}  // namespace treeline

#endif
