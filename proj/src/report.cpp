#include "treeline/report.hpp"

namespace treeline {

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_string(std::string_view bytes) {
  static const char* hex = "0123456789abcdef";
  const uint64_t h = fnv1a64(bytes);
  std::string out = "fnv1a64:";
  for (int i = 15; i >= 0; --i) out += hex[h >> (4 * i) & 0xf];
  return out;
}

nlohmann::json tree_json(const Tree& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : t.graph().edge_labels()) {
    edges.push_back(nlohmann::json::array({u, v}));
  }
  return {{"vertices", t.vertices().labels()}, {"edges", edges}};
}

nlohmann::json ordering_json(const Ordering& ord) {
  return nlohmann::json(ord.labels());
}

nlohmann::json helly_json(const HellyViolation& v) {
  return {{"type", "helly-violation"}, {"witness_sets", v.witness_sets}};
}

nlohmann::json cycle_json(const ChordlessCycle& c) {
  return {{"type", "chordless-cycle"}, {"cycle", c.cycle}};
}

nlohmann::json obstruction_json(const ObstructionTriple& t) {
  return {{"type", "obstruction-triple"},
          {"vertices", t.vertices},
          {"witnesses", t.witnesses}};
}

nlohmann::json decomposition_json(const PathDecomposition& d) {
  return {{"bags", d.bags}};
}

nlohmann::json decomposition_violation_json(const DecompositionViolation& v) {
  return {{"type", "decomposition-violation"},
          {"kind", v.kind},
          {"vertices", v.vertices},
          {"bag_indices", v.bag_indices}};
}

nlohmann::json representation_json(const SubtreeRepresentation& r) {
  return {{"host", tree_json(r.host)}, {"subtrees", r.subtrees}};
}

nlohmann::json chain_json(const MeetingChainReport& r) {
  return {{"depth", r.depth}, {"chain", r.chain}};
}

}  // namespace treeline
