#include "treeline/testkit.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

namespace treeline {

namespace {

// Index-level Pruefer decode: fills adj with neighbor masks.
void decode_to_masks(const std::vector<int>& code, int n,
                     std::array<uint16_t, 8>& adj) {
  adj.fill(0);
  std::array<int, 8> degree;
  for (int v = 0; v < n; ++v) degree[v] = 1;
  for (int c : code) ++degree[c];
  auto join = [&adj](int u, int v) {
    adj[u] |= static_cast<uint16_t>(1u << v);
    adj[v] |= static_cast<uint16_t>(1u << u);
  };
  for (int c : code) {
    for (int v = 0; v < n; ++v) {
      if (degree[v] == 1) {
        join(v, c);
        degree[v] = 0;
        --degree[c];
        break;
      }
    }
  }
  int first = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (first < 0) {
        first = v;
      } else {
        join(first, v);
      }
    }
  }
}

std::vector<std::pair<int, int>> mask_edges(const std::array<uint16_t, 8>& adj,
                                            int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (adj[u] >> v & 1u) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// All labeled trees on n vertices as neighbor masks, built once per size.
// 8^6 = 262144 entries at the top size, a couple of megabytes.
const std::vector<std::array<uint16_t, 8>>& tree_masks(int n) {
  static std::array<std::vector<std::array<uint16_t, 8>>, 9> cache;
  auto& trees = cache[n];
  if (!trees.empty()) return trees;
  std::vector<int> code(n - 2, 0);
  std::array<uint16_t, 8> adj;
  while (true) {
    decode_to_masks(code, n, adj);
    trees.push_back(adj);
    int i = static_cast<int>(code.size()) - 1;
    while (i >= 0 && code[i] == n - 1) code[i--] = 0;
    if (i < 0) break;
    ++code[i];
  }
  return trees;
}

bool induces_one_component(const std::array<uint16_t, 8>& adj, uint16_t m) {
  const uint16_t start = m & static_cast<uint16_t>(-m);
  uint16_t reached = start;
  while (true) {
    uint16_t next = reached;
    for (uint16_t rest = reached; rest != 0; rest &= rest - 1) {
      next |= adj[std::countr_zero(rest)] & m;
    }
    if (next == reached) return reached == m;
    reached = next;
  }
}

}  // namespace

Tree prufer_decode(const GroundSet& w, const std::vector<std::string>& code) {
  const int n = w.size();
  if (n < 2) throw Error("prufer_decode: ground set smaller than 2");
  if (static_cast<int>(code.size()) != n - 2) {
    throw Error("prufer_decode: code length must be " + std::to_string(n - 2));
  }
  if (n > 16) throw Error("prufer_decode: ground set larger than 16");
  std::vector<int> idx;
  for (const auto& label : code) {
    auto i = w.index_of(label);
    if (!i) throw Error("prufer_decode: unknown label \"" + label + "\"");
    idx.push_back(*i);
  }

  std::vector<int> degree(n, 1);
  for (int c : idx) ++degree[c];
  std::vector<std::pair<int, int>> edges;
  for (int c : idx) {
    for (int v = 0; v < n; ++v) {
      if (degree[v] == 1) {
        edges.emplace_back(std::min(v, c), std::max(v, c));
        degree[v] = 0;
        --degree[c];
        break;
      }
    }
  }
  int first = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (first < 0) {
        first = v;
      } else {
        edges.emplace_back(first, v);
      }
    }
  }
  return Tree(Graph(w, edges));
}

std::vector<std::string> prufer_encode(const Tree& t) {
  const int n = t.vertices().size();
  if (n < 2) throw Error("prufer_encode: tree smaller than 2 vertices");
  std::vector<Bitset> nb;
  std::vector<int> degree;
  for (int v = 0; v < n; ++v) {
    nb.push_back(t.graph().neighbors(v));
    degree.push_back(static_cast<int>(nb.back().count()));
  }
  std::vector<std::string> code;
  for (int step = 0; step < n - 2; ++step) {
    for (int v = 0; v < n; ++v) {
      if (degree[v] == 1) {
        const int u = static_cast<int>(nb[v].find_first());
        code.push_back(t.vertices().label(u));
        degree[v] = 0;
        nb[u].reset(v);
        --degree[u];
        break;
      }
    }
  }
  return code;
}

void enumerate_labeled_trees(const GroundSet& w,
                             const std::function<bool(const Tree&)>& visit) {
  const int n = w.size();
  if (n < 2 || n > 8) {
    throw Error("enumerate_labeled_trees: ground set size must be in [2, 8]");
  }
  for (const auto& adj : tree_masks(n)) {
    if (!visit(Tree(Graph(w, mask_edges(adj, n))))) return;
  }
}

std::optional<Tree> realize_tree_bruteforce(const SetFamily& f) {
  const int n = f.ground().size();
  if (n < 1 || n > 8) {
    throw Error("realize_tree_bruteforce: ground set size must be in [1, 8]");
  }

  std::vector<uint16_t> wanted;
  for (const auto& s : f.sets()) {
    if (s.members.none()) return std::nullopt;  // empty set induces 0 components
    uint16_t m = 0;
    for (auto v = s.members.find_first(); v != Bitset::npos;
         v = s.members.find_next(v)) {
      m |= static_cast<uint16_t>(1u << v);
    }
    wanted.push_back(m);
  }
  if (n == 1) return Tree(Graph(f.ground(), std::vector<std::pair<int, int>>{}));

  for (const auto& adj : tree_masks(n)) {
    bool ok = true;
    for (uint16_t m : wanted) {
      if (!induces_one_component(adj, m)) {
        ok = false;
        break;
      }
    }
    if (ok) return Tree(Graph(f.ground(), mask_edges(adj, n)));
  }
  return std::nullopt;
}

SetFamily counterexample_truncation(int n) {
  if (n < 3) throw Error("counterexample_truncation: n must be at least 3");
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i) labels.push_back(std::to_string(i));
  GroundSet w(labels);

  std::vector<FamilySet> sets;
  for (int i = 1; i <= n - 1; ++i) {
    Bitset rung = w.none();
    rung.set(*w.index_of(std::to_string(i)));
    rung.set(*w.index_of(std::to_string(i + 1)));
    sets.push_back({"e" + std::to_string(i), rung});

    Bitset tail = w.none();
    tail.set(*w.index_of("0"));
    for (int j = i; j <= n; ++j) tail.set(*w.index_of(std::to_string(j)));
    sets.push_back({"t" + std::to_string(i), tail});
  }
  return SetFamily(w, sets);
}

namespace {

std::string padded(const char* prefix, int i) {
  return std::string(prefix) + (i < 10 ? "0" : "") + std::to_string(i);
}

std::vector<std::string> padded_labels(const char* prefix, int count) {
  std::vector<std::string> labels;
  for (int i = 0; i < count; ++i) labels.push_back(padded(prefix, i));
  return labels;
}

}  // namespace

SetFamily random_family(int ground_size, int set_count, int density_pct,
                        uint64_t seed) {
  if (ground_size < 1 || ground_size > 99 || set_count < 0 || set_count > 99 ||
      density_pct < 0 || density_pct > 100) {
    throw Error("random_family: parameters out of range");
  }
  GroundSet w(padded_labels("v", ground_size));
  SplitMix64 rng(seed);
  std::vector<FamilySet> sets;
  for (int s = 0; s < set_count; ++s) {
    Bitset m = w.none();
    for (int v = 0; v < ground_size; ++v) {
      if (rng.below(100) < static_cast<uint64_t>(density_pct)) m.set(v);
    }
    sets.push_back({padded("s", s), m});
  }
  return SetFamily(w, sets);
}

Graph random_chordal(int n, uint64_t seed) {
  if (n < 1 || n > 99) throw Error("random_chordal: size out of range");
  SplitMix64 rng(seed);
  std::vector<std::vector<int>> bags{{0}};
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    const auto& bag = bags[rng.below(bags.size())];
    // Random subset of the bag, at most 3 vertices, kept sorted.
    std::vector<int> sub;
    for (int u : bag) {
      if (rng.below(100) < 60 && sub.size() < 3) sub.push_back(u);
    }
    for (int u : sub) edges.emplace_back(u, v);
    sub.push_back(v);
    bags.push_back(std::move(sub));
  }
  return Graph(GroundSet(padded_labels("v", n)), edges);
}

Graph random_interval(int n, uint64_t seed) {
  if (n < 1 || n > 99) throw Error("random_interval: size out of range");
  SplitMix64 rng(seed);
  std::vector<std::pair<int, int>> segs;
  for (int v = 0; v < n; ++v) {
    int a = static_cast<int>(rng.below(2 * n));
    int b = static_cast<int>(rng.below(2 * n));
    segs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (segs[u].first <= segs[v].second && segs[v].first <= segs[u].second) {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph(GroundSet(padded_labels("v", n)), edges);
}

}  // namespace treeline
