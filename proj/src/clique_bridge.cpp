#include "treeline/clique_bridge.hpp"

#include <algorithm>
#include <set>

namespace treeline {

std::variant<std::vector<std::vector<std::string>>, ChordlessCycle>
maximal_cliques_chordal(const Graph& g) {
  auto peo = check_chordal(g);
  if (auto* cycle = std::get_if<ChordlessCycle>(&peo)) return *cycle;
  const auto& order = std::get<Ordering>(peo);
  const int n = g.n();

  // Sweep the elimination ordering: each vertex with its later neighbors is
  // a clique, and every maximal clique arises this way.
  std::vector<int> rank(n);
  const std::vector<int> pos = order.positions();
  std::vector<Bitset> cands;
  for (int i = 0; i < n; ++i) {
    const int v = order.sequence()[i];
    Bitset c(n);
    c.set(v);
    const Bitset& nb = g.neighbors(v);
    for (auto u = nb.find_first(); u != Bitset::npos; u = nb.find_next(u)) {
      if (pos[u] > i) c.set(u);
    }
    cands.push_back(c);
  }
  std::vector<std::vector<std::string>> cliques;
  for (size_t i = 0; i < cands.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; maximal && j < cands.size(); ++j) {
      maximal = i == j || (cands[i] & ~cands[j]).any();
    }
    if (maximal) cliques.push_back(g.vertices().labels_of(cands[i]));
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

namespace {

std::string clique_name(const std::vector<std::string>& members) {
  std::string name;
  for (const auto& m : members) {
    if (!name.empty()) name += ',';
    name += m;
  }
  return name;
}

// Family over the clique names: one set per graph vertex, holding the
// cliques that contain it.  Returns the family plus the name -> members map.
struct CliqueFamily {
  SetFamily family;
  std::map<std::string, std::vector<std::string>> members_of;
};

CliqueFamily clique_family(const Graph& g,
                           const std::vector<std::vector<std::string>>& cliques) {
  std::vector<std::string> names;
  std::map<std::string, std::vector<std::string>> members_of;
  for (const auto& c : cliques) {
    std::string name = clique_name(c);
    if (!members_of.emplace(name, c).second) {
      throw Error("clique name collision: \"" + name + "\"");
    }
    names.push_back(std::move(name));
  }
  GroundSet cw(names);
  std::vector<FamilySet> sets;
  for (const auto& v : g.vertices().labels()) sets.push_back({v, cw.none()});
  for (const auto& [name, members] : members_of) {
    const int k = *cw.index_of(name);
    for (const auto& v : members) sets[*g.vertices().index_of(v)].members.set(k);
  }
  return {SetFamily(cw, sets), std::move(members_of)};
}

}  // namespace

std::variant<SubtreeRepresentation, ChordlessCycle> subtree_representation(
    const Graph& g) {
  auto mc = maximal_cliques_chordal(g);
  if (auto* cycle = std::get_if<ChordlessCycle>(&mc)) return *cycle;
  const auto& cliques = std::get<std::vector<std::vector<std::string>>>(mc);
  if (cliques.empty()) {
    throw Error("subtree_representation: graph has no vertices");
  }

  auto cf = clique_family(g, cliques);
  auto realized = realize_tree(cf.family);
  auto* host = std::get_if<Tree>(&realized);
  if (host == nullptr) {
    throw Error("internal error: clique family of a chordal graph failed tree realization");
  }

  const int n = g.n();
  for (int u = 0; u < n; ++u) {
    const Bitset& su = cf.family.sets()[u].members;
    if (induced_component_count(*host, su) != 1) {
      throw Error("internal error: clique set induces a disconnected host subgraph");
    }
    for (int v = u + 1; v < n; ++v) {
      const bool meet = su.intersects(cf.family.sets()[v].members);
      if (meet != g.adjacent(u, v)) {
        throw Error("internal error: representation disagrees with adjacency");
      }
    }
  }

  SubtreeRepresentation rep{*host, {}};
  for (int v = 0; v < n; ++v) {
    rep.subtrees[g.vertices().label(v)] =
        cf.family.ground().labels_of(cf.family.sets()[v].members);
  }
  return rep;
}

std::variant<int, DecompositionViolation> verify_path_decomposition(
    const PathDecomposition& d) {
  const Graph& g = d.graph;
  const int n = g.n();
  const int m = static_cast<int>(d.bags.size());
  std::vector<Bitset> bags;
  for (const auto& bag : d.bags) bags.push_back(g.vertices().subset_of(bag));

  for (int v = 0; v < n; ++v) {
    bool covered = false;
    for (const auto& b : bags) covered = covered || b.test(v);
    if (!covered) {
      return DecompositionViolation{"vertex-coverage", {g.vertices().label(v)}, {}};
    }
  }
  for (const auto& [u, v] : g.edges()) {
    bool covered = false;
    for (const auto& b : bags) covered = covered || (b.test(u) && b.test(v));
    if (!covered) {
      return DecompositionViolation{
          "edge-coverage", {g.vertices().label(u), g.vertices().label(v)}, {}};
    }
  }
  for (int v = 0; v < n; ++v) {
    int first = -1, last = -1;
    for (int i = 0; i < m; ++i) {
      if (bags[i].test(v)) {
        if (first < 0) first = i;
        last = i;
      }
    }
    for (int i = first; i <= last; ++i) {
      if (!bags[i].test(v)) {
        return DecompositionViolation{
            "contiguity", {g.vertices().label(v)}, {first, i, last}};
      }
    }
  }

  int width = -1;
  for (const auto& b : bags) {
    width = std::max(width, static_cast<int>(b.count()) - 1);
  }
  return width;
}

LineDecompositionResult line_decomposition_from_cliques(const Graph& g) {
  auto mc = maximal_cliques_chordal(g);
  if (auto* cycle = std::get_if<ChordlessCycle>(&mc)) return *cycle;
  const auto& cliques = std::get<std::vector<std::vector<std::string>>>(mc);
  if (cliques.empty()) {
    return PathDecomposition{g, {{}}};  // no vertices: one empty bag, width -1
  }

  auto cf = clique_family(g, cliques);
  auto r = realize_interval_order(cf.family);
  if (auto* t = std::get_if<ObstructionTriple>(&r)) {
    if (!verify_obstruction_triple(cf.family, *t)) {
      throw Error("internal error: clique obstruction failed re-verification");
    }
    return *t;
  }
  const auto& ord = std::get<Ordering>(r);

  PathDecomposition d{g, {}};
  for (const auto& name : ord.labels()) d.bags.push_back(cf.members_of.at(name));
  auto check = verify_path_decomposition(d);
  if (!std::holds_alternative<int>(check)) {
    throw Error("internal error: clique ordering produced an invalid decomposition");
  }
  return d;
}

namespace {

// DP value together with the witness decomposition of exactly that width.
std::pair<int, PathDecomposition> solve_pathwidth(const Graph& g) {
  const int n = g.n();
  if (n > 15) {
    throw Error("pathwidth_bruteforce: graph larger than 15 vertices");
  }
  if (n == 0) return {-1, PathDecomposition{g, {{}}}};

  std::vector<unsigned> adj(n, 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  const unsigned full = (1u << n) - 1;

  // Vertex separation: place vertices one by one; the cost of a placed set is
  // the number of its vertices that still have unplaced neighbors.  Minimum
  // over orders of the maximum cost equals the path width.
  auto boundary = [&](unsigned s) {
    int b = 0;
    for (int v = 0; v < n; ++v) {
      if ((s >> v & 1u) && (adj[v] & ~s & full)) ++b;
    }
    return b;
  };
  std::vector<uint8_t> f(full + 1, 0);
  std::vector<int8_t> last(full + 1, -1);
  for (unsigned s = 1; s <= full; ++s) {
    int best = n + 1;
    for (int v = 0; v < n; ++v) {
      if (!(s >> v & 1u)) continue;
      const int sub = f[s & ~(1u << v)];
      if (sub < best) {
        best = sub;
        last[s] = static_cast<int8_t>(v);
      }
    }
    f[s] = static_cast<uint8_t>(std::max(best, boundary(s)));
  }

  std::vector<int> order(n);
  unsigned s = full;
  for (int i = n - 1; i >= 0; --i) {
    order[i] = last[s];
    s &= ~(1u << order[i]);
  }

  PathDecomposition d{g, {}};
  unsigned placed = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> bag;
    for (int v = 0; v < n; ++v) {
      if ((placed >> v & 1u) && (adj[v] & ~placed & full)) {
        bag.push_back(g.vertices().label(v));
      }
    }
    bag.push_back(g.vertices().label(order[i]));
    std::sort(bag.begin(), bag.end());
    d.bags.push_back(std::move(bag));
    placed |= 1u << order[i];
  }
  return {f[full], d};
}

}  // namespace

PathDecomposition optimal_path_decomposition(const Graph& g) {
  return solve_pathwidth(g).second;
}

int pathwidth_bruteforce(const Graph& g) {
  auto [value, d] = solve_pathwidth(g);
  auto check = verify_path_decomposition(d);
  auto* width = std::get_if<int>(&check);
  if (width == nullptr || *width != value) {
    throw Error("internal error: optimal decomposition disagrees with its width");
  }
  return value;
}

}  // namespace treeline
