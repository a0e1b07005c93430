#include "treeline/tree_realizer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace treeline {

namespace {

bool passes_fleet_checks(const SetFamily& f) {
  if (check_helly_triples(f)) return false;
  return is_chordal(intersection_graph(f));
}

// A name not used by any set of f, derived from the wanted one.
std::string fresh_name(const SetFamily& f, std::string wanted) {
  while (f.index_of(wanted)) wanted.insert(wanted.begin(), '+');
  return wanted;
}

SetFamily with_extra_set(const SetFamily& f, const std::string& name, Bitset members) {
  auto sets = f.sets();
  sets.push_back({name, std::move(members)});
  return SetFamily(f.ground(), std::move(sets));
}

}  // namespace

// --- Fleet -------------------------------------------------------------------

Fleet::Fleet(SetFamily family) : family_(std::move(family)) {
  if (family_.ground().size() < 1) throw Error("fleet needs a nonempty ground set");
  bool has_ground = false;
  for (const auto& s : family_.sets())
    if (s.members.all() && s.members.any()) has_ground = true;
  if (!has_ground)
    throw Error("fleet must contain the full ground set as a member");
  if (check_helly_triples(family_))
    throw Error("fleet family fails the Helly check");
  if (!is_chordal(intersection_graph(family_)))
    throw Error("fleet intersection graph is not chordal");
  for (int i = 0; i < family_.size(); ++i)
    if (family_.set(i).members.count() == 2) {
      auto idx = bit_indices(family_.set(i).members);
      edge_ships_.emplace_back(idx[0], idx[1]);
    }
  std::sort(edge_ships_.begin(), edge_ships_.end());
  edge_ships_.erase(std::unique(edge_ships_.begin(), edge_ships_.end()),
                    edge_ships_.end());
}

// --- extension ---------------------------------------------------------------

Fleet extend_fleet_maximally(const Fleet& fleet) {
  SetFamily current = fleet.family();
  const GroundSet& w = current.ground();
  const int n = w.size();

  std::set<Bitset> present;
  for (const auto& s : current.sets())
    if (s.members.count() == 2) present.insert(s.members);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Bitset pair(n);
      pair.set(i);
      pair.set(j);
      if (present.count(pair)) continue;
      auto name = fresh_name(current, "+" + w.label(i) + "," + w.label(j));
      SetFamily trial = with_extra_set(current, name, pair);
      if (passes_fleet_checks(trial)) {
        current = std::move(trial);
        present.insert(std::move(pair));
      }
    }
  return Fleet(std::move(current));
}

// --- spanning tree -----------------------------------------------------------

Tree spanning_tree_of_edge_ships(const Fleet& fleet) {
  const GroundSet& w = fleet.ground();
  const int n = w.size();
  std::vector<Bitset> adj(n, Bitset(n));
  for (auto [a, b] : fleet.edge_ships()) {
    adj[a].set(b);
    adj[b].set(a);
  }

  std::vector<std::pair<int, int>> tree_edges;
  Bitset seen(n);
  std::vector<int> queue{0};
  seen.set(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int u : bit_indices(adj[v]))
      if (!seen.test(u)) {
        seen.set(u);
        tree_edges.emplace_back(std::min(u, v), std::max(u, v));
        queue.push_back(u);
      }
  }
  if (seen.count() != static_cast<std::size_t>(n))
    throw Error("edge-ship graph does not span the ground set");
  return Tree(Graph(w, std::move(tree_edges)));
}

// --- disconnected meetings ---------------------------------------------------

namespace {

// Components of the subgraph on `subset` whose edges are the fleet's
// 2-element members lying inside it.
std::vector<Bitset> edge_ship_components(const Fleet& fleet, const Bitset& subset) {
  const int n = fleet.ground().size();
  std::vector<Bitset> adj(n, Bitset(n));
  for (auto [a, b] : fleet.edge_ships())
    if (subset.test(a) && subset.test(b)) {
      adj[a].set(b);
      adj[b].set(a);
    }
  std::vector<Bitset> parts;
  Bitset todo = subset;
  while (todo.any()) {
    Bitset comp(n);
    std::vector<int> stack{static_cast<int>(todo.find_first())};
    todo.reset(stack[0]);
    comp.set(stack[0]);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : bit_indices(adj[v] & todo)) {
        todo.reset(u);
        comp.set(u);
        stack.push_back(u);
      }
    }
    parts.push_back(std::move(comp));
  }
  return parts;
}

}  // namespace

std::optional<DisconnectedMeeting> find_disconnected_meeting(const Fleet& fleet) {
  const SetFamily& f = fleet.family();

  // All meetings: close the member sets under pairwise intersection, keeping
  // the first derivation of each as its generator list.
  std::vector<Bitset> meetings;
  std::map<Bitset, std::vector<int>> generators;
  for (int i = 0; i < f.size(); ++i) {
    const Bitset& s = f.set(i).members;
    if (s.none()) continue;
    if (generators.emplace(s, std::vector<int>{i}).second) meetings.push_back(s);
  }
  for (std::size_t a = 0; a < meetings.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      Bitset meet = meetings[a] & meetings[b];
      if (meet.none()) continue;
      if (generators.count(meet)) continue;
      std::vector<int> gen = generators[meetings[a]];
      for (int i : generators[meetings[b]]) gen.push_back(i);
      std::sort(gen.begin(), gen.end());
      gen.erase(std::unique(gen.begin(), gen.end()), gen.end());
      generators.emplace(meet, std::move(gen));
      meetings.push_back(std::move(meet));
    }

  // Smallest disconnected meeting; ties broken by mask comparison.  A
  // minimum-cardinality one is automatically inclusion-wise minimal.
  std::optional<Bitset> best;
  std::vector<Bitset> best_parts;
  for (const auto& m : meetings) {
    auto parts = edge_ship_components(fleet, m);
    if (parts.size() < 2) continue;
    if (!best || m.count() < best->count() ||
        (m.count() == best->count() && m < *best)) {
      best = m;
      best_parts = std::move(parts);
    }
  }
  if (!best) return std::nullopt;

  DisconnectedMeeting out;
  for (int i : generators[*best]) out.generators.push_back(f.set(i).name);
  out.meeting = f.ground().labels_of(*best);
  for (const auto& p : best_parts) out.parts.push_back(f.ground().labels_of(p));
  std::sort(out.parts.begin(), out.parts.end());
  return out;
}

bool verify_disconnected_meeting(const Fleet& fleet, const DisconnectedMeeting& m) {
  const SetFamily& f = fleet.family();
  if (m.generators.empty() || m.parts.size() < 2) return false;
  Bitset meet = f.ground().all();
  for (const auto& name : m.generators) {
    auto i = f.index_of(name);
    if (!i) return false;
    meet &= f.set(*i).members;
  }
  if (meet.none()) return false;
  if (f.ground().labels_of(meet) != m.meeting) return false;
  auto parts = edge_ship_components(fleet, meet);
  std::vector<std::vector<std::string>> got;
  for (const auto& p : parts) got.push_back(f.ground().labels_of(p));
  std::sort(got.begin(), got.end());
  return got == m.parts;
}

// --- realization -------------------------------------------------------------

RealizeTreeResult realize_tree(const SetFamily& f) {
  if (f.ground().size() < 1) throw Error("realization needs a nonempty ground set");

  // Check the input family as given, so certificates cite input names.
  if (auto violation = check_helly_triples(f)) return *violation;
  auto chordal = check_chordal(intersection_graph(f));
  if (auto* cycle = std::get_if<ChordlessCycle>(&chordal)) return *cycle;

  // Duplicate member sets change nothing; keep the first of each.  Adjoin
  // the ground set, which intersects every (now nonempty) member.
  std::set<Bitset> seen;
  std::vector<FamilySet> sets;
  bool has_ground = false;
  for (const auto& s : f.sets())
    if (seen.insert(s.members).second) {
      if (s.members.all() && s.members.any()) has_ground = true;
      sets.push_back(s);
    }
  SetFamily base(f.ground(), std::move(sets));
  if (!has_ground)
    base = with_extra_set(base, fresh_name(base, "+W"), f.ground().all());

  Fleet maximal = extend_fleet_maximally(Fleet(std::move(base)));
  Tree tree = spanning_tree_of_edge_ships(maximal);

  if (!validate_subtree_representation(tree, f).ok())
    throw Error("internal error: spanning tree fails to realize the family");
  return tree;
}

}  // namespace treeline
