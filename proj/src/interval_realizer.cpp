#include "treeline/interval_realizer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace treeline {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Maximal connected-relative-to-f subsets of x, as bitsets ordered by
// smallest element.  Member sets not contained in x are ignored.
std::vector<Bitset> connectivity_blocks(const SetFamily& f, const Bitset& x) {
  const int n = static_cast<int>(f.ground().size());
  UnionFind uf(n);
  for (const auto& s : f.sets()) {
    if ((s.members & ~x).any() || !s.members.any()) continue;
    const int lead = static_cast<int>(s.members.find_first());
    for (auto v = s.members.find_next(lead); v != Bitset::npos;
         v = s.members.find_next(v)) {
      uf.unite(lead, static_cast<int>(v));
    }
  }
  std::vector<Bitset> blocks;
  std::map<int, int> block_of_root;
  for (auto v = x.find_first(); v != Bitset::npos; v = x.find_next(v)) {
    const int root = uf.find(static_cast<int>(v));
    auto [it, fresh] = block_of_root.try_emplace(root, blocks.size());
    if (fresh) blocks.emplace_back(n);
    blocks[it->second].set(v);
  }
  return blocks;
}

}  // namespace

std::optional<SplitWitness> is_f_connected(const SetFamily& f, const Bitset& x) {
  if (x.size() != static_cast<size_t>(f.ground().size())) {
    throw Error("is_f_connected: bitset size does not match ground set");
  }
  if (x.count() <= 1) return std::nullopt;
  auto blocks = connectivity_blocks(f, x);
  if (blocks.size() == 1) return std::nullopt;
  SplitWitness w;
  w.side_a = f.ground().labels_of(blocks[0]);
  w.side_b = f.ground().labels_of(x & ~blocks[0]);
  return w;
}

std::optional<SplitWitness> is_f_connected(const SetFamily& f,
                                           const std::vector<std::string>& x) {
  return is_f_connected(f, f.ground().subset_of(x));
}

std::vector<std::vector<std::string>> f_connected_components(const SetFamily& f,
                                                             const Bitset& x) {
  if (x.size() != static_cast<size_t>(f.ground().size())) {
    throw Error("f_connected_components: bitset size does not match ground set");
  }
  std::vector<std::vector<std::string>> out;
  for (const auto& b : connectivity_blocks(f, x)) {
    out.push_back(f.ground().labels_of(b));
  }
  return out;
}

std::vector<std::vector<std::string>> f_connected_components(
    const SetFamily& f, const std::vector<std::string>& x) {
  return f_connected_components(f, f.ground().subset_of(x));
}

std::optional<ObstructionTriple> find_obstruction_triple(const SetFamily& f) {
  const int n = static_cast<int>(f.ground().size());
  if (n < 3) return std::nullopt;

  // blocks_without[v] partitions W minus v; block_of[v][u] locates u in it.
  std::vector<std::vector<Bitset>> blocks_without(n);
  std::vector<std::vector<int>> block_of(n, std::vector<int>(n, -1));
  for (int v = 0; v < n; ++v) {
    Bitset x = f.ground().all();
    x.reset(v);
    blocks_without[v] = connectivity_blocks(f, x);
    for (int k = 0; k < static_cast<int>(blocks_without[v].size()); ++k) {
      const auto& b = blocks_without[v][k];
      for (auto u = b.find_first(); u != Bitset::npos; u = b.find_next(u)) {
        block_of[v][u] = k;
      }
    }
  }

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        if (block_of[a][b] != block_of[a][c]) continue;
        if (block_of[b][a] != block_of[b][c]) continue;
        if (block_of[c][a] != block_of[c][b]) continue;
        ObstructionTriple t;
        t.vertices = {f.ground().label(a), f.ground().label(b),
                      f.ground().label(c)};
        t.witnesses = {
            f.ground().labels_of(blocks_without[a][block_of[a][b]]),
            f.ground().labels_of(blocks_without[b][block_of[b][a]]),
            f.ground().labels_of(blocks_without[c][block_of[c][a]])};
        return t;
      }
    }
  }
  return std::nullopt;
}

namespace {

// A rigid unit: the union of an overlap class of member sets, refined into an
// ordered sequence of cells.  Elements within a cell are interchangeable;
// the cell sequence is fixed up to reversal of the whole unit.
struct RigidNode {
  Bitset unit;
  std::vector<Bitset> cells;
};

// Folds s into the cell sequence.  The cells s meets must form a consecutive
// run whose interior lies inside s; end cells split at the boundary of s, and
// elements of s outside the current union attach at one end.  Returns false
// when s cannot be made consecutive against the existing structure.
bool refine_cells(std::vector<Bitset>& cells, Bitset& covered, const Bitset& s) {
  if (cells.empty()) {
    cells.push_back(s);
    covered = s;
    return true;
  }
  const int r = static_cast<int>(cells.size());
  int p = -1, q = -1;
  for (int i = 0; i < r; ++i) {
    if (!cells[i].intersects(s)) continue;
    if (p < 0) p = i;
    if (q >= 0 && q != i - 1) return false;  // hits must be consecutive
    q = i;
  }
  if (p < 0) return false;  // disjoint from every cell
  for (int i = p + 1; i < q; ++i) {
    if ((cells[i] & ~s).any()) return false;  // interior cells must be full
  }

  const Bitset outside = s & ~covered;
  std::vector<Bitset> next;
  next.reserve(cells.size() + 3);
  auto push = [&next](const Bitset& cell) {
    if (cell.any()) next.push_back(cell);
  };

  if (outside.none()) {
    if (p == q && (cells[p] & ~s).any()) return false;  // strictly inside a cell
    for (int i = 0; i < p; ++i) push(cells[i]);
    push(cells[p] & ~s);
    push(cells[p] & s);
    for (int i = p + 1; i < q; ++i) push(cells[i]);
    if (q > p) {
      push(cells[q] & s);
      push(cells[q] & ~s);
    }
    for (int i = q + 1; i < r; ++i) push(cells[i]);
  } else {
    bool right_ok = q == r - 1;
    for (int i = p + 1; right_ok && i < r; ++i) {
      right_ok = (cells[i] & ~s).none();
    }
    bool left_ok = p == 0;
    for (int i = 0; left_ok && i < q; ++i) {
      left_ok = (cells[i] & ~s).none();
    }
    if (right_ok) {
      for (int i = 0; i < p; ++i) push(cells[i]);
      push(cells[p] & ~s);
      push(cells[p] & s);
      for (int i = p + 1; i < r; ++i) push(cells[i]);
      push(outside);
    } else if (left_ok) {
      push(outside);
      for (int i = 0; i < q; ++i) push(cells[i]);
      push(cells[q] & s);
      push(cells[q] & ~s);
      for (int i = q + 1; i < r; ++i) push(cells[i]);
    } else {
      return false;
    }
  }
  cells = std::move(next);
  covered |= s;
  return true;
}

// Builds the rigid node of one overlap class, folding sets in breadth-first
// order from the lowest-indexed set so that each one meets the union so far.
RigidNode build_node(const std::vector<Bitset>& sets,
                     const std::vector<int>& members) {
  RigidNode node;
  std::vector<char> queued(sets.size(), 0);
  std::queue<int> order;
  order.push(members.front());
  queued[members.front()] = 1;
  while (!order.empty()) {
    const int i = order.front();
    order.pop();
    if (!refine_cells(node.cells, node.unit, sets[i])) {
      throw Error("internal error: rigid refinement failed on a realizable family");
    }
    for (int j : members) {
      if (queued[j]) continue;
      const Bitset meet = sets[i] & sets[j];
      if (meet.any() && (sets[i] & ~sets[j]).any() && (sets[j] & ~sets[i]).any()) {
        order.push(j);
        queued[j] = 1;
      }
    }
  }
  return node;
}

}  // namespace

RealizeOrderResult realize_interval_order(const SetFamily& f) {
  if (auto t = find_obstruction_triple(f)) return *t;

  const int n = static_cast<int>(f.ground().size());

  // Sets of size <= 1 and the full ground set are intervals in any order.
  std::vector<Bitset> sets;
  for (const auto& s : f.sets()) {
    if (s.members.count() < 2 || s.members.count() == static_cast<size_t>(n)) {
      continue;
    }
    if (std::find(sets.begin(), sets.end(), s.members) == sets.end()) {
      sets.push_back(s.members);
    }
  }

  // Overlap classes: two sets in one class when connected through pairs that
  // intersect without containment.
  UnionFind uf(static_cast<int>(sets.size()));
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      const Bitset meet = sets[i] & sets[j];
      if (meet.any() && (sets[i] & ~sets[j]).any() && (sets[j] & ~sets[i]).any()) {
        uf.unite(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  std::map<int, std::vector<int>> classes;
  for (size_t i = 0; i < sets.size(); ++i) {
    classes[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  }

  std::vector<RigidNode> nodes;
  for (const auto& [root, members] : classes) {
    nodes.push_back(build_node(sets, members));
  }

  // A lone set equal to another node's unit adds nothing: that unit is
  // already kept contiguous.
  auto redundant = [&nodes](size_t i) {
    if (nodes[i].cells.size() != 1) return false;
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (j != i && nodes[j].unit == nodes[i].unit) return true;
    }
    return false;
  };
  for (size_t i = nodes.size(); i-- > 0;) {
    if (redundant(i)) nodes.erase(nodes.begin() + i);
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i].unit == nodes[j].unit) {
        throw Error("internal error: two rigid units share a union");
      }
    }
  }

  // Units nest laminarly; sort by size so each node's parent is the first
  // strictly larger unit containing it.
  std::sort(nodes.begin(), nodes.end(), [](const RigidNode& a, const RigidNode& b) {
    if (a.unit.count() != b.unit.count()) return a.unit.count() < b.unit.count();
    return a.unit < b.unit;
  });
  const int m = static_cast<int>(nodes.size());
  std::vector<int> parent(m, -1), parent_cell(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if ((nodes[i].unit & ~nodes[j].unit).none() &&
          nodes[j].unit.count() > nodes[i].unit.count()) {
        parent[i] = j;
        for (int c = 0; c < static_cast<int>(nodes[j].cells.size()); ++c) {
          if ((nodes[i].unit & ~nodes[j].cells[c]).none()) {
            parent_cell[i] = c;
            break;
          }
        }
        if (parent_cell[i] < 0) {
          throw Error("internal error: nested unit crosses a cell boundary");
        }
        break;
      }
    }
  }

  std::vector<std::vector<std::vector<int>>> cell_children(m);
  for (int i = 0; i < m; ++i) {
    cell_children[i].resize(nodes[i].cells.size());
  }
  std::vector<int> roots;
  for (int i = 0; i < m; ++i) {
    if (parent[i] < 0) {
      roots.push_back(i);
    } else {
      cell_children[parent[i]][parent_cell[i]].push_back(i);
    }
  }

  // Emission: inside each cell, child units and leftover elements are laid
  // out as blocks ordered by their smallest element.
  std::vector<int> seq;
  seq.reserve(n);
  auto emit_node = [&](auto&& self, int i) -> void {
    for (size_t c = 0; c < nodes[i].cells.size(); ++c) {
      Bitset rest = nodes[i].cells[c];
      std::vector<std::pair<int, int>> units;  // (smallest element, child or -1-v)
      for (int child : cell_children[i][c]) {
        units.emplace_back(static_cast<int>(nodes[child].unit.find_first()), child);
        rest &= ~nodes[child].unit;
      }
      for (auto v = rest.find_first(); v != Bitset::npos; v = rest.find_next(v)) {
        units.emplace_back(static_cast<int>(v), -1 - static_cast<int>(v));
      }
      std::sort(units.begin(), units.end());
      for (const auto& [key, u] : units) {
        if (u >= 0) {
          self(self, u);
        } else {
          seq.push_back(-1 - u);
        }
      }
    }
  };
  Bitset rest = f.ground().all();
  std::vector<std::pair<int, int>> top;
  for (int i : roots) {
    top.emplace_back(static_cast<int>(nodes[i].unit.find_first()), i);
    rest &= ~nodes[i].unit;
  }
  for (auto v = rest.find_first(); v != Bitset::npos; v = rest.find_next(v)) {
    top.emplace_back(static_cast<int>(v), -1 - static_cast<int>(v));
  }
  std::sort(top.begin(), top.end());
  for (const auto& [key, u] : top) {
    if (u >= 0) {
      emit_node(emit_node, u);
    } else {
      seq.push_back(-1 - u);
    }
  }

  Ordering ord(f.ground(), seq);
  if (!verify_interval_ordering(f, ord)) {
    throw Error("internal error: constructed order misses a member set");
  }
  Ordering mirror = ord.reversed();
  if (mirror.labels() < ord.labels()) ord = std::move(mirror);
  return ord;
}

std::optional<Ordering> brute_force_order(const SetFamily& f) {
  const int n = static_cast<int>(f.ground().size());
  if (n > 9) {
    throw Error("brute_force_order: ground set larger than 9");
  }
  std::vector<std::vector<int>> members;
  for (const auto& s : f.sets()) {
    if (s.members.count() >= 2) members.push_back(bit_indices(s.members));
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pos(n);
  do {
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    bool ok = true;
    for (const auto& mem : members) {
      int lo = n, hi = -1;
      for (int v : mem) {
        lo = std::min(lo, pos[v]);
        hi = std::max(hi, pos[v]);
      }
      if (hi - lo + 1 != static_cast<int>(mem.size())) {
        ok = false;
        break;
      }
    }
    if (ok) return Ordering(f.ground(), perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

bool verify_interval_ordering(const SetFamily& f, const Ordering& ord) {
  if (!(ord.ground() == f.ground())) return false;
  const int n = static_cast<int>(f.ground().size());
  std::vector<int> pos = ord.positions();
  for (const auto& s : f.sets()) {
    if (s.members.count() < 2) continue;
    int lo = n, hi = -1;
    for (auto v = s.members.find_first(); v != Bitset::npos;
         v = s.members.find_next(v)) {
      lo = std::min(lo, pos[v]);
      hi = std::max(hi, pos[v]);
    }
    if (hi - lo + 1 != static_cast<int>(s.members.count())) return false;
  }
  return true;
}

bool verify_obstruction_triple(const SetFamily& f, const ObstructionTriple& t) {
  std::array<int, 3> v;
  for (int i = 0; i < 3; ++i) {
    auto idx = f.ground().index_of(t.vertices[i]);
    if (!idx) return false;
    v[i] = *idx;
  }
  if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) return false;
  for (int j = 0; j < 3; ++j) {
    Bitset x;
    try {
      x = f.ground().subset_of(t.witnesses[j]);
    } catch (const Error&) {
      return false;
    }
    for (int i = 0; i < 3; ++i) {
      if (x.test(v[i]) != (i != j)) return false;
    }
    if (is_f_connected(f, x)) return false;
  }
  return true;
}

}  // namespace treeline
