#include "treeline/checkers.hpp"

#include <algorithm>
#include <map>

namespace treeline {

// --- Helly -------------------------------------------------------------------

namespace {

// Drops sets whose removal keeps the total intersection empty, scanning in
// family order.  The input must already be a violation.
std::vector<int> minimize_violation(const SetFamily& f, std::vector<int> witness) {
  for (std::size_t i = 0; i < witness.size();) {
    if (witness.size() == 1) break;
    Bitset total = f.ground().all();
    for (std::size_t j = 0; j < witness.size(); ++j)
      if (j != i) total &= f.set(witness[j]).members;
    if (total.none())
      witness.erase(witness.begin() + i);
    else
      ++i;
  }
  return witness;
}

HellyViolation violation_from(const SetFamily& f, const std::vector<int>& witness) {
  HellyViolation v;
  for (int i : witness) v.witness_sets.push_back(f.set(i).name);
  return v;
}

}  // namespace

std::optional<HellyViolation> check_helly_triples(const SetFamily& f) {
  for (int i = 0; i < f.size(); ++i)
    if (f.set(i).members.none()) return violation_from(f, {i});

  const int n = f.ground().size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z) {
        Bitset triple(n);
        triple.set(x);
        triple.set(y);
        triple.set(z);
        std::vector<int> hits;
        Bitset total = f.ground().all();
        for (int i = 0; i < f.size(); ++i) {
          if ((f.set(i).members & triple).count() >= 2) {
            hits.push_back(i);
            total &= f.set(i).members;
          }
        }
        // Two sets sharing at least two of three elements always intersect,
        // so the hit subfamily is pairwise intersecting by construction.
        if (!hits.empty() && total.none())
          return violation_from(f, minimize_violation(f, std::move(hits)));
      }
  return std::nullopt;
}

std::optional<HellyViolation> check_helly_bruteforce(const SetFamily& f) {
  const int m = f.size();
  if (m > 20) throw Error("brute-force Helly scan is limited to 20 sets");

  std::vector<std::vector<bool>> meets(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      meets[i][j] = meets[j][i] = f.set(i).members.intersects(f.set(j).members);

  // k-subsets in lexicographic order, smallest cardinality first, so the
  // first hit is a minimum-cardinality violation.
  for (int k = 1; k <= m; ++k) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      bool pairwise = true;
      for (int i = 0; i < k && pairwise; ++i)
        for (int j = i + 1; j < k; ++j)
          if (!meets[pick[i]][pick[j]]) {
            pairwise = false;
            break;
          }
      if (pairwise) {
        Bitset total = f.ground().all();
        for (int i : pick) total &= f.set(i).members;
        if (total.none()) return violation_from(f, pick);
      }
      int i = k - 1;
      while (i >= 0 && pick[i] == m - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

bool verify_helly_violation(const SetFamily& f, const HellyViolation& v) {
  if (v.witness_sets.empty()) return false;
  std::vector<int> idx;
  for (const auto& name : v.witness_sets) {
    auto i = f.index_of(name);
    if (!i) return false;
    idx.push_back(*i);
  }
  Bitset total = f.ground().all();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    total &= f.set(idx[i]).members;
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (!f.set(idx[i]).members.intersects(f.set(idx[j]).members)) return false;
  }
  return total.none();
}

// --- chordality --------------------------------------------------------------

namespace {

// Rotate and orient an index cycle so the smallest vertex comes first,
// followed by the smaller of its two neighbours.
std::vector<int> canonical_cycle(std::vector<int> c) {
  const int k = static_cast<int>(c.size());
  int p = static_cast<int>(std::min_element(c.begin(), c.end()) - c.begin());
  std::vector<int> out(k);
  const bool forward = c[(p + 1) % k] < c[(p + k - 1) % k];
  for (int i = 0; i < k; ++i)
    out[i] = forward ? c[(p + i) % k] : c[(p + k - i) % k];
  return out;
}

// Shortest x..y path whose interior avoids N[v], as vertex indices, or empty
// when none exists.  With such a path, v + path is an induced cycle >= 4.
std::vector<int> cycle_through(const Graph& g, int v, int x, int y) {
  const int n = g.n();
  Bitset allowed = ~(g.neighbors(v));
  allowed.reset(v);
  allowed.set(x);
  allowed.set(y);
  std::vector<int> parent(n, -1);
  std::vector<int> queue{x};
  parent[x] = x;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    if (u == y) break;
    for (int w : bit_indices(g.neighbors(u) & allowed))
      if (parent[w] < 0) {
        parent[w] = u;
        queue.push_back(w);
      }
  }
  if (parent[y] < 0) return {};
  std::vector<int> path{y};
  while (path.back() != x) path.push_back(parent[path.back()]);
  path.push_back(v);
  return canonical_cycle(std::move(path));
}

}  // namespace

std::variant<Ordering, ChordlessCycle> check_chordal(const Graph& g) {
  const int n = g.n();

  // Maximum cardinality search; ties go to the smallest label.
  std::vector<int> weight(n, 0);
  Bitset visited(n);
  std::vector<int> visit_order;
  visit_order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!visited.test(v) && (best < 0 || weight[v] > weight[best])) best = v;
    visited.set(best);
    visit_order.push_back(best);
    for (int u : bit_indices(g.neighbors(best)))
      if (!visited.test(u)) ++weight[u];
  }

  std::vector<int> peo(visit_order.rbegin(), visit_order.rend());

  // Elimination check: later neighbours of every vertex must form a clique.
  // The first failure hands us v with non-adjacent later neighbours x, y.
  Bitset after = g.vertices().all();
  int fail_v = -1, fail_x = -1, fail_y = -1;
  for (int i = 0; i < n && fail_v < 0; ++i) {
    const int v = peo[i];
    after.reset(v);
    const Bitset later = g.neighbors(v) & after;
    for (int x : bit_indices(later)) {
      Bitset missing = later & ~g.neighbors(x);
      missing.reset(x);
      if (missing.any()) {
        fail_v = v;
        fail_x = x;
        fail_y = static_cast<int>(missing.find_first());
        break;
      }
    }
  }

  if (fail_v < 0) return Ordering(g.vertices(), std::move(peo));

  // Not chordal.  Grow a chordless cycle from a vertex with two non-adjacent
  // neighbours: a shortest path between them avoiding the rest of N[v]
  // closes one.  The failed triple usually works; scanning all triples is a
  // guaranteed fallback, since any induced cycle contains such a triple.
  auto finish = [&](const std::vector<int>& cyc) {
    ChordlessCycle out;
    for (int v : cyc) out.cycle.push_back(g.vertices().label(v));
    return out;
  };
  if (auto cyc = cycle_through(g, fail_v, fail_x, fail_y); !cyc.empty())
    return finish(cyc);
  for (int v = 0; v < n; ++v)
    for (int x : bit_indices(g.neighbors(v)))
      for (int y : bit_indices(g.neighbors(v)))
        if (x < y && !g.adjacent(x, y))
          if (auto cyc = cycle_through(g, v, x, y); !cyc.empty())
            return finish(cyc);
  throw Error("internal error: elimination check failed but no cycle found");
}

bool is_chordal(const Graph& g) {
  return std::holds_alternative<Ordering>(check_chordal(g));
}

bool verify_chordless_cycle(const Graph& g, const ChordlessCycle& c) {
  const int k = static_cast<int>(c.cycle.size());
  if (k < 4) return false;
  std::vector<int> idx;
  for (const auto& l : c.cycle) {
    auto i = g.vertices().index_of(l);
    if (!i) return false;
    idx.push_back(*i);
  }
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
      if (g.adjacent(idx[i], idx[j]) != consecutive) return false;
    }
  return true;
}

bool verify_elimination_ordering(const Graph& g, const Ordering& peo) {
  if (!(peo.ground() == g.vertices())) return false;
  Bitset after = g.vertices().all();
  for (int v : peo.sequence()) {
    after.reset(v);
    const Bitset later = g.neighbors(v) & after;
    for (int x : bit_indices(later)) {
      Bitset missing = later & ~g.neighbors(x);
      missing.reset(x);
      if (missing.any()) return false;
    }
  }
  return true;
}

// --- meeting chains ----------------------------------------------------------

namespace {

struct ChainSearch {
  const SetFamily& f;
  // prefix -> (best number of further sets, set index achieving it or -1)
  std::map<Bitset, std::pair<int, int>> memo;

  std::pair<int, int> best_from(const Bitset& prefix) {
    auto it = memo.find(prefix);
    if (it != memo.end()) return it->second;
    std::pair<int, int> best{0, -1};
    for (int i = 0; i < f.size(); ++i) {
      const Bitset& s = f.set(i).members;
      if (!prefix.intersects(s)) continue;    // prefix must stay nonempty
      if ((prefix & ~s).none()) continue;     // must lose an element
      int len = 1 + best_from(prefix & s).first;
      if (len > best.first) best = {len, i};
    }
    memo.emplace(prefix, best);
    return best;
  }
};

}  // namespace

MeetingChainReport meeting_chain_depth(const SetFamily& f) {
  ChainSearch search{f, {}};
  int best_len = 0, best_start = -1;
  for (int i = 0; i < f.size(); ++i) {
    if (f.set(i).members.none()) continue;
    int len = 1 + search.best_from(f.set(i).members).first;
    if (len > best_len) {
      best_len = len;
      best_start = i;
    }
  }
  MeetingChainReport report;
  report.depth = best_len;
  if (best_start < 0) return report;
  int cur = best_start;
  Bitset prefix = f.set(cur).members;
  report.chain.push_back(f.set(cur).name);
  while (true) {
    auto [len, next] = search.best_from(prefix);
    if (len == 0) break;
    prefix &= f.set(next).members;
    report.chain.push_back(f.set(next).name);
    cur = next;
  }
  return report;
}

bool verify_meeting_chain(const SetFamily& f, const std::vector<std::string>& chain) {
  if (chain.empty()) return true;
  auto first = f.index_of(chain[0]);
  if (!first) return false;
  Bitset prefix = f.set(*first).members;
  if (prefix.none()) return false;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    auto idx = f.index_of(chain[i]);
    if (!idx) return false;
    const Bitset& s = f.set(*idx).members;
    if ((prefix & ~s).none()) return false;
    prefix &= s;
    if (prefix.none()) return false;
  }
  return true;
}

}  // namespace treeline
