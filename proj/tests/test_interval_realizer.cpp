#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "treeline/interval_realizer.hpp"
#include "treeline/testkit.hpp"

namespace {

using namespace treeline;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TREELINE_DATA_DIR) + "/" + name,
                   std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SetFamily family(
    std::vector<std::string> ground,
    std::vector<std::pair<std::string, std::vector<std::string>>> sets) {
  return SetFamily(GroundSet(std::move(ground)), sets);
}

using Labels = std::vector<std::string>;

// Definitional connectivity check: every 2-partition of x must be crossed by
// a member set lying inside x.  Exponential; |x| <= 12 only.
bool connected_reference(const SetFamily& f, const std::vector<int>& x) {
  if (x.size() <= 1) return true;
  REQUIRE(x.size() <= 12);
  const int n = f.ground().size();
  Bitset xmask(n);
  for (int v : x) xmask.set(v);
  for (unsigned split = 1; split + 1 < (1u << x.size()); ++split) {
    Bitset a(n), b(n);
    for (size_t i = 0; i < x.size(); ++i)
      ((split >> i) & 1u ? a : b).set(x[i]);
    bool crossed = false;
    for (const auto& s : f.sets()) {
      if ((s.members & ~xmask).any()) continue;
      if ((s.members & a).any() && (s.members & b).any()) {
        crossed = true;
        break;
      }
    }
    if (!crossed) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("relative connectivity on the star family") {
  auto f = parse_family(slurp("star.json"));

  CHECK_FALSE(is_f_connected(f, Labels{"a"}).has_value());
  CHECK_FALSE(is_f_connected(f, Labels{}).has_value());
  CHECK_FALSE(is_f_connected(f, Labels{"b", "c", "d"}).has_value());

  auto split = is_f_connected(f, Labels{"a", "b"});
  REQUIRE(split.has_value());
  CHECK(split->side_a == Labels{"a"});
  CHECK(split->side_b == Labels{"b"});

  CHECK(f_connected_components(f, Labels{"b", "c", "d"}) ==
        std::vector<Labels>{{"b", "c", "d"}});
  CHECK(f_connected_components(f, Labels{"a", "b", "d"}) ==
        std::vector<Labels>{{"a"}, {"b"}, {"d"}});
  CHECK(f_connected_components(f, Labels{"a", "c", "d"}) ==
        std::vector<Labels>{{"a", "c", "d"}});
}

TEST_CASE("connectivity matches the all-partitions definition") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 rng(seed * 71 + 3);
    int n = 2 + static_cast<int>(rng.below(5));  // 2..6
    auto f = random_family(n, 1 + static_cast<int>(rng.below(5)), 50,
                           seed + 600);
    // every subset of the ground set
    for (unsigned m = 0; m < (1u << n); ++m) {
      std::vector<int> x;
      Bitset xmask(n);
      for (int i = 0; i < n; ++i)
        if (m & (1u << i)) {
          x.push_back(i);
          xmask.set(i);
        }
      auto verdict = is_f_connected(f, xmask);
      CHECK(verdict.has_value() != connected_reference(f, x));
      if (verdict) {
        // the witness is a genuine uncrossed partition of x
        Bitset a = f.ground().subset_of(verdict->side_a);
        Bitset b = f.ground().subset_of(verdict->side_b);
        CHECK((a | b) == xmask);
        CHECK((a & b).none());
        CHECK(a.any());
        CHECK(b.any());
        for (const auto& s : f.sets()) {
          if ((s.members & ~xmask).any()) continue;
          const bool crosses = (s.members & a).any() && (s.members & b).any();
          CHECK_FALSE(crosses);
        }
      }
    }
  }
}

TEST_CASE("component blocks partition and absorb every inner set") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    int n = 3 + static_cast<int>(seed % 4);
    auto f = random_family(n, 4, 40, seed + 900);
    Bitset x = f.ground().all();
    auto blocks = f_connected_components(f, x);

    Bitset seen = f.ground().none();
    for (const auto& blk : blocks) {
      Bitset bm = f.ground().subset_of(blk);
      CHECK((seen & bm).none());
      seen |= bm;
      CHECK_FALSE(is_f_connected(f, bm).has_value());
    }
    CHECK(seen == x);
    for (const auto& s : f.sets()) {
      if (s.members.none()) continue;
      bool inside_one = false;
      for (const auto& blk : blocks) {
        Bitset bm = f.ground().subset_of(blk);
        if ((s.members & ~bm).none()) inside_one = true;
      }
      CHECK(inside_one);
    }
  }
}

TEST_CASE("the star family has the canonical obstruction triple") {
  auto f = parse_family(slurp("star.json"));
  auto t = find_obstruction_triple(f);
  REQUIRE(t.has_value());
  CHECK(t->vertices == std::array<std::string, 3>{"a", "b", "d"});
  CHECK(t->witnesses[0] == Labels{"b", "c", "d"});
  CHECK(t->witnesses[1] == Labels{"a", "c", "d"});
  CHECK(t->witnesses[2] == Labels{"a", "b", "c"});
  CHECK(verify_obstruction_triple(f, *t));
}

TEST_CASE("families of nested or chained sets have no obstruction") {
  CHECK_FALSE(find_obstruction_triple(parse_family(slurp("path3.json"))).has_value());
  CHECK_FALSE(find_obstruction_triple(SetFamily()).has_value());
  CHECK_FALSE(find_obstruction_triple(
                  family({"1", "2", "3"}, {{"w", {"1", "2", "3"}}}))
                  .has_value());
}

TEST_CASE("obstruction verification is strict") {
  auto f = parse_family(slurp("star.json"));
  auto t = *find_obstruction_triple(f);
  CHECK(verify_obstruction_triple(f, t));

  auto swapped = t;
  std::swap(swapped.witnesses[0], swapped.witnesses[1]);
  CHECK_FALSE(verify_obstruction_triple(f, swapped));

  auto broken = t;
  broken.witnesses[0] = {"b", "d"};  // not connected relative to the family
  CHECK_FALSE(verify_obstruction_triple(f, broken));

  auto repeated = t;
  repeated.vertices = {"a", "a", "d"};
  CHECK_FALSE(verify_obstruction_triple(f, repeated));
}

TEST_CASE("interval ordering on chains, free elements and filtered sets") {
  SUBCASE("a chain of overlapping pairs orders left to right") {
    auto res = realize_interval_order(parse_family(slurp("path3.json")));
    REQUIRE(std::holds_alternative<Ordering>(res));
    CHECK(std::get<Ordering>(res).labels() == Labels{"1", "2", "3"});
  }
  SUBCASE("full sets and singletons impose nothing") {
    auto f = family({"x", "y", "z"},
                    {{"w", {"x", "y", "z"}}, {"dot", {"y"}}});
    auto res = realize_interval_order(f);
    REQUIRE(std::holds_alternative<Ordering>(res));
    CHECK(std::get<Ordering>(res).labels() == Labels{"x", "y", "z"});
  }
  SUBCASE("rigid blocks carry their interior, free elements follow") {
    auto f = family({"1", "2", "3", "4", "5", "6"},
                    {{"p", {"1", "4"}}, {"q", {"4", "6"}}});
    auto res = realize_interval_order(f);
    REQUIRE(std::holds_alternative<Ordering>(res));
    CHECK(std::get<Ordering>(res).labels() ==
          Labels{"1", "4", "6", "2", "3", "5"});
    CHECK(verify_interval_ordering(f, std::get<Ordering>(res)));
  }
  SUBCASE("duplicate and redundant covers collapse") {
    auto f = family({"1", "2", "3", "4"},
                    {{"cover", {"1", "2", "3"}},
                     {"lo", {"1", "2"}},
                     {"hi", {"2", "3"}},
                     {"lo2", {"1", "2"}}});
    auto res = realize_interval_order(f);
    REQUIRE(std::holds_alternative<Ordering>(res));
    // The overlap class {hi, lo} is refined starting from hi (sets are
    // visited in name order and hi sorts before lo), so the rigid block
    // reads 3,2,1.  The mirror would start with the free element 4 and is
    // lexicographically larger, so the block orientation survives.
    CHECK(std::get<Ordering>(res).labels() == Labels{"3", "2", "1", "4"});
    CHECK(verify_interval_ordering(f, std::get<Ordering>(res)));
  }
}

TEST_CASE("the returned ordering never exceeds its mirror image") {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    auto f = random_family(3 + static_cast<int>(seed % 5), 4, 45, seed + 40);
    auto res = realize_interval_order(f);
    if (auto* ord = std::get_if<Ordering>(&res)) {
      CHECK(ord->labels() <= ord->reversed().labels());
      CHECK(verify_interval_ordering(f, *ord));
    }
  }
}

TEST_CASE("obstructed families are exactly the brute-force failures") {
  SUBCASE("every small family over three elements") {
    GroundSet w({"x", "y", "z"});
    std::vector<Bitset> masks;
    for (unsigned m = 1; m < 8; ++m) {
      Bitset b(3);
      for (int i = 0; i < 3; ++i)
        if (m & (1u << i)) b.set(i);
      masks.push_back(b);
    }
    for (size_t a = 0; a < masks.size(); ++a)
      for (size_t b = a; b < masks.size(); ++b)
        for (size_t c = b; c < masks.size(); ++c) {
          std::vector<FamilySet> sets{{"s0", masks[a]}};
          if (b != a) sets.push_back({"s1", masks[b]});
          if (c != b) sets.push_back({"s2", masks[c]});
          SetFamily f(w, sets);
          auto fast = realize_interval_order(f);
          auto slow = brute_force_order(f);
          CHECK(std::holds_alternative<Ordering>(fast) == slow.has_value());
          if (auto* ord = std::get_if<Ordering>(&fast))
            CHECK(verify_interval_ordering(f, *ord));
          else
            CHECK(verify_obstruction_triple(
                f, std::get<ObstructionTriple>(fast)));
        }
  }
  SUBCASE("seeded families over four to seven elements") {
    int obstructed = 0;
    for (uint64_t seed = 0; seed < 250; ++seed) {
      SplitMix64 rng(seed * 3 + 11);
      int n = 4 + static_cast<int>(rng.below(4));  // 4..7
      int k = 2 + static_cast<int>(rng.below(6));  // 2..7
      auto f = random_family(n, k, 45, seed + 7100);
      auto fast = realize_interval_order(f);
      auto slow = brute_force_order(f);
      CHECK(std::holds_alternative<Ordering>(fast) == slow.has_value());
      if (auto* ord = std::get_if<Ordering>(&fast)) {
        CHECK(verify_interval_ordering(f, *ord));
        CHECK(verify_interval_ordering(f, *slow));
      } else {
        ++obstructed;
        CHECK(verify_obstruction_triple(
            f, std::get<ObstructionTriple>(fast)));
      }
    }
    CHECK(obstructed > 20);
  }
}

TEST_CASE("interval ordering verification is strict") {
  auto f = parse_family(slurp("path3.json"));
  CHECK(verify_interval_ordering(
      f, Ordering(f.ground(), Labels{"1", "2", "3"})));
  CHECK(verify_interval_ordering(
      f, Ordering(f.ground(), Labels{"3", "2", "1"})));
  CHECK_FALSE(verify_interval_ordering(
      f, Ordering(f.ground(), Labels{"2", "1", "3"})));
  // ordering over a different ground set is rejected outright
  CHECK_FALSE(verify_interval_ordering(
      f, Ordering(GroundSet({"1", "2"}), Labels{"1", "2"})));
}

TEST_CASE("brute force ordering guard and small answers") {
  auto path = parse_family(slurp("path3.json"));
  auto ord = brute_force_order(path);
  REQUIRE(ord.has_value());
  CHECK(ord->labels() == Labels{"1", "2", "3"});

  CHECK_FALSE(brute_force_order(parse_family(slurp("star.json"))).has_value());
  CHECK_FALSE(brute_force_order(parse_family(slurp("triangle.json"))).has_value());

  auto big = random_family(10, 2, 50, 1);
  CHECK_THROWS_AS(brute_force_order(big), Error);
}

TEST_CASE("a cycle of arcs has an obstruction among its first three points") {
  auto f = parse_family(slurp("cycle4.json"));
  auto res = realize_interval_order(f);
  REQUIRE(std::holds_alternative<ObstructionTriple>(res));
  auto t = std::get<ObstructionTriple>(res);
  CHECK(t.vertices == std::array<std::string, 3>{"1", "2", "3"});
  CHECK(verify_obstruction_triple(f, t));
}
