#ifndef TREELINE_TESTKIT_HPP
#define TREELINE_TESTKIT_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "treeline/core.hpp"

// Brute-force oracles and seeded instance generators backing the test
// suites: labeled-tree enumeration by Pruefer codes, exhaustive realization
// search, the ladder-of-tails family, and random family/graph sources.

namespace treeline {

// Counter-based pseudo-random generator (the splitmix64 finalizer over an
// incrementing Weyl state).  Same seed, same stream, on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-enough value in [0, bound); bound must be positive.  The modulo
  // bias is irrelevant at the corpus sizes used here.
  uint64_t below(uint64_t bound) { return next() % bound; }

 private:
  uint64_t state_;
};

// Decodes a Pruefer code (|W|-2 labels, repeats allowed) to the unique
// labeled tree on w; requires |W| >= 2.
Tree prufer_decode(const GroundSet& w, const std::vector<std::string>& code);

// Inverse of prufer_decode; requires |W| >= 2.
std::vector<std::string> prufer_encode(const Tree& t);

// Visits every labeled tree on w exactly once, in lexicographic order of the
// Pruefer code over the sorted labels.  visit returns false to stop early.
// Requires 2 <= |W| <= 8 (|W|^(|W|-2) trees).
void enumerate_labeled_trees(const GroundSet& w,
                             const std::function<bool(const Tree&)>& visit);

// First enumerated tree on which every member set induces one component,
// or nullopt when no labeled tree works.  Requires 1 <= |W| <= 8.
std::optional<Tree> realize_tree_bruteforce(const SetFamily& f);

// The ladder of tails over W = {0,...,n}: rungs {i,i+1} named e<i> and tails
// {0,i,i+1,...,n} named t<i>, both for 1 <= i <= n-1.  Requires n >= 3.
// Every finite truncation is realizable even though the infinite family is
// not.
SetFamily counterexample_truncation(int n);

// Seeded generators.  Ground labels are v00, v01, ...; set names s00, s01,
// ...; identical parameters give identical instances.

// Each of set_count member sets keeps each element independently with
// probability density_pct / 100.
SetFamily random_family(int ground_size, int set_count, int density_pct,
                        uint64_t seed);

// Grows a clique tree: each new vertex is joined onto a random subset of an
// existing bag, so insertion order reversed is a perfect elimination
// ordering and the graph is chordal by construction.
Graph random_chordal(int n, uint64_t seed);

// Intersection graph of n random integer segments on [0, 2n).
Graph random_interval(int n, uint64_t seed);

}  // namespace treeline

#endif
