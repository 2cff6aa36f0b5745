#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mortality/nfa.hpp"

namespace mortality {

enum class Verdict { Mortal, Immortal };

// Diagnostics of one powerset search.
struct SearchTrace {
  std::size_t              visited = 0;  // distinct subsets (or tuples) seen
  std::size_t              depth   = 0;  // last BFS level expanded
  std::vector<std::size_t> frontier_sizes;  // nodes per level, level 0 first
};

// Number of distinct shortest words, saturating at 2^64 - 1.
struct PathCount {
  std::uint64_t value    = 0;
  bool          overflow = false;

  friend bool operator==(PathCount const&, PathCount const&) = default;
};

struct SolveResult {
  Verdict verdict = Verdict::Immortal;
  // Length of a shortest mortal word; set iff Mortal.
  std::optional<std::size_t> threshold;
  // A shortest mortal word; empty unless Mortal.
  Word witness;
  // Set iff Mortal and counting was requested.
  std::optional<PathCount> shortest_count;
  SearchTrace              trace;

  bool mortal() const noexcept { return verdict == Verdict::Mortal; }
};

// Outcome of the synchronization-style searches (careful synchronization,
// reset threshold, D1-directing). witness/target/threshold are meaningful
// only when found is true.
struct SyncResult {
  bool        found     = false;
  std::size_t threshold = 0;
  Word        witness;
  std::size_t target = 0;  // the single state every state is sent to
  SearchTrace trace;
};

struct SolveOptions {
  bool count_shortest = false;
  // Called after each BFS level with (depth, frontier size, visited so far).
  std::function<void(std::size_t, std::size_t, std::size_t)> on_level;
};

// Breadth-first search over subsets starting from the full state set, edges
// S -> S.a, letters explored in declared order. Mortal with the exact
// distance to the empty set if it is reachable, otherwise Immortal once every
// reachable subset has been expanded.
SolveResult solve_mortality(Nfa const& nfa, SolveOptions const& options = {});

// Q . w == empty.
bool is_mortal_word(Nfa const& nfa, Word const& w);

// Shortest word that is defined on every current state at every step and
// ends in a singleton. A letter applies to S only if it is defined on all of
// S. found == false means the DFA is not carefully synchronizing.
SyncResult solve_careful_sync(Dfa const& dfa);

// Shortest synchronizing word of a complete DFA. Throws IncompleteDfa when
// some transition is undefined.
SyncResult solve_reset_threshold(Dfa const& dfa);

// Largest automaton solve_d1_directing() accepts.
inline constexpr std::size_t kMaxD1States = 12;

// Shortest word w with p . w == {q} for every state p and one fixed q.
// Searches over tuples (p . w for each start state p). Throws TooLarge above
// kMaxD1States states.
SyncResult solve_d1_directing(Nfa const& nfa);

// Every subset reachable from the full state set, in BFS order.
std::vector<StateSet> reachable_subsets(Nfa const& nfa);

// Precomputed subset images: the image of a set is the union of per-byte
// table lookups, so one letter application costs at most four loads.
class ImageTable {
 public:
  explicit ImageTable(Nfa const& nfa);

  StateSet image(StateSet s, Letter a) const noexcept {
    auto const* t    = table_.data() + static_cast<std::size_t>(a) * kChunks * 256;
    auto        bits = s.bits();
    return StateSet(t[bits & 0xFFU] | t[256 + ((bits >> 8) & 0xFFU)]
                    | t[512 + ((bits >> 16) & 0xFFU)]
                    | t[768 + ((bits >> 24) & 0xFFU)]);
  }

  // States on which letter a is undefined.
  StateSet undefined_on(Letter a) const noexcept { return undefined_[a]; }

 private:
  static constexpr std::size_t kChunks = 4;

  std::vector<StateSet::mask_type> table_;
  std::vector<StateSet>            undefined_;
};

}  // namespace mortality
