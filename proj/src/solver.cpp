#include "mortality/solver.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "mortality/errors.hpp"

namespace mortality {

ImageTable::ImageTable(Nfa const& nfa)
    : table_(nfa.num_letters() * kChunks * 256, 0),
      undefined_(nfa.num_letters()) {
  auto const n = nfa.num_states();
  for (Letter a = 0; a < nfa.num_letters(); ++a) {
    auto* t = table_.data() + static_cast<std::size_t>(a) * kChunks * 256;
    for (std::size_t chunk = 0; chunk < kChunks; ++chunk) {
      for (std::size_t byte = 1; byte < 256; ++byte) {
        // Extend the entry for byte without its lowest bit by that bit's image.
        auto low   = static_cast<std::size_t>(std::countr_zero(byte));
        auto q     = chunk * 8 + low;
        auto prev  = t[chunk * 256 + (byte & (byte - 1))];
        auto extra = q < n ? nfa(q, a).bits() : 0U;
        t[chunk * 256 + byte] = prev | extra;
      }
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (nfa(q, a).empty()) {
        undefined_[a].insert(q);
      }
    }
  }
}

namespace {

void saturating_add(PathCount& acc, PathCount const& x) {
  acc.overflow = acc.overflow || x.overflow;
  if (acc.value > std::numeric_limits<std::uint64_t>::max() - x.value) {
    acc.value    = std::numeric_limits<std::uint64_t>::max();
    acc.overflow = true;
  } else {
    acc.value += x.value;
  }
}

// Dense visited bitmap over all 2^n subsets.
class SubsetBitmap {
 public:
  explicit SubsetBitmap(std::size_t n) : words_(((std::size_t{1} << n) + 63) / 64, 0) {}

  // Marks s; returns false if it was already marked.
  bool insert(StateSet s) noexcept {
    auto  i    = static_cast<std::size_t>(s.bits());
    auto& word = words_[i >> 6];
    auto  bit  = std::uint64_t{1} << (i & 63);
    if ((word & bit) != 0) {
      return false;
    }
    word |= bit;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Node {
  StateSet      set;
  std::uint32_t parent;
  Letter        letter;
};

struct BfsOutcome {
  bool                     found = false;
  std::size_t              goal  = 0;  // index into nodes
  std::size_t              depth = 0;
  PathCount                count;
  std::vector<Node>        nodes;
  SearchTrace              trace;
};

// Level-synchronous BFS over subsets. step(S, a) returns the successor or
// nullopt when a is not applicable; goal(S) marks targets. When counting, the
// level that first contains a goal is completed so that every shortest path
// into a goal node is counted.
template <typename Step, typename Goal>
BfsOutcome subset_bfs(std::size_t n, std::size_t letters, StateSet start,
                      Step&& step, Goal&& goal, SolveOptions const& options) {
  if (n > kMaxStates) {
    throw CapacityError("subset search supports at most "
                        + std::to_string(kMaxStates) + " states");
  }
  BfsOutcome out;
  SubsetBitmap visited(n);
  std::vector<PathCount> counts;
  bool const counting = options.count_shortest;

  visited.insert(start);
  out.nodes.push_back({start, std::numeric_limits<std::uint32_t>::max(), 0});
  if (counting) {
    counts.push_back({1, false});
  }
  out.trace.frontier_sizes.push_back(1);
  if (goal(start)) {
    out.found = true;
    out.goal  = 0;
    out.count = {1, false};
    out.trace.visited = 1;
    return out;
  }

  std::unordered_map<StateSet::mask_type, std::uint32_t> next_level;
  std::size_t level_begin = 0;
  std::size_t depth       = 0;

  while (level_begin < out.nodes.size()) {
    std::size_t const level_end = out.nodes.size();
    next_level.clear();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      auto const s = out.nodes[i].set;
      for (Letter a = 0; a < letters; ++a) {
        std::optional<StateSet> t = step(s, a);
        if (!t) {
          continue;
        }
        if (visited.insert(*t)) {
          auto idx = static_cast<std::uint32_t>(out.nodes.size());
          out.nodes.push_back({*t, static_cast<std::uint32_t>(i), a});
          if (counting) {
            counts.push_back(counts[i]);
            next_level.emplace(t->bits(), idx);
          }
          if (!out.found && goal(*t)) {
            out.found = true;
            out.goal  = idx;
            if (!counting) {
              out.depth         = depth + 1;
              out.trace.visited = out.nodes.size();
              out.trace.depth   = depth + 1;
              out.trace.frontier_sizes.push_back(out.nodes.size() - level_end);
              if (options.on_level) {
                options.on_level(depth + 1, out.nodes.size() - level_end,
                                 out.nodes.size());
              }
              return out;
            }
          }
        } else if (counting) {
          auto it = next_level.find(t->bits());
          if (it != next_level.end()) {
            saturating_add(counts[it->second], counts[i]);
          }
        }
      }
    }
    ++depth;
    out.trace.frontier_sizes.push_back(out.nodes.size() - level_end);
    if (options.on_level) {
      options.on_level(depth, out.nodes.size() - level_end, out.nodes.size());
    }
    if (out.found) {
      for (std::size_t j = level_end; j < out.nodes.size(); ++j) {
        if (goal(out.nodes[j].set)) {
          saturating_add(out.count, counts[j]);
        }
      }
      out.depth = depth;
      break;
    }
    level_begin = level_end;
  }
  if (!out.found) {
    // The last recorded level is empty.
    out.trace.frontier_sizes.pop_back();
    --depth;
  }
  out.trace.visited = out.nodes.size();
  out.trace.depth   = depth;
  return out;
}

Word extract_word(std::vector<Node> const& nodes, std::size_t idx) {
  Word w;
  while (idx != 0) {
    w.push_back(nodes[idx].letter);
    idx = nodes[idx].parent;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

SyncResult to_sync_result(BfsOutcome const& bfs) {
  SyncResult r;
  r.trace = bfs.trace;
  if (bfs.found) {
    r.found     = true;
    r.witness   = extract_word(bfs.nodes, bfs.goal);
    r.threshold = r.witness.size();
    r.target    = bfs.nodes[bfs.goal].set.front();
  }
  return r;
}

}  // namespace

SolveResult solve_mortality(Nfa const& nfa, SolveOptions const& options) {
  ImageTable const table(nfa);
  auto bfs = subset_bfs(
      nfa.num_states(), nfa.num_letters(), nfa.all_states(),
      [&](StateSet s, Letter a) -> std::optional<StateSet> {
        return table.image(s, a);
      },
      [](StateSet s) { return s.empty(); }, options);

  SolveResult r;
  r.trace = bfs.trace;
  if (bfs.found) {
    r.verdict   = Verdict::Mortal;
    r.witness   = extract_word(bfs.nodes, bfs.goal);
    r.threshold = r.witness.size();
    if (options.count_shortest) {
      r.shortest_count = bfs.count;
    }
  }
  return r;
}

bool is_mortal_word(Nfa const& nfa, Word const& w) {
  return image_word(nfa, nfa.all_states(), w).empty();
}

SyncResult solve_careful_sync(Dfa const& dfa) {
  auto const& nfa = dfa.nfa();
  ImageTable const table(nfa);
  auto bfs = subset_bfs(
      nfa.num_states(), nfa.num_letters(), nfa.all_states(),
      [&](StateSet s, Letter a) -> std::optional<StateSet> {
        if (s.intersects(table.undefined_on(a))) {
          return std::nullopt;
        }
        return table.image(s, a);
      },
      [](StateSet s) { return s.size() == 1; }, {});
  return to_sync_result(bfs);
}

SyncResult solve_reset_threshold(Dfa const& dfa) {
  if (!dfa.is_complete()) {
    throw IncompleteDfa("reset threshold needs a complete DFA");
  }
  auto const& nfa = dfa.nfa();
  ImageTable const table(nfa);
  auto bfs = subset_bfs(
      nfa.num_states(), nfa.num_letters(), nfa.all_states(),
      [&](StateSet s, Letter a) -> std::optional<StateSet> {
        return table.image(s, a);
      },
      [](StateSet s) { return s.size() == 1; }, {});
  return to_sync_result(bfs);
}

namespace {

// Images of the start states 0..n-1, one 16-bit lane each, packed 4 per word.
struct Tuple {
  std::array<std::uint64_t, 3> lanes{};

  StateSet get(std::size_t p) const noexcept {
    return StateSet(static_cast<StateSet::mask_type>(
        (lanes[p / 4] >> (16 * (p % 4))) & 0xFFFFU));
  }
  void set(std::size_t p, StateSet s) noexcept {
    auto shift = 16 * (p % 4);
    lanes[p / 4] &= ~(std::uint64_t{0xFFFF} << shift);
    lanes[p / 4] |= static_cast<std::uint64_t>(s.bits()) << shift;
  }

  friend bool operator==(Tuple const&, Tuple const&) = default;
};

struct TupleHash {
  std::size_t operator()(Tuple const& t) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto x : t.lanes) {
      h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

SyncResult solve_d1_directing(Nfa const& nfa) {
  auto const n = nfa.num_states();
  if (n > kMaxD1States) {
    throw TooLarge("D1-directing search supports at most "
                   + std::to_string(kMaxD1States) + " states, got "
                   + std::to_string(n));
  }
  ImageTable const table(nfa);

  auto is_goal = [n](Tuple const& t) {
    auto first = t.get(0);
    if (first.size() != 1) {
      return false;
    }
    for (std::size_t p = 1; p < n; ++p) {
      if (t.get(p) != first) {
        return false;
      }
    }
    return true;
  };

  struct TupleNode {
    Tuple         tuple;
    std::uint32_t parent;
    Letter        letter;
  };
  std::vector<TupleNode> nodes;
  std::unordered_set<Tuple, TupleHash> seen;

  Tuple start;
  for (std::size_t p = 0; p < n; ++p) {
    start.set(p, StateSet::singleton(p));
  }
  nodes.push_back({start, 0, 0});
  seen.insert(start);

  SyncResult r;
  r.trace.frontier_sizes.push_back(1);
  auto finish = [&](std::size_t idx, std::size_t depth) {
    Word w;
    for (auto i = idx; i != 0; i = nodes[i].parent) {
      w.push_back(nodes[i].letter);
    }
    std::reverse(w.begin(), w.end());
    r.found     = true;
    r.witness   = std::move(w);
    r.threshold = r.witness.size();
    r.target    = nodes[idx].tuple.get(0).front();
    r.trace.visited = nodes.size();
    r.trace.depth   = depth;
  };
  if (is_goal(start)) {
    finish(0, 0);
    return r;
  }

  std::size_t level_begin = 0;
  std::size_t depth       = 0;
  while (level_begin < nodes.size()) {
    std::size_t const level_end = nodes.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter a = 0; a < nfa.num_letters(); ++a) {
        Tuple next;
        bool  dead = false;
        for (std::size_t p = 0; p < n && !dead; ++p) {
          auto img = table.image(nodes[i].tuple.get(p), a);
          // An empty component stays empty forever.
          dead = img.empty();
          next.set(p, img);
        }
        if (dead || !seen.insert(next).second) {
          continue;
        }
        nodes.push_back({next, static_cast<std::uint32_t>(i), a});
        if (is_goal(next)) {
          r.trace.frontier_sizes.push_back(nodes.size() - level_end);
          finish(nodes.size() - 1, depth + 1);
          return r;
        }
      }
    }
    ++depth;
    if (nodes.size() > level_end) {
      r.trace.frontier_sizes.push_back(nodes.size() - level_end);
    }
    level_begin = level_end;
  }
  r.trace.visited = nodes.size();
  r.trace.depth   = depth == 0 ? 0 : depth - 1;
  return r;
}

std::vector<StateSet> reachable_subsets(Nfa const& nfa) {
  ImageTable const table(nfa);
  auto bfs = subset_bfs(
      nfa.num_states(), nfa.num_letters(), nfa.all_states(),
      [&](StateSet s, Letter a) -> std::optional<StateSet> {
        return table.image(s, a);
      },
      [](StateSet) { return false; }, {});
  std::vector<StateSet> out;
  out.reserve(bfs.nodes.size());
  for (auto const& node : bfs.nodes) {
    out.push_back(node.set);
  }
  return out;
}

}  // namespace mortality
