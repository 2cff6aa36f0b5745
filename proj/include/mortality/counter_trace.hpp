#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mortality/families.hpp"
#include "mortality/nfa.hpp"

namespace mortality {

// Counter states q1..qk, most significant first. bin(S) reads bit i as 1 iff
// the i-th tracker state is in S.
class BinTracker {
 public:
  // Throws UsageError on duplicate or out-of-range states.
  BinTracker(Nfa const& nfa, std::vector<std::size_t> states);

  std::vector<std::size_t> const& states() const noexcept { return states_; }
  std::size_t              width() const noexcept { return states_.size(); }
  StateSet                 mask() const noexcept { return mask_; }

  // 2^k - 1 for a full tracker.
  std::uint64_t all_ones() const noexcept;

 private:
  std::vector<std::size_t> states_;
  StateSet                 mask_;
};

std::uint64_t bin_value(BinTracker const& tracker, StateSet active);

struct TraceRow {
  std::size_t            prefix_length;
  StateSet               active;
  std::uint64_t          bin;
  std::optional<Letter>  letter;  // the letter that led here; none for row 0
};

// One row per prefix of w (w.size() + 1 rows), starting from all states.
std::vector<TraceRow> trace(Nfa const& nfa, BinTracker const& tracker,
                            Word const& w);

struct DecrementViolation {
  StateSet      from;
  Letter        letter;
  std::uint64_t before;
  std::uint64_t after;
};

struct DecrementReport {
  std::size_t                       subsets_checked = 0;
  std::optional<DecrementViolation> violation;  // first one found

  bool ok() const noexcept { return !violation.has_value(); }
};

// For every subset reachable from the full set and every letter a, checks
// bin(S.a) >= bin(S) - 1. Stops at the first violation.
DecrementReport check_decrement(Nfa const& nfa, BinTracker const& tracker);

struct Checkpoint {
  std::size_t   prefix_length;
  std::uint64_t bin;
};

struct CheckpointReport {
  std::vector<Checkpoint>  checkpoints;
  // Prefix lengths at which the reset set was reactivated: the active set
  // contains it and is not contained in the previous active set.
  std::vector<std::size_t> resets;
  // Indices i into checkpoints where checkpoints[i].bin <
  // checkpoints[i-1].bin - 1 with no reset in between.
  std::vector<std::size_t> violations;

  bool ok() const noexcept { return violations.empty(); }
  // Every consecutive pair differs by exactly -1.
  bool exact_decrements() const noexcept;
};

// Ternary family: checkpoints are prefixes ending in "c s", bin over q1..qk,
// resets are reactivations of Q + {f}.
CheckpointReport check_checkpoints_ternary(FamilyInstance const& instance,
                                           Word const& w);

// Binary family: checkpoints are the first prefix of every maximal run of
// prefixes with p0 active, bin over q1..qk, resets are reactivations of
// Q + {f}.
CheckpointReport check_checkpoints_binary(FamilyInstance const& instance,
                                          Word const& w);

}  // namespace mortality
