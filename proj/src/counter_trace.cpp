#include "mortality/counter_trace.hpp"

#include <algorithm>

#include "mortality/errors.hpp"
#include "mortality/solver.hpp"

namespace mortality {

BinTracker::BinTracker(Nfa const& nfa, std::vector<std::size_t> states)
    : states_(std::move(states)) {
  if (states_.size() > 63) {
    throw UsageError("tracker wider than 63 bits");
  }
  for (auto q : states_) {
    if (q >= nfa.num_states()) {
      throw UsageError("tracker state " + std::to_string(q) + " out of range");
    }
    if (mask_.contains(q)) {
      throw UsageError("tracker state " + std::to_string(q) + " repeated");
    }
    mask_.insert(q);
  }
}

std::uint64_t BinTracker::all_ones() const noexcept {
  return (std::uint64_t{1} << states_.size()) - 1;
}

std::uint64_t bin_value(BinTracker const& tracker, StateSet active) {
  std::uint64_t value = 0;
  for (auto q : tracker.states()) {
    value = (value << 1) | (active.contains(q) ? 1U : 0U);
  }
  return value;
}

std::vector<TraceRow> trace(Nfa const& nfa, BinTracker const& tracker,
                            Word const& w) {
  validate_word(nfa, w);
  std::vector<TraceRow> rows;
  rows.reserve(w.size() + 1);
  auto active = nfa.all_states();
  rows.push_back({0, active, bin_value(tracker, active), std::nullopt});
  for (std::size_t i = 0; i < w.size(); ++i) {
    active = image(nfa, active, w[i]);
    rows.push_back({i + 1, active, bin_value(tracker, active), w[i]});
  }
  return rows;
}

DecrementReport check_decrement(Nfa const& nfa, BinTracker const& tracker) {
  DecrementReport report;
  for (auto s : reachable_subsets(nfa)) {
    ++report.subsets_checked;
    auto const before = bin_value(tracker, s);
    for (Letter a = 0; a < nfa.num_letters(); ++a) {
      auto const after = bin_value(tracker, image(nfa, s, a));
      if (after + 1 < before) {
        report.violation = DecrementViolation{s, a, before, after};
        return report;
      }
    }
  }
  return report;
}

bool CheckpointReport::exact_decrements() const noexcept {
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i].bin + 1 != checkpoints[i - 1].bin) {
      return false;
    }
  }
  return true;
}

namespace {

template <typename IsCheckpoint>
CheckpointReport checkpoint_report(FamilyInstance const& inst, Word const& w,
                                   StateSet reset_set,
                                   IsCheckpoint&& is_checkpoint) {
  auto const& nfa = inst.nfa;
  validate_word(nfa, w);
  BinTracker const tracker(nfa, inst.tracker);

  CheckpointReport report;
  auto             rows              = trace(nfa, tracker, w);
  bool             reset_since_last  = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto const active = rows[i].active;
    if (reset_set.subset_of(active) && !active.subset_of(rows[i - 1].active)) {
      report.resets.push_back(i);
      reset_since_last = true;
    }
    if (!is_checkpoint(rows, i)) {
      continue;
    }
    report.checkpoints.push_back({i, rows[i].bin});
    auto const n = report.checkpoints.size();
    if (n >= 2 && !reset_since_last
        && report.checkpoints[n - 1].bin + 1 < report.checkpoints[n - 2].bin) {
      report.violations.push_back(n - 1);
    }
    reset_since_last = false;
  }
  return report;
}

}  // namespace

CheckpointReport check_checkpoints_ternary(FamilyInstance const& instance,
                                           Word const& w) {
  if (instance.family != Family::Ternary) {
    throw UsageError("check_checkpoints_ternary needs a ternary instance");
  }
  auto const  k = instance.parameter;
  Letter const s = 0, c = 2;
  auto const reset_set =
      StateSet::range(k + 1, 2 * k + 1) | StateSet::singleton(2 * k + 1);
  return checkpoint_report(
      instance, w, reset_set, [&](auto const& rows, std::size_t i) {
        return i >= 2 && rows[i].letter == s && rows[i - 1].letter == c;
      });
}

CheckpointReport check_checkpoints_binary(FamilyInstance const& instance,
                                          Word const& w) {
  if (instance.family != Family::Binary) {
    throw UsageError("check_checkpoints_binary needs a binary instance");
  }
  auto const k         = instance.parameter;
  auto const p0        = std::size_t{0};
  auto const reset_set =
      StateSet::range(2 * k + 1, 3 * k + 1) | StateSet::singleton(3 * k + 1);
  return checkpoint_report(
      instance, w, reset_set, [&](auto const& rows, std::size_t i) {
        return rows[i].active.contains(p0) && !rows[i - 1].active.contains(p0);
      });
}

}  // namespace mortality
