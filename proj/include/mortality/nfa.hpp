#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mortality/state_set.hpp"

namespace mortality {

using Letter = std::uint32_t;
using Word   = std::vector<Letter>;

// A finite semi-automaton (Q, Sigma, Delta) with Q = {0, ..., n-1}. There are
// no initial or final states. An empty image is an ordinary transition value
// ("no transition"), not an error. Instances are immutable; build them with
// NfaBuilder.
class Nfa {
 public:
  std::size_t num_states() const noexcept { return states_; }
  std::size_t num_letters() const noexcept { return letters_.size(); }

  std::vector<std::string> const& letter_names() const noexcept {
    return letters_;
  }
  std::string const& letter_name(Letter a) const;
  std::optional<Letter> find_letter(std::string_view name) const noexcept;

  // Delta(q, a). Throws UsageError when q or a is out of range.
  StateSet image(std::size_t q, Letter a) const;

  // Unchecked Delta(q, a), for hot loops that validated their inputs.
  StateSet operator()(std::size_t q, Letter a) const noexcept {
    return delta_[a * states_ + q];
  }

  StateSet all_states() const noexcept { return StateSet::full(states_); }

  friend bool operator==(Nfa const&, Nfa const&) = default;

 private:
  friend class NfaBuilder;
  Nfa() = default;

  std::size_t              states_ = 0;
  std::vector<std::string> letters_;
  std::vector<StateSet>    delta_;  // letter-major: delta_[a * n + q]
};

class NfaBuilder {
 public:
  // All images start empty. Throws CapacityError when states > kMaxStates and
  // UsageError for zero states, no letters, or invalid/duplicate letter names.
  NfaBuilder(std::size_t states, std::vector<std::string> letters);

  NfaBuilder& set(std::size_t q, Letter a, StateSet targets);
  NfaBuilder& add(std::size_t q, Letter a, std::size_t target);

  // Letter lookup by name; throws UsageError when missing.
  Letter letter(std::string_view name) const;

  std::size_t num_states() const noexcept { return nfa_.states_; }

  Nfa build() const { return nfa_; }

 private:
  Nfa nfa_;
};

// True for names usable in the text format: nonempty, no whitespace, and none
// of ',', ':', '#', '^'.
bool is_valid_letter_name(std::string_view name) noexcept;

// S . a = union of Delta(q, a) over q in S.
StateSet image(Nfa const& nfa, StateSet s, Letter a);

// Left-to-right fold of image(); image_word(nfa, s, {}) == s.
StateSet image_word(Nfa const& nfa, StateSet s, Word const& w);

// Every (state, letter) pair has a nonempty image.
bool is_total(Nfa const& nfa);

// Every letter maps q to exactly {q}.
bool is_sink(Nfa const& nfa, std::size_t q);

// Every state reaches every state along transitions.
bool is_strongly_connected(Nfa const& nfa);

// Throws UsageError when a letter of w is out of range.
void validate_word(Nfa const& nfa, Word const& w);

// A deterministic (possibly partial) view of an Nfa: every image has at most
// one element.
class Dfa {
 public:
  Nfa const& nfa() const noexcept { return nfa_; }
  std::size_t num_states() const noexcept { return nfa_.num_states(); }
  std::size_t num_letters() const noexcept { return nfa_.num_letters(); }

  // delta(q, a), or nullopt when undefined.
  std::optional<std::size_t> next(std::size_t q, Letter a) const;

  // Every transition defined.
  bool is_complete() const noexcept;

  friend bool operator==(Dfa const&, Dfa const&) = default;

 private:
  friend Dfa as_dfa(Nfa const& nfa);
  explicit Dfa(Nfa nfa) : nfa_(std::move(nfa)) {}

  Nfa nfa_;
};

// Validates that every image has size at most one. Scans state by state, and
// letters in declared order within a state; throws NotDeterministic naming the
// first violation found.
Dfa as_dfa(Nfa const& nfa);

}  // namespace mortality
