#include "mortality/nfa.hpp"

#include <algorithm>

#include "mortality/errors.hpp"

namespace mortality {

bool is_valid_letter_name(std::string_view name) noexcept {
  if (name.empty()) {
    return false;
  }
  return std::none_of(name.begin(), name.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ','
           || c == ':' || c == '#' || c == '^';
  });
}

std::string const& Nfa::letter_name(Letter a) const {
  if (a >= letters_.size()) {
    throw UsageError("letter index " + std::to_string(a) + " out of range");
  }
  return letters_[a];
}

std::optional<Letter> Nfa::find_letter(std::string_view name) const noexcept {
  auto it = std::find(letters_.begin(), letters_.end(), name);
  if (it == letters_.end()) {
    return std::nullopt;
  }
  return static_cast<Letter>(it - letters_.begin());
}

StateSet Nfa::image(std::size_t q, Letter a) const {
  if (a >= letters_.size()) {
    throw UsageError("letter index " + std::to_string(a) + " out of range");
  }
  if (q >= states_) {
    throw UsageError("state " + std::to_string(q) + " out of range");
  }
  return (*this)(q, a);
}

NfaBuilder::NfaBuilder(std::size_t states, std::vector<std::string> letters) {
  if (states == 0) {
    throw UsageError("an automaton needs at least one state");
  }
  if (states > kMaxStates) {
    throw CapacityError("automaton has " + std::to_string(states)
                        + " states; at most " + std::to_string(kMaxStates)
                        + " are supported");
  }
  if (letters.empty()) {
    throw UsageError("an automaton needs at least one letter");
  }
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!is_valid_letter_name(letters[i])) {
      throw UsageError("invalid letter name '" + letters[i] + "'");
    }
    if (std::find(letters.begin(), letters.begin() + i, letters[i])
        != letters.begin() + i) {
      throw UsageError("duplicate letter name '" + letters[i] + "'");
    }
  }
  nfa_.states_  = states;
  nfa_.delta_   = std::vector<StateSet>(states * letters.size());
  nfa_.letters_ = std::move(letters);
}

NfaBuilder& NfaBuilder::set(std::size_t q, Letter a, StateSet targets) {
  (void) nfa_.image(q, a);  // range check
  if (!targets.subset_of(nfa_.all_states())) {
    throw UsageError("transition target out of range");
  }
  nfa_.delta_[a * nfa_.states_ + q] = targets;
  return *this;
}

NfaBuilder& NfaBuilder::add(std::size_t q, Letter a, std::size_t target) {
  if (target >= nfa_.states_) {
    throw UsageError("transition target out of range");
  }
  auto targets = nfa_.image(q, a);
  targets.insert(target);
  return set(q, a, targets);
}

Letter NfaBuilder::letter(std::string_view name) const {
  auto a = nfa_.find_letter(name);
  if (!a) {
    throw UsageError("unknown letter '" + std::string(name) + "'");
  }
  return *a;
}

StateSet image(Nfa const& nfa, StateSet s, Letter a) {
  if (a >= nfa.num_letters()) {
    throw UsageError("letter index " + std::to_string(a) + " out of range");
  }
  if (!s.subset_of(nfa.all_states())) {
    throw UsageError("state set has members outside the automaton");
  }
  StateSet out;
  s.for_each([&](std::size_t q) { out |= nfa(q, a); });
  return out;
}

StateSet image_word(Nfa const& nfa, StateSet s, Word const& w) {
  for (auto a : w) {
    s = image(nfa, s, a);
  }
  return s;
}

bool is_total(Nfa const& nfa) {
  for (Letter a = 0; a < nfa.num_letters(); ++a) {
    for (std::size_t q = 0; q < nfa.num_states(); ++q) {
      if (nfa(q, a).empty()) {
        return false;
      }
    }
  }
  return true;
}

bool is_sink(Nfa const& nfa, std::size_t q) {
  if (q >= nfa.num_states()) {
    throw UsageError("state " + std::to_string(q) + " out of range");
  }
  for (Letter a = 0; a < nfa.num_letters(); ++a) {
    if (nfa(q, a) != StateSet::singleton(q)) {
      return false;
    }
  }
  return true;
}

namespace {

// States reachable from q in the transition graph, q included.
StateSet reachable_from(Nfa const& nfa, std::size_t q) {
  StateSet seen = StateSet::singleton(q);
  StateSet todo = seen;
  while (!todo.empty()) {
    auto const p = todo.front();
    todo.erase(p);
    for (Letter a = 0; a < nfa.num_letters(); ++a) {
      auto fresh = nfa(p, a) - seen;
      seen |= fresh;
      todo |= fresh;
    }
  }
  return seen;
}

}  // namespace

bool is_strongly_connected(Nfa const& nfa) {
  auto const all = nfa.all_states();
  for (std::size_t q = 0; q < nfa.num_states(); ++q) {
    if (reachable_from(nfa, q) != all) {
      return false;
    }
  }
  return true;
}

void validate_word(Nfa const& nfa, Word const& w) {
  for (auto a : w) {
    if (a >= nfa.num_letters()) {
      throw UsageError("word letter index " + std::to_string(a)
                       + " out of range");
    }
  }
}

std::optional<std::size_t> Dfa::next(std::size_t q, Letter a) const {
  auto t = nfa_.image(q, a);
  if (t.empty()) {
    return std::nullopt;
  }
  return t.front();
}

bool Dfa::is_complete() const noexcept {
  return is_total(nfa_);
}

Dfa as_dfa(Nfa const& nfa) {
  for (std::size_t q = 0; q < nfa.num_states(); ++q) {
    for (Letter a = 0; a < nfa.num_letters(); ++a) {
      if (nfa(q, a).size() > 1) {
        throw NotDeterministic(a, q, nfa.letter_name(a));
      }
    }
  }
  return Dfa(nfa);
}

}  // namespace mortality
