#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mortality/nfa.hpp"

namespace mortality {

enum class AutomatonClass { Nfa, DfaPartial, DfaComplete };
enum class SearchMode { Exhaustive, Random };
enum class Objective { Mortality, ResetThreshold, CarefulSync };

std::string_view to_string(AutomatonClass c) noexcept;
std::string_view to_string(SearchMode m) noexcept;
std::string_view to_string(Objective o) noexcept;
std::optional<AutomatonClass> automaton_class_from(std::string_view s) noexcept;
std::optional<SearchMode>     search_mode_from(std::string_view s) noexcept;
std::optional<Objective>      objective_from(std::string_view s) noexcept;

inline constexpr double kDefaultBudget = 1e8;

struct SearchSpec {
  std::size_t    states  = 2;
  std::size_t    letters = 2;
  AutomatonClass automaton_class = AutomatonClass::Nfa;
  SearchMode     mode      = SearchMode::Exhaustive;
  Objective      objective = Objective::Mortality;
  // Random mode only.
  std::optional<std::uint64_t> seed;
  std::size_t                  samples = 0;
  // Largest number of automata a search may evaluate.
  double budget = kDefaultBudget;
  // Worker threads; the report does not depend on this.
  std::size_t workers = 1;
  // Exhaustive mode: evaluate only automata whose transition table is the
  // lexicographically smallest among all state relabelings.
  bool prune_isomorphs = false;
};

struct SearchReport {
  std::size_t    states          = 0;
  std::size_t    letters         = 0;
  AutomatonClass automaton_class = AutomatonClass::Nfa;
  Objective      objective       = Objective::Mortality;

  // Largest objective value found; nullopt when no evaluated automaton was
  // mortal (resp. synchronizing).
  std::optional<std::size_t> best;
  // Serialized automaton attaining best; the lexicographically smallest
  // serialization among all optima.
  std::string witness;
  std::size_t optima    = 0;  // evaluated automata attaining best
  std::size_t evaluated = 0;

  // Witness document followed by "# optima=<k>" and the summary line
  // "best=<v> evaluated=<c>".
  std::string render() const;
};

// Number of automata an exhaustive search over the spec'd class visits
// (before isomorph pruning), as a double since it overflows quickly.
double enumeration_size(SearchSpec const& spec);

// Enumerates (or samples) automata and maximizes the objective. Throws
// BudgetExceeded when the enumeration size (or sample count) is above the
// budget and UsageError for inconsistent specs (random mode without a seed,
// reset threshold on a non-complete class, careful sync on NFAs).
SearchReport search(SearchSpec const& spec);

// Objective value of one automaton; nullopt when it has no mortal
// (synchronizing) word.
std::optional<std::size_t> evaluate(Nfa const& nfa, Objective objective);

// Upper bound for an objective on an n-state automaton class: 2^n - 1 for
// NFA mortality, n(n+1)/2 for DFA mortality, 2^n - n - 1 for the
// synchronization objectives.
std::uint64_t objective_upper_bound(AutomatonClass c, Objective o,
                                    std::size_t n);

// The reported best value respects objective_upper_bound(); true for an
// empty report.
bool verify_bounds(SearchReport const& report);

// Random automaton of the given class: every (letter, state) image is drawn
// independently and uniformly (NFA: any subset; partial DFA: a state or
// undefined; complete DFA: a state). Letters are named a, b, c, ...
// Identical arguments give identical automata on every platform.
Nfa random_automaton(AutomatonClass c, std::size_t states, std::size_t letters,
                     std::uint64_t seed);

}  // namespace mortality
