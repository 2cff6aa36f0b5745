#include "mortality/extremal_search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "mortality/errors.hpp"
#include "mortality/solver.hpp"
#include "mortality/text_format.hpp"

namespace mortality {

std::string_view to_string(AutomatonClass c) noexcept {
  switch (c) {
    case AutomatonClass::Nfa: return "nfa";
    case AutomatonClass::DfaPartial: return "dfa-partial";
    case AutomatonClass::DfaComplete: return "dfa-complete";
  }
  return "?";
}

std::string_view to_string(SearchMode m) noexcept {
  return m == SearchMode::Exhaustive ? "exhaustive" : "random";
}

std::string_view to_string(Objective o) noexcept {
  switch (o) {
    case Objective::Mortality: return "mortality";
    case Objective::ResetThreshold: return "reset";
    case Objective::CarefulSync: return "careful-sync";
  }
  return "?";
}

std::optional<AutomatonClass> automaton_class_from(std::string_view s) noexcept {
  for (auto c : {AutomatonClass::Nfa, AutomatonClass::DfaPartial,
                 AutomatonClass::DfaComplete}) {
    if (to_string(c) == s) {
      return c;
    }
  }
  return std::nullopt;
}

std::optional<SearchMode> search_mode_from(std::string_view s) noexcept {
  for (auto m : {SearchMode::Exhaustive, SearchMode::Random}) {
    if (to_string(m) == s) {
      return m;
    }
  }
  return std::nullopt;
}

std::optional<Objective> objective_from(std::string_view s) noexcept {
  for (auto o : {Objective::Mortality, Objective::ResetThreshold,
                 Objective::CarefulSync}) {
    if (to_string(o) == s) {
      return o;
    }
  }
  return std::nullopt;
}

std::string SearchReport::render() const {
  std::ostringstream out;
  out << "# search states=" << states << " letters=" << letters
      << " class=" << to_string(automaton_class)
      << " objective=" << to_string(objective) << '\n';
  out << witness;
  out << "# optima=" << optima << '\n';
  out << "best=";
  if (best) {
    out << *best;
  } else {
    out << "none";
  }
  out << " evaluated=" << evaluated << '\n';
  return out.str();
}

namespace {

// Options per (letter, state) cell.
std::uint64_t cell_options(AutomatonClass c, std::size_t n) {
  switch (c) {
    case AutomatonClass::Nfa: return std::uint64_t{1} << n;
    case AutomatonClass::DfaPartial: return n + 1;
    case AutomatonClass::DfaComplete: return n;
  }
  return 0;
}

std::vector<std::string> default_letters(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < m; ++j) {
    out.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + j))
                          : "x" + std::to_string(j));
  }
  return out;
}

// Cell value -> image. For DFA classes value n means undefined.
StateSet cell_image(AutomatonClass c, std::size_t n, std::uint64_t v) {
  if (c == AutomatonClass::Nfa) {
    return StateSet(static_cast<StateSet::mask_type>(v));
  }
  return v == n ? StateSet() : StateSet::singleton(v);
}

Nfa build_from_cells(AutomatonClass c, std::size_t n, std::size_t m,
                     std::vector<std::uint64_t> const& cells) {
  NfaBuilder b(n, default_letters(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t q = 0; q < n; ++q) {
      b.set(q, static_cast<Letter>(a), cell_image(c, n, cells[a * n + q]));
    }
  }
  return b.build();
}

// Mixed-radix decode, cell 0 least significant.
void decode(std::uint64_t index, std::uint64_t radix,
            std::vector<std::uint64_t>& cells) {
  for (auto& cell : cells) {
    cell = index % radix;
    index /= radix;
  }
}

// Is the table the smallest (comparing from the most significant cell) of
// all its state relabelings?
bool is_canonical(AutomatonClass c, std::size_t n, std::size_t m,
                  std::vector<std::uint64_t> const& cells,
                  std::vector<std::vector<std::size_t>> const& perms) {
  std::vector<std::uint64_t> relabeled(cells.size());
  for (auto const& perm : perms) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t q = 0; q < n; ++q) {
        auto v = cells[a * n + q];
        std::uint64_t mapped;
        if (c == AutomatonClass::Nfa) {
          mapped = 0;
          for (std::size_t t = 0; t < n; ++t) {
            if ((v >> t) & 1U) {
              mapped |= std::uint64_t{1} << perm[t];
            }
          }
        } else {
          mapped = v == n ? n : perm[v];
        }
        relabeled[a * n + perm[q]] = mapped;
      }
    }
    if (std::lexicographical_compare(relabeled.rbegin(), relabeled.rend(),
                                     cells.rbegin(), cells.rend())) {
      return false;
    }
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, bound) by rejection, so the result depends only on the
// engine's (standardized) output sequence.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  auto const limit = std::numeric_limits<std::uint64_t>::max()
                     - std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    auto x = engine();
    if (x < limit) {
      return x % bound;
    }
  }
}

struct Partial {
  std::optional<std::size_t> best;
  std::string                witness;
  std::size_t                optima    = 0;
  std::size_t                evaluated = 0;

  void offer(std::optional<std::size_t> value, Nfa const& nfa) {
    ++evaluated;
    if (!value) {
      return;
    }
    if (!best || *value > *best) {
      best    = value;
      witness = serialize(nfa);
      optima  = 1;
    } else if (*value == *best) {
      ++optima;
      auto text = serialize(nfa);
      if (text < witness) {
        witness = std::move(text);
      }
    }
  }

  void merge(Partial const& o) {
    evaluated += o.evaluated;
    if (!o.best) {
      return;
    }
    if (!best || *o.best > *best) {
      best    = o.best;
      witness = o.witness;
      optima  = o.optima;
    } else if (*o.best == *best) {
      optima += o.optima;
      witness = std::min(witness, o.witness);
    }
  }
};

void validate(SearchSpec const& spec) {
  if (spec.states == 0 || spec.letters == 0) {
    throw UsageError("search needs at least one state and one letter");
  }
  if (spec.states > kMaxStates) {
    throw CapacityError("search supports at most " + std::to_string(kMaxStates)
                        + " states");
  }
  if (spec.objective == Objective::ResetThreshold
      && spec.automaton_class != AutomatonClass::DfaComplete) {
    throw UsageError("the reset objective needs the dfa-complete class");
  }
  if (spec.objective == Objective::CarefulSync
      && spec.automaton_class == AutomatonClass::Nfa) {
    throw UsageError("the careful-sync objective needs a DFA class");
  }
  if (spec.mode == SearchMode::Random && !spec.seed) {
    throw UsageError("random search needs a seed");
  }
  if (spec.mode == SearchMode::Random && spec.prune_isomorphs) {
    throw UsageError("isomorph pruning applies to exhaustive search only");
  }
  if (spec.prune_isomorphs && spec.states > 8) {
    throw UsageError("isomorph pruning supports at most 8 states");
  }
  if (spec.workers == 0) {
    throw UsageError("search needs at least one worker");
  }
}

}  // namespace

double enumeration_size(SearchSpec const& spec) {
  return std::pow(static_cast<double>(cell_options(spec.automaton_class,
                                                   spec.states)),
                  static_cast<double>(spec.states * spec.letters));
}

std::optional<std::size_t> evaluate(Nfa const& nfa, Objective objective) {
  switch (objective) {
    case Objective::Mortality: {
      auto r = solve_mortality(nfa);
      return r.threshold;
    }
    case Objective::ResetThreshold: {
      auto r = solve_reset_threshold(as_dfa(nfa));
      return r.found ? std::optional<std::size_t>(r.threshold) : std::nullopt;
    }
    case Objective::CarefulSync: {
      auto r = solve_careful_sync(as_dfa(nfa));
      return r.found ? std::optional<std::size_t>(r.threshold) : std::nullopt;
    }
  }
  return std::nullopt;
}

std::uint64_t objective_upper_bound(AutomatonClass c, Objective o,
                                    std::size_t n) {
  auto const subsets = (std::uint64_t{1} << n) - 1;
  if (o == Objective::Mortality) {
    return c == AutomatonClass::Nfa ? subsets : n * (n + 1) / 2;
  }
  return subsets - n;
}

bool verify_bounds(SearchReport const& report) {
  if (!report.best) {
    return true;
  }
  return *report.best <= objective_upper_bound(report.automaton_class,
                                               report.objective, report.states);
}

Nfa random_automaton(AutomatonClass c, std::size_t states, std::size_t letters,
                     std::uint64_t seed) {
  std::mt19937_64 engine(splitmix64(seed));
  auto const      radix = cell_options(c, states);
  std::vector<std::uint64_t> cells(states * letters);
  for (auto& cell : cells) {
    cell = uniform_below(engine, radix);
  }
  return build_from_cells(c, states, letters, cells);
}

SearchReport search(SearchSpec const& spec) {
  validate(spec);
  auto const n = spec.states;
  auto const m = spec.letters;

  std::uint64_t total = 0;
  if (spec.mode == SearchMode::Exhaustive) {
    auto const size = enumeration_size(spec);
    if (size > spec.budget) {
      throw BudgetExceeded(size, spec.budget);
    }
    total = static_cast<std::uint64_t>(size);
  } else {
    if (static_cast<double>(spec.samples) > spec.budget) {
      throw BudgetExceeded(static_cast<double>(spec.samples), spec.budget);
    }
    total = spec.samples;
  }

  std::vector<std::vector<std::size_t>> perms;
  if (spec.prune_isomorphs) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    while (std::next_permutation(perm.begin(), perm.end())) {
      perms.push_back(perm);
    }
  }

  auto const radix = cell_options(spec.automaton_class, n);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
    std::vector<std::uint64_t> cells(n * m);
    for (auto i = begin; i < end; ++i) {
      if (spec.mode == SearchMode::Exhaustive) {
        decode(i, radix, cells);
        if (spec.prune_isomorphs
            && !is_canonical(spec.automaton_class, n, m, cells, perms)) {
          continue;
        }
        auto nfa = build_from_cells(spec.automaton_class, n, m, cells);
        out.offer(evaluate(nfa, spec.objective), nfa);
      } else {
        auto nfa = random_automaton(spec.automaton_class, n, m,
                                    *spec.seed ^ splitmix64(i));
        out.offer(evaluate(nfa, spec.objective), nfa);
      }
    }
  };

  auto const workers =
      static_cast<std::uint64_t>(std::min<std::size_t>(spec.workers, 256));
  std::vector<Partial> partials(workers);
  if (workers == 1) {
    run_range(0, total, partials[0]);
  } else {
    std::vector<std::thread>        threads;
    std::vector<std::exception_ptr> errors(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      auto begin = total * w / workers;
      auto end   = total * (w + 1) / workers;
      threads.emplace_back([&, begin, end, w] {
        try {
          run_range(begin, end, partials[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) {
      t.join();
    }
    for (auto const& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }
  Partial merged;
  for (auto const& p : partials) {
    merged.merge(p);
  }

  SearchReport report;
  report.states          = n;
  report.letters         = m;
  report.automaton_class = spec.automaton_class;
  report.objective       = spec.objective;
  report.best            = merged.best;
  report.witness         = merged.witness;
  report.optima          = merged.optima;
  report.evaluated       = merged.evaluated;
  return report;
}

}  // namespace mortality
