#include "mortality/families.hpp"

#include <algorithm>

#include "mortality/errors.hpp"

namespace mortality {

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::Linear: return "linear";
    case Family::Ternary: return "ternary";
    case Family::Binary: return "binary";
    case Family::DfaTail: return "dfa-tail";
    case Family::LiftedCareful: return "lifted-careful";
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) noexcept {
  for (auto f : {Family::Linear, Family::Ternary, Family::Binary,
                 Family::DfaTail}) {
    if (family_name(f) == name) {
      return f;
    }
  }
  return std::nullopt;
}

std::size_t FamilyInstance::state(std::string_view name) const {
  auto it = std::find(state_names.begin(), state_names.end(), name);
  if (it == state_names.end()) {
    throw UsageError("no state named '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - state_names.begin());
}

namespace {

std::string indexed(char prefix, std::size_t i) {
  return std::string(1, prefix) + std::to_string(i);
}

void require_range(std::string_view what, std::size_t value, std::size_t lo,
                   std::size_t hi) {
  if (value < lo || value > hi) {
    throw UsageError(std::string(what) + " family parameter must be in ["
                     + std::to_string(lo) + ", " + std::to_string(hi)
                     + "], got " + std::to_string(value));
  }
}

}  // namespace

FamilyInstance gen_linear(std::size_t n) {
  require_range("linear", n, 1, kMaxStates);
  std::vector<std::string> letters;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    letters.push_back(indexed('a', i));
    names.push_back(indexed('q', i));
  }
  NfaBuilder b(n, letters);
  auto const all = StateSet::full(n);
  // 1-based i, j as in the usual notation; state q_i is index i-1.
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      StateSet img;
      if (i == j && j == n) {
        img = {};
      } else if (i == j) {
        img = StateSet::range(i, n);  // q_(i+1)..q_n
      } else if (j < i) {
        img = all;
      } else {
        img = StateSet::singleton(i - 1);
      }
      b.set(i - 1, static_cast<Letter>(j - 1), img);
    }
  }
  std::vector<std::size_t> tracker(n);
  for (std::size_t i = 0; i < n; ++i) {
    tracker[i] = i;
  }
  return {Family::Linear, n, b.build(), std::move(names), std::move(tracker)};
}

Word canonical_word_linear(std::size_t n) {
  if (n == 0) {
    throw UsageError("canonical_word_linear needs n >= 1");
  }
  if (n > 30) {
    throw UsageError("canonical_word_linear: 2^n - 1 letters is too long");
  }
  Word w{static_cast<Letter>(n - 1)};
  for (std::size_t i = n - 1; i >= 1; --i) {
    Word next;
    next.reserve(2 * w.size() + 1);
    next.insert(next.end(), w.begin(), w.end());
    next.push_back(static_cast<Letter>(i - 1));
    next.insert(next.end(), w.begin(), w.end());
    w = std::move(next);
  }
  return w;
}

FamilyInstance gen_ternary(std::size_t k) {
  require_range("ternary", k, 2, (kMaxStates - 2) / 2);
  auto const n = 2 * k + 2;
  auto p       = [](std::size_t i) { return i; };
  auto q       = [k](std::size_t i) { return k + i; };
  auto const f = 2 * k + 1;

  std::vector<std::string> names;
  for (std::size_t i = 0; i <= k; ++i) {
    names.push_back(indexed('p', i));
  }
  for (std::size_t i = 1; i <= k; ++i) {
    names.push_back(indexed('q', i));
  }
  names.emplace_back("f");

  NfaBuilder b(n, {"s", "d", "c"});
  Letter const s = 0, d = 1, c = 2;

  auto const P   = StateSet::range(p(0), p(k) + 1);
  auto const Q   = StateSet::range(q(1), q(k) + 1);
  auto const F   = StateSet::singleton(f);
  auto const all = P | Q | F;

  // s: the chain p0 -> ... -> pk -> q1 -> ... -> qk, qk -> Q + f, f -> f.
  for (std::size_t i = 0; i < k; ++i) {
    b.set(p(i), s, StateSet::singleton(p(i + 1)));
  }
  b.set(p(k), s, StateSet::singleton(q(1)));
  for (std::size_t i = 1; i < k; ++i) {
    b.set(q(i), s, StateSet::singleton(q(i + 1)));
  }
  b.set(q(k), s, Q | F);
  b.set(f, s, F);

  // c: every pi -> everything, qi -> {qi, p0} for i < k, qk and f die.
  for (std::size_t i = 0; i <= k; ++i) {
    b.set(p(i), c, all);
  }
  for (std::size_t i = 1; i < k; ++i) {
    b.set(q(i), c, StateSet{q(i), p(0)});
  }
  b.set(q(k), c, {});
  b.set(f, c, {});

  // d: p0 -> everything, pi -> {q1..qi, f} for 1 <= i < k, pk -> {f},
  // qi -> {pi, f} for i < k, qk dies. An active f reactivates everything.
  b.set(p(0), d, all);
  for (std::size_t i = 1; i < k; ++i) {
    b.set(p(i), d, StateSet::range(q(1), q(i) + 1) | F);
  }
  b.set(p(k), d, F);
  for (std::size_t i = 1; i < k; ++i) {
    b.set(q(i), d, StateSet{p(i), f});
  }
  b.set(q(k), d, {});
  b.set(f, d, all);

  std::vector<std::size_t> tracker;
  for (std::size_t i = 1; i <= k; ++i) {
    tracker.push_back(q(i));
  }
  return {Family::Ternary, k, b.build(), std::move(names), std::move(tracker)};
}

FamilyInstance gen_binary(std::size_t k) {
  require_range("binary", k, 2, (kMaxStates - 2) / 3);
  auto const n = 3 * k + 2;
  auto p       = [](std::size_t i) { return i; };
  auto r       = [k](std::size_t i) { return k + i; };
  auto q       = [k](std::size_t i) { return 2 * k + i; };
  auto const f = 3 * k + 1;

  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back(indexed('p', i));
  }
  for (std::size_t i = 0; i <= k; ++i) {
    names.push_back(indexed('r', i));
  }
  for (std::size_t i = 1; i <= k; ++i) {
    names.push_back(indexed('q', i));
  }
  names.emplace_back("f");

  NfaBuilder b(n, {"s", "d"});
  Letter const s = 0, d = 1;

  auto const Q   = StateSet::range(q(1), q(k) + 1);
  auto const F   = StateSet::singleton(f);
  auto const all = StateSet::full(n);

  // s: p0 -> ... -> p(k-1) -> r0 -> ... -> rk -> q1 -> ... -> qk,
  // qk -> Q + f, f -> f.
  for (std::size_t i = 0; i + 1 < k; ++i) {
    b.set(p(i), s, StateSet::singleton(p(i + 1)));
  }
  b.set(p(k - 1), s, StateSet::singleton(r(0)));
  for (std::size_t i = 0; i < k; ++i) {
    b.set(r(i), s, StateSet::singleton(r(i + 1)));
  }
  b.set(r(k), s, StateSet::singleton(q(1)));
  for (std::size_t i = 1; i < k; ++i) {
    b.set(q(i), s, StateSet::singleton(q(i + 1)));
  }
  b.set(q(k), s, Q | F);
  b.set(f, s, F);

  // d: pi -> everything, ri -> {pi, q1..qi} for i < k, rk dies,
  // qi -> {ri} for i < k, qk dies, f -> {p0}.
  for (std::size_t i = 0; i < k; ++i) {
    b.set(p(i), d, all);
  }
  for (std::size_t i = 0; i < k; ++i) {
    b.set(r(i), d, StateSet::singleton(p(i)) | StateSet::range(q(1), q(i) + 1));
  }
  b.set(r(k), d, {});
  for (std::size_t i = 1; i < k; ++i) {
    b.set(q(i), d, StateSet::singleton(r(i)));
  }
  b.set(q(k), d, {});
  b.set(f, d, StateSet::singleton(p(0)));

  std::vector<std::size_t> tracker;
  for (std::size_t i = 1; i <= k; ++i) {
    tracker.push_back(q(i));
  }
  return {Family::Binary, k, b.build(), std::move(names), std::move(tracker)};
}

FamilyInstance gen_dfa_tail(std::size_t k) {
  require_range("dfa-tail", k, 2, kMaxStates / 2);
  auto q = [](std::size_t i) { return i - 1; };
  auto p = [k](std::size_t i) { return k + i - 1; };

  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) {
    names.push_back(indexed('q', i));
  }
  for (std::size_t i = 1; i <= k; ++i) {
    names.push_back(indexed('p', i));
  }

  NfaBuilder b(2 * k, {"a", "b"});
  Letter const a = 0, bl = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    b.add(q(i), a, i < k ? q(i + 1) : q(1));
    if (i < k) {
      b.add(p(i), a, p(i + 1));
    }
    if (i == 1) {
      b.add(q(i), bl, p(1));
    } else if (i == 2) {
      b.add(q(i), bl, q(k));
    } else {
      b.add(q(i), bl, q(i - 1));
    }
    b.add(p(i), bl, q(1));
  }
  std::vector<std::size_t> tracker;
  for (std::size_t i = 1; i <= k; ++i) {
    tracker.push_back(q(i));
  }
  return {Family::DfaTail, k, b.build(), std::move(names), std::move(tracker)};
}

Word canonical_word_dfa_tail(std::size_t k) {
  if (k < 2) {
    throw UsageError("canonical_word_dfa_tail needs k >= 2");
  }
  Letter const a = 0, b = 1;
  Word w;
  auto a_pow = [&](std::size_t times) { w.insert(w.end(), times, a); };
  a_pow(k);
  w.push_back(b);
  a_pow(k + 1);
  w.push_back(b);
  a_pow(k);
  for (std::size_t i = 0; i + 2 < k; ++i) {
    a_pow(2);
    w.push_back(b);
    a_pow(k);
  }
  return w;
}

namespace {

// Applies letters to the active set and records them, with a length guard
// so a strategy bug cannot loop forever.
class Runner {
 public:
  Runner(FamilyInstance const& inst)
      : nfa_(inst.nfa),
        active_(inst.nfa.all_states()),
        limit_(std::size_t{1} << std::min<std::size_t>(inst.nfa.num_states() + 2, 40)) {}

  StateSet active() const noexcept { return active_; }

  void apply(Letter a) {
    active_ = image(nfa_, active_, a);
    word_.push_back(a);
    if (word_.size() > limit_) {
      throw InternalError("counting strategy did not terminate");
    }
  }

  Word take() { return std::move(word_); }

 private:
  Nfa const& nfa_;
  StateSet   active_;
  std::size_t limit_;
  Word       word_;
};

[[noreturn]] void strategy_failure(std::string const& what) {
  throw InternalError("counting strategy failed: " + what);
}

Word counter_word_ternary(FamilyInstance const& inst) {
  auto const k  = inst.parameter;
  Letter const s = 0, d = 1, c = 2;
  auto const P  = StateSet::range(0, k + 1);
  auto const Q  = StateSet::range(k + 1, 2 * k + 1);
  auto const qk = 2 * k;
  auto const f  = 2 * k + 1;

  Runner run(inst);
  while (run.active() != (Q | StateSet::singleton(f))) {
    run.apply(s);
  }
  while (true) {
    // Move the representation into the right half, marker bit on qk.
    while (run.active().intersects(P) || !run.active().contains(qk)) {
      if (run.active().contains(qk)) {
        strategy_failure("qk active while the left half is still occupied");
      }
      run.apply(s);
    }
    if (run.active() - StateSet::singleton(f) == StateSet::singleton(qk)) {
      // Value zero: only the marker (and possibly f) is left.
      run.apply(c);
      if (!run.active().empty()) {
        strategy_failure("final c left active states");
      }
      return run.take();
    }
    run.apply(c);
    do {
      run.apply(s);
    } while (!run.active().contains(qk));
    if (run.active().contains(f)) {
      strategy_failure("f active before d");
    }
    run.apply(d);
  }
}

Word counter_word_binary(FamilyInstance const& inst) {
  auto const k  = inst.parameter;
  Letter const s = 0, d = 1;
  auto const P  = StateSet::range(0, k);
  auto const R  = StateSet::range(k, 2 * k + 1);
  auto const Q  = StateSet::range(2 * k + 1, 3 * k + 1);
  auto const rk = 2 * k;
  auto const qk = 3 * k;
  auto const f  = 3 * k + 1;

  Runner run(inst);
  while (run.active() != (Q | StateSet::singleton(f))) {
    run.apply(s);
  }
  run.apply(d);
  while (true) {
    if (run.active().size() == 1 && run.active().subset_of(P | R)) {
      // Only the shift pointer is left: walk it onto rk, where d kills it.
      while (run.active() != StateSet::singleton(rk)) {
        run.apply(s);
      }
      run.apply(d);
      if (!run.active().empty()) {
        strategy_failure("final d left active states");
      }
      return run.take();
    }
    while (run.active().intersects(P) || !run.active().contains(qk)) {
      if (run.active().contains(qk)) {
        strategy_failure("qk active while the left part is still occupied");
      }
      run.apply(s);
    }
    if ((run.active() & R).size() != 1) {
      strategy_failure("expected exactly one active middle state before d");
    }
    run.apply(d);
  }
}

}  // namespace

Word canonical_word_counter(FamilyInstance const& instance) {
  switch (instance.family) {
    case Family::Ternary: return counter_word_ternary(instance);
    case Family::Binary: return counter_word_binary(instance);
    default:
      throw UsageError("canonical_word_counter needs a ternary or binary "
                       "family instance");
  }
}

Nfa lift_careful_to_mortality(Dfa const& dfa, std::size_t p) {
  auto const& src = dfa.nfa();
  auto const  n   = src.num_states();
  if (p >= n) {
    throw UsageError("target state " + std::to_string(p) + " out of range");
  }
  auto letters = src.letter_names();
  std::string r = "r";
  while (src.find_letter(r)) {
    r += '_';
  }
  letters.push_back(r);
  NfaBuilder b(n, letters);
  auto const all = src.all_states();
  for (Letter a = 0; a < src.num_letters(); ++a) {
    for (std::size_t q = 0; q < n; ++q) {
      auto img = src(q, a);
      b.set(q, a, img.empty() ? all : img);
    }
  }
  auto const rl = static_cast<Letter>(src.num_letters());
  for (std::size_t q = 0; q < n; ++q) {
    b.set(q, rl, q == p ? StateSet() : all);
  }
  return b.build();
}

}  // namespace mortality
