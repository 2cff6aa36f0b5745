#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mortality/nfa.hpp"

namespace mortality {

enum class Family { Linear, Ternary, Binary, DfaTail, LiftedCareful };

std::string_view family_name(Family f) noexcept;

// "linear", "ternary", "binary", "dfa-tail"; nullopt otherwise.
std::optional<Family> family_from_name(std::string_view name) noexcept;

// A generated automaton together with the notation used to describe it:
// state_names[i] is the conventional name of state i (q1, p0, r2, f, ...),
// tracker lists the counter states q1..qk, most significant first.
struct FamilyInstance {
  Family                   family;
  std::size_t              parameter;  // n for Linear, k otherwise
  Nfa                      nfa;
  std::vector<std::string> state_names;
  std::vector<std::size_t> tracker;

  // Index of the state with the given name; throws UsageError if absent.
  std::size_t state(std::string_view name) const;
};

// n states q1..qn, letters a1..an:
//   qi.aj = {}            if i = j = n
//         = {q(i+1)..qn}  if i = j < n
//         = Q             if j < i
//         = {qi}          if i < j
// Its unique shortest mortal word has length 2^n - 1.
FamilyInstance gen_linear(std::size_t n);

// The w1 of w_n = a_n, w_i = w_(i+1) a_i w_(i+1).
Word canonical_word_linear(std::size_t n);

// 2k + 2 states, letters s, d, c. State order: p0..pk, q1..qk, f.
FamilyInstance gen_ternary(std::size_t k);

// 3k + 2 states, letters s, d. State order: p0..p(k-1), r0..rk, q1..qk, f.
FamilyInstance gen_binary(std::size_t k);

// 2k-state binary DFA: a rotates q1..qk and advances the tail p1..pk (pk.a
// undefined); b sends q1 to p1, q2 to qk, qi to q(i-1) for i > 2, and every
// pi to q1. State order: q1..qk, p1..pk.
FamilyInstance gen_dfa_tail(std::size_t k);

// a^k b a^k a b a^k (a a b a^k)^(k-2), of length k^2 + 4k - 3.
Word canonical_word_dfa_tail(std::size_t k);

// Runs the counting procedure on a Ternary or Binary instance: shift with s
// into the right half, then repeat the decrement cycle (c, shifts, d for the
// ternary family; shifts, d for the binary one) until only a marker state is
// left, and shift that out. Returns a mortal word. Throws InternalError if
// the active set ever leaves the shape the procedure expects.
Word canonical_word_counter(FamilyInstance const& instance);

// Turns a partial DFA into an NFA over Sigma + {r}: undefined transitions go
// to Q, defined ones stay, r kills p and sends every other state to Q. The
// letter r is appended last (named "r", or "r_", "r__", ... if taken).
Nfa lift_careful_to_mortality(Dfa const& dfa, std::size_t p);

}  // namespace mortality
