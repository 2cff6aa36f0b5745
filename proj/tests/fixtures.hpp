#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mortality/nfa.hpp"
#include "mortality/text_format.hpp"

namespace fixture {

// Two states, two letters: a is 0 -> {0, 1} and undefined on 1, b is
// undefined on 0 and 1 -> {0, 1}. Not total, yet it has no mortal word.
inline mortality::Nfa complete_not_total() {
  return mortality::parse_nfa(
      "nfa states=2 letters=a,b\n"
      "a 0: 0 1\n"
      "a 1:\n"
      "b 0:\n"
      "b 1: 0 1\n");
}

// Cerny automaton C_n: a rotates, b merges state n-1 into state 0.
inline mortality::Nfa cerny(std::size_t n) {
  mortality::NfaBuilder b(n, {"a", "b"});
  for (std::size_t q = 0; q < n; ++q) {
    b.add(q, 0, (q + 1) % n);
    b.add(q, 1, q == n - 1 ? 0 : q);
  }
  return b.build();
}

// Complete two-state DFA given by the two letter maps.
inline mortality::Nfa dfa2(std::vector<std::size_t> const& a,
                           std::vector<std::size_t> const& b) {
  mortality::NfaBuilder builder(2, {"a", "b"});
  for (std::size_t q = 0; q < 2; ++q) {
    builder.add(q, 0, a[q]);
    builder.add(q, 1, b[q]);
  }
  return builder.build();
}

// Wielandt matrix: the n-cycle i -> i+1 plus the chord n-1 -> 1.
inline std::vector<std::vector<int>> wielandt(std::size_t n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][(i + 1) % n] = 1;
  }
  m[n - 1][1] = 1;
  return m;
}

// Every NFA with the given shape, as the index-th element of the mixed-radix
// enumeration over 2^n images per (letter, state) cell.
inline mortality::Nfa nfa_from_index(std::size_t n, std::size_t m,
                                     std::size_t index) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) {
    names.emplace_back(1, static_cast<char>('a' + j));
  }
  mortality::NfaBuilder b(n, names);
  std::size_t const radix = std::size_t{1} << n;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t q = 0; q < n; ++q) {
      b.set(q, static_cast<mortality::Letter>(a),
            mortality::StateSet(
                static_cast<mortality::StateSet::mask_type>(index % radix)));
      index /= radix;
    }
  }
  return b.build();
}

inline std::size_t nfa_count(std::size_t n, std::size_t m) {
  return std::size_t{1} << (n * m * n);
}

}  // namespace fixture
