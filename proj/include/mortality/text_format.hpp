#pragma once

#include <string>
#include <string_view>

#include "mortality/nfa.hpp"

namespace mortality {

// Line-based automaton format:
//
//   nfa states=<n> letters=<name>,<name>,...
//   <letter> <state>: <target> <target> ...
//
// States are 0-based. A missing row or an empty target list is an empty
// image. '#' starts a comment that runs to the end of the line; blank lines
// are ignored. Throws ParseError with the offending line number.
Nfa parse_nfa(std::string_view text);

// parse_nfa() followed by as_dfa().
Dfa parse_dfa(std::string_view text);

// Header line plus one row per (letter, state) pair, letter-major, including
// rows with an empty image. parse_nfa(serialize(x)) == x.
std::string serialize(Nfa const& nfa);

// Letters separated by single spaces.
std::string format_word(Nfa const& nfa, Word const& w);

// Tokens separated by whitespace or commas; "x^k" repeats letter x k times.
// When every letter name is a single character, a token that is not a letter
// name is read character by character ("aab" == "a a b"). Throws UsageError
// on unknown letters.
Word parse_word(Nfa const& nfa, std::string_view text);

}  // namespace mortality
