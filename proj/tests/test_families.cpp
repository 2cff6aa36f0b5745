#include <string>

#include "doctest.h"
#include "mortality/errors.hpp"
#include "mortality/families.hpp"
#include "mortality/matrix.hpp"
#include "mortality/solver.hpp"
#include "mortality/text_format.hpp"
#include "oracles.hpp"

using namespace mortality;

namespace {

StateSet named(FamilyInstance const& inst,
               std::initializer_list<char const*> names) {
  StateSet s;
  for (auto name : names) {
    s.insert(inst.state(name));
  }
  return s;
}

std::string prefix(FamilyInstance const& inst, Word const& w, std::size_t len) {
  return format_word(inst.nfa, Word(w.begin(), w.begin() + len));
}

// Copy of inst.nfa with one image replaced.
Nfa with_image(FamilyInstance const& inst, char const* state,
               char const* letter, StateSet targets) {
  auto const& nfa = inst.nfa;
  NfaBuilder b(nfa.num_states(), nfa.letter_names());
  for (Letter a = 0; a < nfa.num_letters(); ++a) {
    for (std::size_t q = 0; q < nfa.num_states(); ++q) {
      b.set(q, a, nfa.image(q, a));
    }
  }
  b.set(inst.state(state), b.letter(letter), targets);
  return b.build();
}

}  // namespace

TEST_CASE("family names") {
  for (auto f : {Family::Linear, Family::Ternary, Family::Binary,
                 Family::DfaTail}) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK_FALSE(family_from_name("cerny").has_value());
}

TEST_CASE("linear family transitions") {
  auto inst = gen_linear(5);
  auto const& nfa = inst.nfa;
  auto a = [&](int j) { return *nfa.find_letter("a" + std::to_string(j)); };
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      auto qi  = inst.state("q" + std::to_string(i));
      auto img = nfa.image(qi, a(j));
      if (i == 5 && j == 5) {
        CHECK(img.empty());
      } else if (i == j) {
        CHECK(img == StateSet::range(qi + 1, 5));
      } else if (j < i) {
        CHECK(img == nfa.all_states());
      } else {
        CHECK(img == StateSet{qi});
      }
    }
  }
  CHECK(*solve_mortality(gen_linear(1).nfa).threshold == 1);
  CHECK_THROWS_AS(gen_linear(0), UsageError);
  CHECK_THROWS_AS(gen_linear(27), UsageError);
}

TEST_CASE("canonical linear words") {
  auto two = gen_linear(2);
  CHECK(format_word(two.nfa, canonical_word_linear(2)) == "a2 a1 a2");
  auto five = gen_linear(5);
  CHECK(prefix(five, canonical_word_linear(5), 4) == "a5 a4 a5 a3");
  auto ten = gen_linear(10);
  auto w   = canonical_word_linear(10);
  CHECK(w.size() == 1023);
  CHECK(is_mortal_word(ten.nfa, w));
}

TEST_CASE("ternary family transitions") {
  auto inst = gen_ternary(4);
  auto const& nfa = inst.nfa;
  auto s = *nfa.find_letter("s");
  auto d = *nfa.find_letter("d");
  auto c = *nfa.find_letter("c");
  CHECK(nfa.num_states() == 10);

  char const* chain[] = {"p0", "p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4"};
  for (std::size_t i = 0; i + 1 < 9; ++i) {
    CHECK(nfa.image(inst.state(chain[i]), s)
          == StateSet{inst.state(chain[i + 1])});
  }
  CHECK(nfa.image(inst.state("q4"), s)
        == named(inst, {"q1", "q2", "q3", "q4", "f"}));
  CHECK(nfa.image(inst.state("f"), s) == named(inst, {"f"}));

  CHECK(nfa.image(inst.state("q4"), c).empty());
  CHECK(nfa.image(inst.state("f"), c).empty());
  CHECK(nfa.image(inst.state("q2"), c) == named(inst, {"q2", "p0"}));

  CHECK(nfa.image(inst.state("p0"), d) == nfa.all_states());
  CHECK(nfa.image(inst.state("p3"), d) == named(inst, {"q1", "q2", "q3", "f"}));
  CHECK(nfa.image(inst.state("p4"), d) == named(inst, {"f"}));
  CHECK(nfa.image(inst.state("q3"), d) == named(inst, {"p3", "f"}));
  CHECK(nfa.image(inst.state("q4"), d).empty());
  CHECK(nfa.image(inst.state("f"), d) == nfa.all_states());
  CHECK(nfa.image(inst.state("p2"), c) == nfa.all_states());

  CHECK_THROWS_AS(gen_ternary(1), UsageError);
}

TEST_CASE("the ternary lower bound needs f.d to reactivate everything") {
  // Alternative readings of the last line of the d-definition: an f.s that
  // overrides the s-definition, or f.d left empty.
  auto k6 = gen_ternary(6);
  CHECK(*solve_mortality(k6.nfa).threshold >= 32);

  auto all = k6.nfa.all_states();
  CHECK_FALSE(solve_mortality(with_image(k6, "f", "s", all)).mortal());
  auto empty_fd = solve_mortality(with_image(k6, "f", "d", StateSet{}));
  REQUIRE(empty_fd.mortal());
  CHECK(*empty_fd.threshold < 32);
}

TEST_CASE("binary family transitions") {
  auto inst = gen_binary(3);
  auto const& nfa = inst.nfa;
  auto s = *nfa.find_letter("s");
  auto d = *nfa.find_letter("d");
  CHECK(nfa.num_states() == 11);

  char const* chain[] = {"p0", "p1", "p2", "r0", "r1", "r2",
                         "r3", "q1", "q2", "q3"};
  for (std::size_t i = 0; i + 1 < 10; ++i) {
    CHECK(nfa.image(inst.state(chain[i]), s)
          == StateSet{inst.state(chain[i + 1])});
  }
  CHECK(nfa.image(inst.state("q3"), s) == named(inst, {"q1", "q2", "q3", "f"}));
  CHECK(nfa.image(inst.state("f"), s) == named(inst, {"f"}));

  CHECK(nfa.image(inst.state("r3"), d).empty());
  CHECK(nfa.image(inst.state("q3"), d).empty());
  for (auto p : {"p0", "p1", "p2"}) {
    CHECK(nfa.image(inst.state(p), d) == nfa.all_states());
  }
  CHECK(nfa.image(inst.state("r2"), d) == named(inst, {"p2", "q1", "q2"}));
  CHECK(nfa.image(inst.state("q2"), d) == named(inst, {"r2"}));
  CHECK(nfa.image(inst.state("f"), d) == named(inst, {"p0"}));

  CHECK_THROWS_AS(gen_binary(9), UsageError);
}

TEST_CASE("dfa-tail family transitions") {
  auto inst = gen_dfa_tail(4);
  auto dfa  = as_dfa(inst.nfa);
  auto a    = *inst.nfa.find_letter("a");
  auto b    = *inst.nfa.find_letter("b");
  auto q    = [&](int i) { return inst.state("q" + std::to_string(i)); };
  auto p    = [&](int i) { return inst.state("p" + std::to_string(i)); };
  for (int i = 1; i <= 4; ++i) {
    CHECK(dfa.next(q(i), a) == q(i % 4 + 1));
  }
  for (int i = 1; i < 4; ++i) {
    CHECK(dfa.next(p(i), a) == p(i + 1));
  }
  CHECK_FALSE(dfa.next(p(4), a).has_value());
  CHECK(dfa.next(q(1), b) == p(1));
  CHECK(dfa.next(q(2), b) == q(4));
  CHECK(dfa.next(q(3), b) == q(2));
  CHECK(dfa.next(q(4), b) == q(3));
  for (int i = 1; i <= 4; ++i) {
    CHECK(dfa.next(p(i), b) == q(1));
  }
}

TEST_CASE("dfa-tail canonical words") {
  auto two = gen_dfa_tail(2);
  CHECK(format_word(two.nfa, canonical_word_dfa_tail(2))
        == "a a b a a a b a a");
  CHECK(*solve_mortality(two.nfa).threshold == 9);
  for (std::size_t k = 2; k <= 6; ++k) {
    auto inst = gen_dfa_tail(k);
    auto w    = canonical_word_dfa_tail(k);
    CHECK(w.size() == k * k + 4 * k - 3);
    CHECK(is_mortal_word(inst.nfa, w));
  }
  CHECK(canonical_word_dfa_tail(4).size() == 29);
}

TEST_CASE("dfa-tail shortest mortal words are not unique beyond k=2") {
  // Counts confirmed by enumerating every binary word of length 18 at k=3.
  std::uint64_t const expected[] = {1, 4, 7, 12, 21};
  for (std::size_t k = 2; k <= 6; ++k) {
    auto r = solve_mortality(gen_dfa_tail(k).nfa, {.count_shortest = true});
    CHECK(*r.threshold == k * k + 4 * k - 3);
    CHECK(r.shortest_count->value == expected[k - 2]);
  }
  auto k3 = gen_dfa_tail(3);
  CHECK(oracle::count_mortal_words(k3.nfa, 18) == 4);
  CHECK(oracle::count_mortal_words(k3.nfa, 17) == 0);
}

TEST_CASE("counting strategy words") {
  SUBCASE("ternary k=4 opens with s^5 c s d") {
    auto inst = gen_ternary(4);
    auto w    = canonical_word_counter(inst);
    CHECK(prefix(inst, w, 8) == "s s s s s c s d");
    CHECK(is_mortal_word(inst.nfa, w));
  }
  SUBCASE("binary k=3 opens with s^7 d s^4 d") {
    auto inst = gen_binary(3);
    auto w    = canonical_word_counter(inst);
    CHECK(prefix(inst, w, 13) == "s s s s s s s d s s s s d");
    CHECK(is_mortal_word(inst.nfa, w));
  }
  SUBCASE("words are mortal and respect the lower bounds") {
    for (std::size_t k = 2; k <= 6; ++k) {
      auto inst = gen_ternary(k);
      auto w    = canonical_word_counter(inst);
      CHECK(is_mortal_word(inst.nfa, w));
      CHECK(product_is_zero(nfa_to_matrices(inst.nfa), w));
      CHECK(w.size() >= (std::size_t{1} << (k - 1)));
      CHECK(w.size() >= *solve_mortality(inst.nfa).threshold);
    }
    for (std::size_t k = 2; k <= 5; ++k) {
      auto inst = gen_binary(k);
      auto w    = canonical_word_counter(inst);
      CHECK(is_mortal_word(inst.nfa, w));
      CHECK(w.size() >= (std::size_t{1} << k));
    }
  }
  SUBCASE("other families are rejected") {
    CHECK_THROWS_AS(canonical_word_counter(gen_linear(3)), UsageError);
  }
}

TEST_CASE("lifting careful synchronization to mortality") {
  SUBCASE("one state with a self-loop") {
    auto lifted =
        lift_careful_to_mortality(parse_dfa("nfa states=1 letters=a\na 0: 0\n"),
                                  0);
    CHECK(lifted.letter_names() == std::vector<std::string>{"a", "r"});
    auto r = solve_mortality(lifted);
    CHECK(*r.threshold == 1);
    CHECK(format_word(lifted, r.witness) == "r");
  }
  SUBCASE("letter name collision") {
    auto lifted = lift_careful_to_mortality(
        parse_dfa("nfa states=1 letters=r,r_\nr 0: 0\n"), 0);
    CHECK(lifted.letter_name(2) == "r__");
  }
  SUBCASE("construction") {
    auto dfa    = parse_dfa("nfa states=3 letters=a\na 0: 1\na 1: 1\n");
    auto lifted = lift_careful_to_mortality(dfa, 1);
    CHECK(lifted.image(0, 0) == StateSet{1});
    CHECK(lifted.image(2, 0) == lifted.all_states());
    CHECK(lifted.image(1, 1).empty());
    CHECK(lifted.image(0, 1) == lifted.all_states());
    auto cs = solve_careful_sync(dfa);
    REQUIRE_FALSE(cs.found);  // a is undefined on state 2
    CHECK_THROWS_AS(lift_careful_to_mortality(dfa, 3), UsageError);
  }
  SUBCASE("w r is mortal for a careful-sync witness w") {
    auto dfa = parse_dfa("nfa states=3 letters=a,b\n"
                         "a 0: 1\na 1: 2\na 2: 0\n"
                         "b 0: 0\nb 1: 1\nb 2: 0\n");
    auto cs = solve_careful_sync(dfa);
    REQUIRE(cs.found);
    auto lifted = lift_careful_to_mortality(dfa, cs.target);
    auto w      = cs.witness;
    w.push_back(*lifted.find_letter("r"));
    CHECK(is_mortal_word(lifted, w));
    auto t = *solve_mortality(lifted).threshold;
    CHECK(cs.threshold <= t);
    CHECK(t <= cs.threshold + 1);
  }
}
