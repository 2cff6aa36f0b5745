#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mortality/errors.hpp"
#include "mortality/families.hpp"
#include "mortality/matrix.hpp"
#include "mortality/solver.hpp"
#include "mortality/text_format.hpp"
#include "oracles.hpp"

using namespace mortality;

TEST_CASE("mortality on the linear family") {
  auto inst = gen_linear(5);
  auto r    = solve_mortality(inst.nfa, {.count_shortest = true});
  REQUIRE(r.mortal());
  CHECK(*r.threshold == 31);
  CHECK(r.witness.size() == 31);
  CHECK(r.shortest_count->value == 1);
  CHECK_FALSE(r.shortest_count->overflow);
  CHECK(r.witness == canonical_word_linear(5));
  CHECK(format_word(inst.nfa, r.witness).rfind("a5 a4 a5 a3 a5 a4 a5 a2", 0)
        == 0);
  CHECK(r.trace.depth == 31);
  CHECK(r.trace.frontier_sizes.front() == 1);
}

TEST_CASE("a complete automaton that is not total is immortal") {
  auto r = solve_mortality(fixture::complete_not_total(), {.count_shortest = true});
  CHECK_FALSE(r.mortal());
  CHECK_FALSE(r.threshold.has_value());
  CHECK(r.witness.empty());
  CHECK_FALSE(r.shortest_count.has_value());
  CHECK(oracle::shortest_mortal_length(fixture::complete_not_total(), 6) == std::nullopt);
}

TEST_CASE("ternary k=2 threshold matches brute force") {
  auto inst = gen_ternary(2);
  auto r    = solve_mortality(inst.nfa);
  REQUIRE(r.mortal());
  CHECK(*r.threshold >= 2);
  CHECK(oracle::shortest_mortal_length(inst.nfa, *r.threshold)
        == r.threshold);
}

TEST_CASE("shortest counts agree with word enumeration") {
  auto tail = gen_dfa_tail(3);
  auto r    = solve_mortality(tail.nfa, {.count_shortest = true});
  REQUIRE(r.mortal());
  CHECK(*r.threshold == 18);
  CHECK(r.shortest_count->value == oracle::count_mortal_words(tail.nfa, 18));

  // Both letters kill everything, so both one-letter words are shortest.
  auto two = parse_nfa("nfa states=2 letters=a,b\n");
  auto r2  = solve_mortality(two, {.count_shortest = true});
  CHECK(*r2.threshold == 1);
  CHECK(r2.shortest_count->value == 2);
  CHECK(r2.witness == Word{0});
}

TEST_CASE("solver is optimal and witnesses are valid on random automata") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    std::size_t const n = 1 + rng() % 4;
    std::size_t const m = 1 + rng() % 2;
    auto nfa            = fixture::nfa_from_index(
        n, m, rng() % fixture::nfa_count(n, m));
    auto r   = solve_mortality(nfa, {.count_shortest = true});
    auto bf  = oracle::shortest_mortal_length(nfa, 12);
    if (!r.mortal()) {
      CHECK_FALSE(bf.has_value());
      continue;
    }
    REQUIRE(bf.has_value());
    CHECK(*r.threshold == *bf);
    CHECK(is_mortal_word(nfa, r.witness));
    CHECK(product_is_zero(nfa_to_matrices(nfa), r.witness));
    if (*bf <= 8) {
      CHECK(r.shortest_count->value == oracle::count_mortal_words(nfa, *bf));
    }
  }
}

TEST_CASE("progress callback sees every level") {
  std::size_t levels = 0;
  SolveOptions opts;
  opts.on_level = [&](std::size_t, std::size_t, std::size_t) { ++levels; };
  auto r = solve_mortality(gen_linear(4).nfa, opts);
  CHECK(levels == *r.threshold);
}

TEST_CASE("is_mortal_word") {
  auto lin = gen_linear(5);
  CHECK(is_mortal_word(lin.nfa, canonical_word_linear(5)));
  CHECK_FALSE(is_mortal_word(lin.nfa, {}));
  auto tail = gen_dfa_tail(4);
  CHECK(is_mortal_word(
      tail.nfa,
      parse_word(tail.nfa, "a^4 b a^4 a b a^4 a a b a^4 a a b a^4")));
  CHECK_THROWS_AS(is_mortal_word(lin.nfa, Word{9}), UsageError);
}

TEST_CASE("careful synchronization") {
  SUBCASE("one state with a self-loop") {
    auto r = solve_careful_sync(parse_dfa("nfa states=1 letters=a\na 0: 0\n"));
    CHECK(r.found);
    CHECK(r.threshold == 0);
    CHECK(r.witness.empty());
  }
  SUBCASE("complete 2-state DFA with a merging letter") {
    auto r = solve_careful_sync(as_dfa(fixture::dfa2({1, 0}, {0, 0})));
    CHECK(r.found);
    CHECK(r.threshold == 1);
    CHECK(r.target == 0);
  }
  SUBCASE("dfa-tail k=2 agrees with brute force") {
    auto tail = gen_dfa_tail(2);
    auto r    = solve_careful_sync(as_dfa(tail.nfa));
    auto bf   = oracle::shortest_careful_sync_length(tail.nfa, 16);
    CHECK(r.found == bf.has_value());
    if (r.found) {
      CHECK(r.threshold == *bf);
    }
  }
  SUBCASE("random partial DFAs agree with brute force") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 200; ++round) {
      std::size_t const n = 1 + rng() % 4;
      NfaBuilder b(n, {"a", "b"});
      for (std::size_t q = 0; q < n; ++q) {
        for (Letter a = 0; a < 2; ++a) {
          auto t = rng() % (n + 1);
          if (t < n) {
            b.add(q, a, t);
          }
        }
      }
      auto nfa = b.build();
      auto r   = solve_careful_sync(as_dfa(nfa));
      auto bf  = oracle::shortest_careful_sync_length(nfa, 10);
      if (r.found && r.threshold <= 10) {
        CHECK(bf == r.threshold);
      } else {
        CHECK_FALSE(bf.has_value());
      }
    }
  }
}

TEST_CASE("reset threshold") {
  CHECK(solve_reset_threshold(as_dfa(fixture::dfa2({0, 1}, {0, 0}))).threshold
        == 1);
  auto perm = solve_reset_threshold(as_dfa(fixture::dfa2({1, 0}, {0, 1})));
  CHECK_FALSE(perm.found);

  auto c4 = fixture::cerny(4);
  auto r  = solve_reset_threshold(as_dfa(c4));
  REQUIRE(r.found);
  CHECK(r.threshold == 9);
  CHECK(oracle::shortest_sync_length(c4, 9) == 9);
  CHECK(image_word(c4, c4.all_states(), r.witness)
        == StateSet::singleton(r.target));

  CHECK_THROWS_AS(solve_reset_threshold(as_dfa(gen_dfa_tail(2).nfa)),
                  IncompleteDfa);
}

TEST_CASE("D1-directing") {
  SUBCASE("one state with a self-loop") {
    auto r = solve_d1_directing(parse_nfa("nfa states=1 letters=a\na 0: 0\n"));
    CHECK(r.found);
    CHECK(r.threshold == 0);
  }
  SUBCASE("a complete automaton that is not total is not directable") {
    auto nfa = fixture::complete_not_total();
    CHECK_FALSE(solve_d1_directing(nfa).found);
    CHECK_FALSE(oracle::shortest_d1_length(nfa, 8).has_value());
  }
  SUBCASE("total NFA with a sink: directing words are mortal words of the rest") {
    // Remainder: linear family n=3 on states 0..2; state 3 is a sink. Every
    // undefined transition of the remainder goes to the sink, which keeps the
    // automaton total.
    auto lin = gen_linear(3).nfa;
    NfaBuilder b(4, lin.letter_names());
    for (Letter a = 0; a < 3; ++a) {
      for (std::size_t q = 0; q < 3; ++q) {
        b.set(q, a, lin.image(q, a) | StateSet{3});
      }
      b.set(3, a, StateSet{3});
    }
    auto nfa = b.build();
    REQUIRE(is_total(nfa));
    REQUIRE(is_sink(nfa, 3));
    auto r = solve_d1_directing(nfa);
    REQUIRE(r.found);
    CHECK(r.target == 3);
    CHECK(r.threshold == 7);
    CHECK(is_mortal_word(lin, r.witness));
    CHECK(oracle::shortest_d1_length(nfa, 7) == 7);
  }
  SUBCASE("random NFAs agree with brute force") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 150; ++round) {
      std::size_t const n = 1 + rng() % 3;
      auto nfa = fixture::nfa_from_index(n, 2, rng() % fixture::nfa_count(n, 2));
      auto r   = solve_d1_directing(nfa);
      auto bf  = oracle::shortest_d1_length(nfa, 8);
      if (r.found && r.threshold <= 8) {
        CHECK(bf == r.threshold);
      } else {
        CHECK_FALSE(bf.has_value());
      }
    }
  }
  CHECK_THROWS_AS(solve_d1_directing(gen_linear(13).nfa), TooLarge);
}

TEST_CASE("reachable subsets start from the full set") {
  auto subsets = reachable_subsets(gen_linear(4).nfa);
  CHECK(subsets.front() == StateSet::full(4));
  CHECK(subsets.size() == 16);
}

TEST_CASE("image table agrees with the plain image") {
  auto inst = gen_binary(4);
  ImageTable table(inst.nfa);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    StateSet s(static_cast<StateSet::mask_type>(rng())
               & inst.nfa.all_states().bits());
    for (Letter a = 0; a < inst.nfa.num_letters(); ++a) {
      CHECK(table.image(s, a) == image(inst.nfa, s, a));
    }
  }
}
