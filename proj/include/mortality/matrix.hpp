#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mortality/nfa.hpp"

namespace mortality {

// Square {0,1} matrix over the boolean semiring. Row i is a bitmask whose bit
// h is entry (i, h).
class BoolMatrix {
 public:
  using row_type = StateSet::mask_type;

  // All-false n x n matrix; throws CapacityError above kMaxStates.
  explicit BoolMatrix(std::size_t n);

  static BoolMatrix identity(std::size_t n);
  static BoolMatrix all_true(std::size_t n);

  std::size_t dimension() const noexcept { return rows_.size(); }

  bool get(std::size_t i, std::size_t h) const noexcept {
    return ((rows_[i] >> h) & 1U) != 0;
  }
  void set(std::size_t i, std::size_t h, bool value = true) noexcept {
    if (value) {
      rows_[i] |= row_type{1} << h;
    } else {
      rows_[i] &= ~(row_type{1} << h);
    }
  }
  row_type row(std::size_t i) const noexcept { return rows_[i]; }
  void     set_row(std::size_t i, row_type bits) noexcept { rows_[i] = bits; }

  bool is_zero() const noexcept;
  bool is_positive() const noexcept;  // every entry true

  // Boolean product; throws UsageError on dimension mismatch.
  BoolMatrix operator*(BoolMatrix const& rhs) const;
  // Entrywise or.
  BoolMatrix operator+(BoolMatrix const& rhs) const;

  friend bool operator==(BoolMatrix const&, BoolMatrix const&) = default;

 private:
  std::vector<row_type> rows_;
};

// One matrix per letter, all of the same dimension.
class MatrixSet {
 public:
  // Throws UsageError if the matrices differ in dimension or the list is
  // empty.
  explicit MatrixSet(std::vector<BoolMatrix> matrices);

  std::size_t dimension() const noexcept { return matrices_.front().dimension(); }
  std::size_t size() const noexcept { return matrices_.size(); }
  BoolMatrix const& operator[](std::size_t i) const { return matrices_.at(i); }
  std::vector<BoolMatrix> const& matrices() const noexcept { return matrices_; }

  friend bool operator==(MatrixSet const&, MatrixSet const&) = default;

 private:
  std::vector<BoolMatrix> matrices_;
};

// Entry (i, h) of matrix a is true iff h is in Delta(i, a).
MatrixSet nfa_to_matrices(Nfa const& nfa);

// Inverse of nfa_to_matrices. Letter names default to a, b, c, ... (x0, x1,
// ... beyond 26 letters).
Nfa matrices_to_nfa(MatrixSet const& ms,
                    std::vector<std::string> letter_names = {});

// The product of the matrices spelled by w is the zero matrix. Multiplies full
// matrices, so it does not share code with the subset image path.
bool product_is_zero(MatrixSet const& ms, Word const& w);

// n^2 - 2n + 2.
std::size_t wielandt_bound(std::size_t n) noexcept;

// Smallest t with M^t entrywise positive, searched up to wielandt_bound();
// nullopt when M is not primitive.
std::optional<std::size_t> exponent(BoolMatrix const& m);

// Entrywise or of all letter matrices of a complete DFA; throws IncompleteDfa
// if some transition is undefined.
BoolMatrix sum_matrix(Dfa const& dfa);

// Text format:
//
//   matrices n=<n> count=<m>
//   <n rows of n nonnegative integers>
//   <blank line>
//   ...
//
// Positive entries are read as true. '#' comments are allowed.
MatrixSet   parse_matrices(std::string_view text);
std::string serialize(MatrixSet const& ms);

}  // namespace mortality
