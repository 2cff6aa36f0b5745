#include "mortality/matrix.hpp"

#include <charconv>
#include <sstream>

#include "mortality/errors.hpp"

namespace mortality {

BoolMatrix::BoolMatrix(std::size_t n) : rows_(n, 0) {
  if (n > kMaxStates) {
    throw CapacityError("matrix dimension " + std::to_string(n)
                        + " exceeds " + std::to_string(kMaxStates));
  }
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i);
  }
  return m;
}

BoolMatrix BoolMatrix::all_true(std::size_t n) {
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.rows_[i] = StateSet::full(n).bits();
  }
  return m;
}

bool BoolMatrix::is_zero() const noexcept {
  for (auto r : rows_) {
    if (r != 0) {
      return false;
    }
  }
  return true;
}

bool BoolMatrix::is_positive() const noexcept {
  auto const full = StateSet::full(rows_.size()).bits();
  for (auto r : rows_) {
    if (r != full) {
      return false;
    }
  }
  return true;
}

BoolMatrix BoolMatrix::operator*(BoolMatrix const& rhs) const {
  if (rhs.dimension() != dimension()) {
    throw UsageError("matrix dimension mismatch");
  }
  BoolMatrix out(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    row_type acc = 0;
    for (std::size_t j = 0; j < dimension(); ++j) {
      if (get(i, j)) {
        acc |= rhs.rows_[j];
      }
    }
    out.rows_[i] = acc;
  }
  return out;
}

BoolMatrix BoolMatrix::operator+(BoolMatrix const& rhs) const {
  if (rhs.dimension() != dimension()) {
    throw UsageError("matrix dimension mismatch");
  }
  BoolMatrix out(*this);
  for (std::size_t i = 0; i < dimension(); ++i) {
    out.rows_[i] |= rhs.rows_[i];
  }
  return out;
}

MatrixSet::MatrixSet(std::vector<BoolMatrix> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty()) {
    throw UsageError("a matrix set needs at least one matrix");
  }
  for (auto const& m : matrices_) {
    if (m.dimension() != matrices_.front().dimension()) {
      throw UsageError("matrices in a set must share one dimension");
    }
  }
}

MatrixSet nfa_to_matrices(Nfa const& nfa) {
  std::vector<BoolMatrix> out;
  out.reserve(nfa.num_letters());
  for (Letter a = 0; a < nfa.num_letters(); ++a) {
    BoolMatrix m(nfa.num_states());
    for (std::size_t i = 0; i < nfa.num_states(); ++i) {
      m.set_row(i, nfa(i, a).bits());
    }
    out.push_back(std::move(m));
  }
  return MatrixSet(std::move(out));
}

Nfa matrices_to_nfa(MatrixSet const& ms, std::vector<std::string> letter_names) {
  if (letter_names.empty()) {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      letter_names.push_back(ms.size() <= 26
                                 ? std::string(1, static_cast<char>('a' + j))
                                 : "x" + std::to_string(j));
    }
  }
  if (letter_names.size() != ms.size()) {
    throw UsageError("need one letter name per matrix");
  }
  if (ms.dimension() == 0) {
    throw UsageError("matrices of dimension 0 have no automaton");
  }
  NfaBuilder b(ms.dimension(), std::move(letter_names));
  for (std::size_t j = 0; j < ms.size(); ++j) {
    for (std::size_t i = 0; i < ms.dimension(); ++i) {
      b.set(i, static_cast<Letter>(j), StateSet(ms[j].row(i)));
    }
  }
  return b.build();
}

bool product_is_zero(MatrixSet const& ms, Word const& w) {
  auto product = BoolMatrix::identity(ms.dimension());
  for (auto a : w) {
    if (a >= ms.size()) {
      throw UsageError("word letter index " + std::to_string(a)
                       + " out of range");
    }
    product = product * ms[a];
  }
  return product.is_zero();
}

std::size_t wielandt_bound(std::size_t n) noexcept {
  return n * n - 2 * n + 2;
}

std::optional<std::size_t> exponent(BoolMatrix const& m) {
  auto const n = m.dimension();
  if (n == 0) {
    return std::nullopt;
  }
  auto power = m;
  for (std::size_t t = 1; t <= wielandt_bound(n); ++t) {
    if (power.is_positive()) {
      return t;
    }
    power = power * m;
  }
  return std::nullopt;
}

BoolMatrix sum_matrix(Dfa const& dfa) {
  if (!dfa.is_complete()) {
    throw IncompleteDfa("sum matrix needs a complete DFA");
  }
  auto const ms  = nfa_to_matrices(dfa.nfa());
  auto       sum = BoolMatrix(ms.dimension());
  for (auto const& m : ms.matrices()) {
    sum = sum + m;
  }
  return sum;
}

namespace {

std::string_view trim(std::string_view s) {
  auto const ws    = " \t\r";
  auto       first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) {
    return {};
  }
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

}  // namespace

MatrixSet parse_matrices(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t n = 0, count = 0;
  bool        have_header = false;
  std::vector<BoolMatrix> matrices;
  std::size_t row = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto raw = text.substr(start, end - start);
    start    = end + 1;
    ++line_no;
    auto hash = raw.find('#');
    auto line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) {
      if (have_header && row != 0) {
        throw ParseError(line_no, "blank line inside a matrix block");
      }
      continue;
    }
    if (!have_header) {
      std::istringstream in{std::string(line)};
      std::string        tag, nf, cf;
      in >> tag >> nf >> cf;
      std::string extra;
      if (tag != "matrices" || nf.rfind("n=", 0) != 0
          || cf.rfind("count=", 0) != 0 || (in >> extra)) {
        throw ParseError(line_no, "expected header 'matrices n=<n> count=<m>'");
      }
      try {
        std::size_t pos = 0;
        n               = std::stoul(nf.substr(2), &pos);
        if (pos != nf.size() - 2) {
          throw std::invalid_argument("n");
        }
        count = std::stoul(cf.substr(6), &pos);
        if (pos != cf.size() - 6) {
          throw std::invalid_argument("count");
        }
      } catch (std::logic_error const&) {
        throw ParseError(line_no, "bad number in header");
      }
      if (n == 0 || n > kMaxStates || count == 0) {
        throw ParseError(line_no, "dimension must be in [1, "
                                      + std::to_string(kMaxStates)
                                      + "] and count positive");
      }
      have_header = true;
      continue;
    }
    if (matrices.size() == count && row == 0) {
      throw ParseError(line_no, "more matrix rows than count declares");
    }
    if (row == 0) {
      matrices.emplace_back(n);
    }
    std::istringstream in{std::string(line)};
    std::string        tok;
    std::size_t        col = 0;
    while (in >> tok) {
      if (col == n) {
        throw ParseError(line_no, "row has more than " + std::to_string(n)
                                      + " entries");
      }
      unsigned long long value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "expected a nonnegative integer, got '"
                                      + tok + "'");
      }
      matrices.back().set(row, col, value > 0);
      ++col;
    }
    if (col != n) {
      throw ParseError(line_no, "row has " + std::to_string(col)
                                    + " entries, expected " + std::to_string(n));
    }
    row = (row + 1) % n;
  }
  if (!have_header) {
    throw ParseError(0, "missing header: empty matrix document");
  }
  if (matrices.size() != count || row != 0) {
    throw ParseError(line_no, "expected " + std::to_string(count)
                                  + " complete matrices");
  }
  return MatrixSet(std::move(matrices));
}

std::string serialize(MatrixSet const& ms) {
  std::ostringstream out;
  auto const n = ms.dimension();
  out << "matrices n=" << n << " count=" << ms.size() << '\n';
  for (std::size_t j = 0; j < ms.size(); ++j) {
    if (j != 0) {
      out << '\n';
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t h = 0; h < n; ++h) {
        out << (h == 0 ? "" : " ") << (ms[j].get(i, h) ? 1 : 0);
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace mortality
