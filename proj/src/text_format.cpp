#include "mortality/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

#include "mortality/errors.hpp"

namespace mortality {

namespace {

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  return line;
}

std::string_view trim(std::string_view s) {
  auto const ws = " \t\r\n";
  auto first    = s.find_first_not_of(ws);
  if (first == std::string_view::npos) {
    return {};
  }
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t                   i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    }
    auto j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
      ++j;
    }
    if (j > i) {
      out.push_back(s.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

std::optional<std::size_t> to_index(std::string_view s) {
  std::size_t value = 0;
  auto [ptr, ec]    = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

Nfa parse_nfa(std::string_view text) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      lines.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  }

  std::size_t                line_no = 0;
  std::optional<NfaBuilder>  builder;
  std::vector<bool>          seen;
  std::size_t                letter_count = 0;

  for (auto raw : lines) {
    ++line_no;
    auto line = trim(strip_comment(raw));
    if (line.empty()) {
      continue;
    }
    if (!builder) {
      auto fields = split_ws(line);
      if (fields.size() != 3 || fields[0] != "nfa"
          || fields[1].substr(0, 7) != "states="
          || fields[2].substr(0, 8) != "letters=") {
        throw ParseError(line_no,
                         "expected header 'nfa states=<n> letters=<names>'");
      }
      auto n = to_index(fields[1].substr(7));
      if (!n) {
        throw ParseError(line_no, "bad state count");
      }
      std::vector<std::string> names;
      auto                     list = fields[2].substr(8);
      std::size_t              pos  = 0;
      while (true) {
        auto comma = list.find(',', pos);
        names.emplace_back(list.substr(pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - pos));
        if (comma == std::string_view::npos) {
          break;
        }
        pos = comma + 1;
      }
      try {
        builder.emplace(*n, std::move(names));
      } catch (Error const& e) {
        throw ParseError(line_no, e.what());
      }
      letter_count = builder->build().num_letters();
      seen.assign(letter_count * *n, false);
      continue;
    }

    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "expected '<letter> <state>: <targets>'");
    }
    auto lhs = split_ws(line.substr(0, colon));
    if (lhs.size() != 2) {
      throw ParseError(line_no, "expected '<letter> <state>' before ':'");
    }
    Letter a;
    try {
      a = builder->letter(lhs[0]);
    } catch (UsageError const&) {
      throw ParseError(line_no, "unknown letter '" + std::string(lhs[0]) + "'");
    }
    auto q = to_index(lhs[1]);
    auto n = builder->num_states();
    if (!q || *q >= n) {
      throw ParseError(line_no, "bad state '" + std::string(lhs[1]) + "'");
    }
    if (seen[a * n + *q]) {
      throw ParseError(line_no, "duplicate row for letter '"
                                    + std::string(lhs[0]) + "' state "
                                    + std::to_string(*q));
    }
    seen[a * n + *q] = true;
    StateSet targets;
    for (auto tok : split_ws(line.substr(colon + 1))) {
      auto t = to_index(tok);
      if (!t || *t >= n) {
        throw ParseError(line_no, "bad target '" + std::string(tok) + "'");
      }
      targets.insert(*t);
    }
    builder->set(*q, a, targets);
  }
  if (!builder) {
    throw ParseError(0, "missing header: empty automaton document");
  }
  return builder->build();
}

Dfa parse_dfa(std::string_view text) {
  return as_dfa(parse_nfa(text));
}

std::string serialize(Nfa const& nfa) {
  std::ostringstream out;
  out << "nfa states=" << nfa.num_states() << " letters=";
  for (Letter a = 0; a < nfa.num_letters(); ++a) {
    out << (a == 0 ? "" : ",") << nfa.letter_name(a);
  }
  out << '\n';
  for (Letter a = 0; a < nfa.num_letters(); ++a) {
    for (std::size_t q = 0; q < nfa.num_states(); ++q) {
      out << nfa.letter_name(a) << ' ' << q << ':';
      nfa(q, a).for_each([&](std::size_t t) { out << ' ' << t; });
      out << '\n';
    }
  }
  return out.str();
}

std::string format_word(Nfa const& nfa, Word const& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) {
      out += ' ';
    }
    out += nfa.letter_name(w[i]);
  }
  return out;
}

Word parse_word(Nfa const& nfa, std::string_view text) {
  bool const single_char = std::all_of(
      nfa.letter_names().begin(), nfa.letter_names().end(),
      [](std::string const& s) { return s.size() == 1; });

  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::replace(normalized.begin(), normalized.end(), '\n', ' ');

  auto unknown = [](std::string_view tok) {
    return UsageError("unknown letter '" + std::string(tok) + "'");
  };

  Word w;
  for (auto tok : split_ws(normalized)) {
    std::size_t repeat = 1;
    auto        caret  = tok.find('^');
    if (caret != std::string_view::npos) {
      auto r = to_index(tok.substr(caret + 1));
      if (!r) {
        throw UsageError("bad repetition in '" + std::string(tok) + "'");
      }
      repeat = *r;
      tok    = tok.substr(0, caret);
    }
    Word piece;
    if (auto a = nfa.find_letter(tok)) {
      piece.push_back(*a);
    } else if (single_char && !tok.empty()) {
      for (char c : tok) {
        auto b = nfa.find_letter(std::string_view(&c, 1));
        if (!b) {
          throw unknown(std::string_view(&c, 1));
        }
        piece.push_back(*b);
      }
    } else {
      throw unknown(tok);
    }
    for (std::size_t i = 0; i < repeat; ++i) {
      w.insert(w.end(), piece.begin(), piece.end());
    }
  }
  return w;
}

}  // namespace mortality
