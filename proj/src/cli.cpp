#include "mortality/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mortality/counter_trace.hpp"
#include "mortality/errors.hpp"
#include "mortality/extremal_search.hpp"
#include "mortality/families.hpp"
#include "mortality/matrix.hpp"
#include "mortality/solver.hpp"
#include "mortality/text_format.hpp"

namespace mortality {

namespace {

std::string read_input(std::string const& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(std::string const& path, std::string const& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file || !(file << text)) {
    throw UsageError("cannot write '" + path + "'");
  }
}

FamilyInstance make_family(std::string const& name, std::size_t param) {
  auto family = family_from_name(name);
  if (!family) {
    throw UsageError("unknown family '" + name
                     + "' (expected linear, ternary, binary or dfa-tail)");
  }
  switch (*family) {
    case Family::Linear: return gen_linear(param);
    case Family::Ternary: return gen_ternary(param);
    case Family::Binary: return gen_binary(param);
    case Family::DfaTail: return gen_dfa_tail(param);
    default: break;
  }
  throw UsageError("unknown family '" + name + "'");
}

Word canonical_word(FamilyInstance const& inst) {
  switch (inst.family) {
    case Family::Linear: return canonical_word_linear(inst.parameter);
    case Family::DfaTail: return canonical_word_dfa_tail(inst.parameter);
    default: return canonical_word_counter(inst);
  }
}

std::string name_table(FamilyInstance const& inst) {
  std::ostringstream out;
  out << "# family=" << family_name(inst.family)
      << " param=" << inst.parameter << '\n';
  out << "# states:";
  for (std::size_t q = 0; q < inst.state_names.size(); ++q) {
    out << ' ' << q << '=' << inst.state_names[q];
  }
  out << '\n';
  return out.str();
}

std::vector<std::size_t> parse_index_list(std::string const& text) {
  std::vector<std::size_t> out;
  std::string              token;
  std::istringstream       in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoul(token, &pos));
      if (pos != token.size()) {
        throw std::invalid_argument(token);
      }
    } catch (std::logic_error const&) {
      throw UsageError("bad state index '" + token + "'");
    }
  }
  return out;
}

struct GenArgs {
  std::string family;
  std::size_t param = 0;
  std::string out_path;
};

int cmd_gen(GenArgs const& a, std::ostream& out) {
  auto inst = make_family(a.family, a.param);
  auto doc  = name_table(inst) + serialize(inst.nfa);
  if (a.out_path.empty() || a.out_path == "-") {
    out << doc;
  } else {
    write_output(a.out_path, doc, out);
    out << name_table(inst);
  }
  return kExitAffirmative;
}

struct SolveArgs {
  std::string file;
  bool        count_shortest = false;
  bool        witness        = false;
  bool        progress       = false;
  std::string objective      = "mortality";
};

int cmd_solve(SolveArgs const& a, std::ostream& out, std::ostream& err) {
  auto nfa = parse_nfa(read_input(a.file));

  if (a.objective == "mortality") {
    SolveOptions options;
    options.count_shortest = a.count_shortest;
    if (a.progress) {
      options.on_level = [&err](std::size_t depth, std::size_t frontier,
                                std::size_t visited) {
        err << "depth " << depth << " frontier " << frontier << " visited "
            << visited << '\n';
      };
    }
    auto r = solve_mortality(nfa, options);
    if (!r.mortal()) {
      out << "immortal\n";
      return kExitNegative;
    }
    out << "mortal threshold=" << *r.threshold << '\n';
    if (a.witness) {
      out << "witness=" << format_word(nfa, r.witness) << '\n';
    }
    if (r.shortest_count) {
      out << "shortest_count=" << r.shortest_count->value
          << (r.shortest_count->overflow ? " saturated" : "") << '\n';
    }
    return kExitAffirmative;
  }

  SyncResult  r;
  std::string yes, no;
  if (a.objective == "careful-sync") {
    r   = solve_careful_sync(as_dfa(nfa));
    yes = "carefully-synchronizing";
    no  = "not-carefully-synchronizing";
  } else if (a.objective == "reset") {
    r   = solve_reset_threshold(as_dfa(nfa));
    yes = "synchronizing";
    no  = "not-synchronizing";
  } else if (a.objective == "d1-directing") {
    r   = solve_d1_directing(nfa);
    yes = "d1-directing";
    no  = "not-directable";
  } else {
    throw UsageError("unknown objective '" + a.objective + "'");
  }
  if (!r.found) {
    out << no << '\n';
    return kExitNegative;
  }
  out << yes << " threshold=" << r.threshold << " target=" << r.target << '\n';
  if (a.witness) {
    out << "witness=" << format_word(nfa, r.witness) << '\n';
  }
  return kExitAffirmative;
}

struct VerifyArgs {
  std::string file;
  std::string word;
};

int cmd_verify(VerifyArgs const& a, std::ostream& out, std::ostream& err) {
  auto nfa = parse_nfa(read_input(a.file));
  auto w   = parse_word(nfa, a.word);
  bool const by_subsets  = is_mortal_word(nfa, w);
  bool const by_matrices = product_is_zero(nfa_to_matrices(nfa), w);
  if (by_subsets != by_matrices) {
    err << "internal error: oracle divergence on word of length " << w.size()
        << ": subset image says " << (by_subsets ? "mortal" : "not mortal")
        << ", matrix product says " << (by_matrices ? "zero" : "nonzero")
        << std::endl;
    std::abort();
  }
  if (by_subsets) {
    out << "mortal length=" << w.size() << '\n';
    return kExitAffirmative;
  }
  out << "not mortal length=" << w.size() << '\n';
  return kExitNegative;
}

struct TraceArgs {
  std::string file;
  std::string family;
  std::size_t param = 0;
  std::string word;
  bool        canonical = false;
  std::string tracker;
  bool        check = false;
};

std::string render_grid(Nfa const& nfa, std::vector<std::string> const& names,
                        BinTracker const& tracker,
                        std::vector<TraceRow> const& rows) {
  std::ostringstream out;
  std::size_t        letter_width = 1;
  for (auto const& l : nfa.letter_names()) {
    letter_width = std::max(letter_width, l.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) {
      s.insert(0, w - s.size(), ' ');
    }
    return s;
  };
  auto cell = [&](std::size_t q, std::string const& text) {
    auto w = std::max<std::size_t>(names[q].size(), 1) + 2;
    if (tracker.mask().contains(q)) {
      return pad("[" + text + "]", w);
    }
    return pad(text + " ", w);
  };

  out << "# tracked states in [ ]\n";
  out << pad("step", 5) << ' ' << pad("", letter_width);
  for (std::size_t q = 0; q < names.size(); ++q) {
    out << ' ' << cell(q, names[q]);
  }
  out << "  bin\n";
  for (auto const& row : rows) {
    out << pad(std::to_string(row.prefix_length), 5) << ' '
        << pad(row.letter ? nfa.letter_name(*row.letter) : "-", letter_width);
    for (std::size_t q = 0; q < names.size(); ++q) {
      out << ' ' << cell(q, row.active.contains(q) ? "1" : "0");
    }
    out << "  " << row.bin << '\n';
  }
  return out.str();
}

void print_checkpoints(CheckpointReport const& report, std::ostream& out) {
  out << "checkpoints:";
  for (auto const& c : report.checkpoints) {
    out << ' ' << c.prefix_length << ':' << c.bin;
  }
  out << "\nresets:";
  for (auto r : report.resets) {
    out << ' ' << r;
  }
  out << "\nviolations=" << report.violations.size()
      << " exact_decrements=" << (report.exact_decrements() ? "yes" : "no")
      << '\n';
}

int cmd_trace(TraceArgs const& a, std::ostream& out) {
  std::optional<FamilyInstance> inst;
  std::optional<Nfa>            nfa;
  if (!a.family.empty()) {
    if (!a.file.empty()) {
      throw UsageError("give either an automaton file or --family, not both");
    }
    inst = make_family(a.family, a.param);
    nfa  = inst->nfa;
  } else if (!a.file.empty()) {
    nfa = parse_nfa(read_input(a.file));
  } else {
    throw UsageError("trace needs an automaton file or --family");
  }

  Word w;
  if (a.canonical) {
    if (!inst) {
      throw UsageError("--canonical needs --family");
    }
    w = canonical_word(*inst);
  } else {
    w = parse_word(*nfa, a.word);
  }

  std::vector<std::size_t> tracked;
  if (!a.tracker.empty()) {
    tracked = parse_index_list(a.tracker);
  } else if (inst) {
    tracked = inst->tracker;
  } else {
    for (std::size_t q = 0; q < nfa->num_states(); ++q) {
      tracked.push_back(q);
    }
  }
  BinTracker const tracker(*nfa, tracked);

  std::vector<std::string> names;
  for (std::size_t q = 0; q < nfa->num_states(); ++q) {
    names.push_back(inst ? inst->state_names[q] : std::to_string(q));
  }
  out << render_grid(*nfa, names, tracker, trace(*nfa, tracker, w));
  out << "mortal=" << (is_mortal_word(*nfa, w) ? "yes" : "no")
      << " length=" << w.size() << '\n';

  if (a.check) {
    if (inst && inst->family == Family::Ternary) {
      print_checkpoints(check_checkpoints_ternary(*inst, w), out);
    } else if (inst && inst->family == Family::Binary) {
      print_checkpoints(check_checkpoints_binary(*inst, w), out);
    } else {
      auto report = check_decrement(*nfa, tracker);
      out << "decrement subsets=" << report.subsets_checked << ' ';
      if (report.ok()) {
        out << "ok\n";
      } else {
        auto const& v = *report.violation;
        out << "violation letter=" << nfa->letter_name(v.letter)
            << " before=" << v.before << " after=" << v.after << '\n';
      }
    }
  }
  return kExitAffirmative;
}

struct SearchArgs {
  std::size_t                  states  = 2;
  std::size_t                  letters = 2;
  std::string                  cls     = "nfa";
  std::string                  mode    = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::size_t                  samples   = 0;
  std::string                  objective = "mortality";
  double                       budget    = kDefaultBudget;
  std::size_t                  workers   = 1;
  bool                         prune     = false;
};

int cmd_search(SearchArgs const& a, std::ostream& out, std::ostream& err) {
  SearchSpec spec;
  spec.states  = a.states;
  spec.letters = a.letters;
  auto cls     = automaton_class_from(a.cls);
  auto mode    = search_mode_from(a.mode);
  auto obj     = objective_from(a.objective);
  if (!cls) {
    throw UsageError("unknown class '" + a.cls + "'");
  }
  if (!mode) {
    throw UsageError("unknown mode '" + a.mode + "'");
  }
  if (!obj) {
    throw UsageError("unknown objective '" + a.objective + "'");
  }
  spec.automaton_class = *cls;
  spec.mode            = *mode;
  spec.objective       = *obj;
  spec.seed            = a.seed;
  spec.samples         = a.samples;
  spec.budget          = a.budget;
  spec.workers         = a.workers;
  spec.prune_isomorphs = a.prune;

  auto report = search(spec);
  if (!verify_bounds(report)) {
    err << "internal error: search result " << *report.best
        << " exceeds the upper bound for its class" << std::endl;
    std::abort();
  }
  out << report.render();
  return report.best ? kExitAffirmative : kExitNegative;
}

struct ConvertArgs {
  std::string file;
  std::string to;
  std::string out_path;
};

int cmd_convert(ConvertArgs const& a, std::ostream& out) {
  auto text = read_input(a.file);
  // Sniff the header keyword of the first non-comment line.
  std::istringstream in(text);
  std::string        line, keyword;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream words(line);
    if (words >> keyword) {
      break;
    }
  }
  std::string result;
  if (keyword == "nfa") {
    auto nfa = parse_nfa(text);
    result   = a.to == "nfa" ? serialize(nfa) : serialize(nfa_to_matrices(nfa));
  } else if (keyword == "matrices") {
    auto ms = parse_matrices(text);
    result  = a.to == "matrices" ? serialize(ms) : serialize(matrices_to_nfa(ms));
  } else {
    throw ParseError(0, "input is neither an automaton nor a matrix document");
  }
  write_output(a.out_path, result, out);
  return kExitAffirmative;
}

}  // namespace

int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Mortality thresholds of NFAs, DFAs and nonnegative matrix sets",
               "mortality"};
  app.require_subcommand(1, 1);

  GenArgs gen;
  auto*   gen_cmd = app.add_subcommand("gen", "Generate a family instance");
  gen_cmd->add_option("--family", gen.family, "linear|ternary|binary|dfa-tail")
      ->required();
  gen_cmd->add_option("--param", gen.param, "n for linear, k otherwise")
      ->required();
  gen_cmd->add_option("--out", gen.out_path, "Output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a shortest mortal word");
  solve_cmd->add_option("file", solve.file, "Automaton file or -")->required();
  solve_cmd->add_flag("--count-shortest", solve.count_shortest,
                      "Count shortest mortal words");
  solve_cmd->add_flag("--witness", solve.witness, "Print a shortest word");
  solve_cmd->add_flag("--progress", solve.progress,
                      "Report BFS levels on standard error");
  solve_cmd->add_option("--objective", solve.objective,
                        "mortality|careful-sync|reset|d1-directing");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check that a word is mortal");
  verify_cmd->add_option("file", verify.file, "Automaton file or -")->required();
  verify_cmd->add_option("--word", verify.word, "Letters, e.g. 'a a b' or 's^5 c'")
      ->required();

  TraceArgs tr;
  auto* trace_cmd = app.add_subcommand("trace", "Print the active-state grid of a word");
  trace_cmd->add_option("file", tr.file, "Automaton file or -");
  trace_cmd->add_option("--family", tr.family, "linear|ternary|binary|dfa-tail");
  trace_cmd->add_option("--param", tr.param, "Family parameter");
  auto* word_opt = trace_cmd->add_option("--word", tr.word, "Word to trace");
  auto* canon_opt = trace_cmd->add_flag("--canonical", tr.canonical,
                                        "Trace the family's canonical word");
  word_opt->excludes(canon_opt);
  trace_cmd->add_option("--tracker", tr.tracker,
                        "Comma-separated tracked states, most significant first");
  trace_cmd->add_flag("--check", tr.check,
                      "Run the decrement or checkpoint check");

  SearchArgs sa;
  auto* search_cmd = app.add_subcommand("search", "Search small automata for extremal thresholds");
  search_cmd->add_option("--states", sa.states)->required();
  search_cmd->add_option("--letters", sa.letters)->required();
  search_cmd->add_option("--class", sa.cls, "nfa|dfa-partial|dfa-complete");
  search_cmd->add_option("--mode", sa.mode, "exhaustive|random");
  search_cmd->add_option("--seed", sa.seed);
  search_cmd->add_option("--samples", sa.samples);
  search_cmd->add_option("--objective", sa.objective, "mortality|reset|careful-sync");
  search_cmd->add_option("--budget", sa.budget, "Maximum automata to evaluate");
  search_cmd->add_option("--workers", sa.workers);
  search_cmd->add_flag("--prune", sa.prune, "Skip isomorphic automata");

  ConvertArgs conv;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between automaton and matrix formats");
  convert_cmd->add_option("file", conv.file, "Input file or -")->required();
  convert_cmd->add_option("--to", conv.to, "nfa|matrices")
      ->required()
      ->check(CLI::IsMember({"nfa", "matrices"}));
  convert_cmd->add_option("--out", conv.out_path, "Output file (default stdout)");

  std::vector<char const*> argv;
  argv.reserve(args.size());
  for (auto const& s : args) {
    argv.push_back(s.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::ParseError const& e) {
    auto code = app.exit(e, out, err);
    return code == 0 ? kExitAffirmative : kExitUsage;
  }

  try {
    if (*gen_cmd) {
      return cmd_gen(gen, out);
    }
    if (*solve_cmd) {
      return cmd_solve(solve, out, err);
    }
    if (*verify_cmd) {
      return cmd_verify(verify, out, err);
    }
    if (*trace_cmd) {
      return cmd_trace(tr, out);
    }
    if (*search_cmd) {
      return cmd_search(sa, out, err);
    }
    if (*convert_cmd) {
      return cmd_convert(conv, out);
    }
  } catch (Error const& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mortality
