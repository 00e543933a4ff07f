#include "kamp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "kamp/error.hpp"
#include "kamp/parser.hpp"
#include "kamp/semantics.hpp"
#include "kamp/translate.hpp"

namespace kamp::cli {

namespace {

std::string render(const TlFormula& f, Format format) {
  return format == Format::sexpr ? print_tl_sexpr(f) : print_tl(f);
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

// Runs `body`, mapping library errors to exit statuses.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  } catch (const ArityError& e) {
    err << "error: " << e.what() << "\n";
    return arity_error;
  } catch (const BudgetExceeded& e) {
    err << "BUDGET-EXCEEDED: " << e.what() << "\n";
    return budget_exceeded;
  }
}

Translation translate_cfg(const RunConfig& cfg, const FoFormula& f, std::ostream& err) {
  Translation t = translate_with_trace(f, TranslateOptions{cfg.budget});
  if (cfg.trace) err << format_trace(t.trace);
  return t;
}

}  // namespace

int cmd_translate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FoFormula f = parse_fo(cfg.formula);
    out << render(translate_cfg(cfg, f, err).formula, cfg.format) << "\n";
    return ok;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FoFormula f = parse_fo(cfg.formula);
    const Translation t = translate_cfg(cfg, f, err);
    const std::string x = *free_vars(f).begin();

    std::vector<std::string> atoms;
    if (cfg.atoms) {
      atoms = *cfg.atoms;
    } else {
      const auto used = atoms_of(f);
      atoms.assign(used.begin(), used.end());
    }
    std::vector<Chain> chains = enumerate_chains(cfg.max_size, atoms);
    const std::size_t exhaustive = chains.size();
    for (auto& m : random_chains(cfg.seed, cfg.random_count, cfg.random_size, atoms, cfg.density)) {
      chains.push_back(std::move(m));
    }
    CheckOptions options;
    options.workers = cfg.workers;
    const Verdict v = check_equiv_fo_tl(f, x, t.formula, chains, options);

    out << "translation: " << render(t.formula, cfg.format) << "\n";
    if (v.pass) {
      out << "PASS " << v.chains_checked << " chains, " << v.points_checked << " points ("
          << exhaustive << " exhaustive up to size " << cfg.max_size << ", " << cfg.random_count
          << " random up to size " << cfg.random_size << ", seed " << cfg.seed << ", atoms {"
          << join(atoms, ", ") << "})\n";
      return ok;
    }
    const Counterexample& c = *v.counterexample;
    out << "FAIL at chain " << c.chain_index << ", position " << c.position << "\n"
        << "chain: " << format_chain(c.chain) << "\n"
        << "first-order: " << (c.fo_value ? 1 : 0) << "  temporal: " << (c.tl_value ? 1 : 0)
        << "\n";
    return fail;
  });
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    std::ifstream in(cfg.chain_file);
    if (!in) {
      err << "error: cannot read chain file '" << cfg.chain_file << "'\n";
      return parse_error;
    }
    std::stringstream text;
    text << in.rdbuf();
    const std::vector<Chain> chains = parse_chains(text.str());

    // Temporal first; a first-order reading with one free variable otherwise.
    std::optional<TlFormula> tl;
    std::optional<FoFormula> fo;
    std::string x;
    try {
      tl = parse_tl(cfg.formula);
    } catch (const ParseError& tl_error) {
      try {
        fo = parse_fo(cfg.formula);
      } catch (const ParseError& fo_error) {
        const bool fo_further = std::pair(fo_error.line(), fo_error.column()) >
                                std::pair(tl_error.line(), tl_error.column());
        throw fo_further ? fo_error : tl_error;
      }
      const auto vars = free_vars(*fo);
      if (vars.size() != 1) {
        throw ArityError("expected exactly one free variable, found {" +
                         join({vars.begin(), vars.end()}, ", ") + "}");
      }
      x = *vars.begin();
    }

    for (const Chain& m : chains) {
      std::vector<std::string> cells;
      TlEvaluator evaluator(m);
      for (std::size_t t = 0; t < m.size(); ++t) {
        const bool v = tl ? evaluator.eval(t, *tl) : eval_fo(m, Assignment{{x, t}}, *fo);
        cells.push_back(v ? "1" : "0");
      }
      out << join(cells, " ") << "\n";
    }
    return ok;
  });
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const FoFormula f = parse_fo(cfg.formula);
    const Translation t = translate_cfg(cfg, f, err);

    struct PassStats {
      std::size_t steps = 0;
      std::size_t max_disjuncts = 0;
      std::uint64_t max_size = 0;
    };
    std::vector<std::string> order;
    std::map<std::string, PassStats> passes;
    for (const auto& e : t.trace.entries) {
      if (!passes.contains(e.pass)) order.push_back(e.pass);
      PassStats& s = passes[e.pass];
      ++s.steps;
      s.max_disjuncts = std::max(s.max_disjuncts, e.disjuncts);
      s.max_size = std::max(s.max_size, e.size);
    }
    out << "fo_size " << fo_size(f) << "\n"
        << "tl_size " << t.formula.tree_size() << "\n"
        << "tl_dag_size " << dag_size(t.formula) << "\n"
        << "tl_depth " << t.formula.depth() << "\n"
        << "trace_total " << (t.trace.entries.empty() ? 0 : t.trace.entries.back().total) << "\n";
    for (const auto& name : order) {
      const PassStats& s = passes[name];
      out << "pass " << name << " steps " << s.steps << " max_disjuncts " << s.max_disjuncts
          << " max_size " << s.max_size << "\n";
    }
    return ok;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translate first-order monadic formulas of order into temporal logic with Until and Since."};
  app.name(args.empty() ? "kampc" : args.front());
  app.require_subcommand(1);

  RunConfig cfg;
  std::string density = "1/2";
  std::string format = "infix";
  std::string atoms;

  auto formula_arg = [&](CLI::App* sub) {
    sub->add_option("formula", cfg.formula, "Formula text")->required();
  };
  auto translation_flags = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output syntax")->check(CLI::IsMember({"infix", "sexpr"}));
    sub->add_flag("--trace", cfg.trace, "Print the translation trace to stderr");
    sub->add_option("--budget", cfg.budget, "Node budget for intermediate results");
  };

  CLI::App* translate = app.add_subcommand("translate", "Print an equivalent temporal formula");
  formula_arg(translate);
  translation_flags(translate);

  CLI::App* verify = app.add_subcommand("verify", "Translate and check against the chain oracle");
  formula_arg(verify);
  translation_flags(verify);
  verify->add_option("--max-size", cfg.max_size, "Exhaustive chains up to this size");
  verify->add_option("--random", cfg.random_count, "Number of additional random chains");
  verify->add_option("--random-size", cfg.random_size, "Maximum size of random chains");
  verify->add_option("--seed", cfg.seed, "Seed for random chains");
  verify->add_option("--atoms", atoms, "Alphabet, comma separated (default: atoms of the formula)");
  verify->add_option("--density", density, "Labeling probability NUM/DEN");
  verify->add_option("--workers", cfg.workers, "Worker threads");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a formula at every position of chains");
  formula_arg(eval);
  eval->add_option("--chain", cfg.chain_file, "Chain file, one chain per line")->required();

  CLI::App* stats = app.add_subcommand("stats", "Report formula sizes across passes");
  formula_arg(stats);
  translation_flags(stats);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    cfg.format = format == "sexpr" ? Format::sexpr : Format::infix;
    cfg.density = parse_density(density);
    if (!atoms.empty()) {
      std::vector<std::string> list;
      std::stringstream ss(atoms);
      for (std::string item; std::getline(ss, item, ',');) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) list.push_back(item);
      }
      cfg.atoms = list;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : parse_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  }

  if (translate->parsed()) return cmd_translate(cfg, out, err);
  if (verify->parsed()) return cmd_verify(cfg, out, err);
  if (eval->parsed()) return cmd_eval(cfg, out, err);
  return cmd_stats(cfg, out, err);
}

}  // namespace kamp::cli
