// Acceptance suite: one PASS/FAIL line per criterion. With arguments, runs
// only the listed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "generators.hpp"
#include "kamp/batch.hpp"
#include "kamp/cli.hpp"
#include "kamp/parser.hpp"
#include "kamp/semantics.hpp"
#include "kamp/translate.hpp"
#include "oracles.hpp"

using namespace kamp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const std::vector<std::string> kPQ{"P", "Q"};

std::vector<std::string> sorted_atoms(const FoFormula& f) {
  const auto s = atoms_of(f);
  return {s.begin(), s.end()};
}

std::string describe(const Counterexample& c) {
  return "chain " + std::to_string(c.chain_index) + " [" + format_chain(c.chain) + "] position " +
         std::to_string(c.position);
}

std::map<std::size_t, std::vector<const Chain*>> by_size(const std::vector<Chain>& chains) {
  std::map<std::size_t, std::vector<const Chain*>> out;
  for (const auto& m : chains) out[m.size()].push_back(&m);
  return out;
}

// Compares a Dea with a first-order oracle on every chain and every
// assignment of the Dea's scope with z0 < z1, lane-parallel per chain size.
// Returns an empty string on agreement, else the first disagreement found.
std::string compare_on_pairs(const Dea& d, const FoFormula& oracle, const std::vector<Chain>& chains) {
  const auto& k = simd::active_kernels();
  for (const auto& [size, group] : by_size(chains)) {
    const ChainBatch batch(group);
    BatchTlEvaluator tl(batch, k);
    for (const auto& a : testing::all_assignments(d.scope, size)) {
      if (a.at("z0") >= a.at("z1")) continue;
      const Rows got = eval_dea_lanes(batch, tl, a, d, k);
      const Rows want = eval_fo_lanes(batch, oracle, a, k);
      for (std::size_t lane = 0; lane < batch.lanes(); ++lane) {
        if (ChainBatch::bit(got.data(), lane) != ChainBatch::bit(want.data(), lane)) {
          std::string where = "[" + format_chain(*group[lane]) + "]";
          for (const auto& [v, p] : a) where += " " + v + "=" + std::to_string(p);
          return where;
        }
      }
    }
  }
  return {};
}

// 1 -----------------------------------------------------------------------

Outcome end_to_end() {
  Outcome o;
  std::size_t chains = 0;
  const auto& corpus = testing::corpus();
  for (auto text : corpus) {
    const FoFormula f = parse_fo(text);
    const auto all = enumerate_chains(4, sorted_atoms(f));
    const Verdict v = check_equiv_fo_tl(f, "x", translate(f), all);
    chains += v.chains_checked;
    if (!v.pass) {
      o.pass = false;
      o.detail = std::string(text) + " disagrees at " + describe(*v.counterexample);
      return o;
    }
  }
  o.detail = std::to_string(corpus.size()) + " formulas, " + std::to_string(chains) +
             " chain checks, all chains up to size 4";
  return o;
}

// 2 -----------------------------------------------------------------------

Outcome randomized() {
  std::mt19937_64 rng(0);
  testing::FoShape shape;
  std::vector<Chain> chains = enumerate_chains(3, kPQ);
  for (auto& m : random_chains(0, 100, 10, kPQ)) chains.push_back(std::move(m));
  for (int i = 0; i < 200; ++i) {
    const FoFormula f = testing::random_fo(rng, shape);
    const Verdict v = check_equiv_fo_tl(f, "x", translate(f), chains);
    if (!v.pass) return {false, "formula " + std::to_string(i) + " " + print_fo(f) + " at " + describe(*v.counterexample)};
  }
  return {true, "200 formulas, " + std::to_string(chains.size()) + " chains each (85 exhaustive + 100 random)"};
}

// 3 -----------------------------------------------------------------------

Outcome closure_laws() {
  std::mt19937_64 rng(3);
  const VariableOrder pair{"u", "v"};
  const VariableOrder triple{"u", "v", "w"};
  const auto chains = enumerate_chains(4, kPQ);
  auto random_dea = [&](const VariableOrder& scope) {
    return Dea{scope, {testing::random_ea(rng, 3, scope, kPQ), testing::random_ea(rng, 3, scope, kPQ)}};
  };
  auto restrict = [](const Assignment& a, const VariableOrder& scope) {
    Assignment out;
    for (const auto& v : scope) out[v] = a.at(v);
    return out;
  };
  std::map<std::string, std::size_t> checks;
  auto law = [&](const char* name, bool holds) {
    ++checks[name];
    if (!holds) throw std::runtime_error(name);
  };

  try {
    for (int trial = 0; trial < 30; ++trial) {
      const Dea a = random_dea(pair);
      const Dea b = random_dea(pair);
      const Dea both = ea_and(a, b);
      const Dea some = ea_exists("v", a);
      const Dea wide = embed(a, triple);
      const Dea top = top_dea(triple);
      const EaFormula e = testing::random_ea(rng, 3, triple, kPQ);
      Dea recombined = top_dea(triple);
      for (const auto& piece : ea_split_pairs(e)) {
        VariableOrder scope;
        for (const auto& v : triple) {
          if (piece.bindings.contains(v)) scope.push_back(v);
        }
        recombined = ea_and(recombined, embed(Dea{scope, {piece}}, triple));
      }

      for (const auto& m : chains) {
        DeaEvaluator eval(m);
        for (const auto& x : testing::all_assignments(triple, m.size())) {
          const Assignment ab = restrict(x, pair);
          const bool va = eval.eval(ab, a);
          law("ea_and", eval.eval(ab, both) == (va && eval.eval(ab, b)));
          law("embed", eval.eval(x, wide) == va);
          law("top_dea", eval.eval(x, top));
          law("ea_split_pairs", eval.eval(x, recombined) == eval.eval(x, e));
          if (x.at("v") == 0 && x.at("w") == 0) {
            bool witness = false;
            for (std::size_t p = 0; p < m.size(); ++p) witness = witness || eval.eval({{"u", x.at("u")}, {"v", p}}, a);
            law("ea_exists", eval.eval({{"u", x.at("u")}}, some) == witness);
          }
        }
      }
    }
  } catch (const std::runtime_error& e) {
    return {false, std::string("law ") + e.what() + " violated"};
  }
  std::string detail;
  for (const auto& [name, n] : checks) detail += (detail.empty() ? "" : ", ") + name + " " + std::to_string(n);
  return {true, "30 trials, chains up to size 4: " + detail};
}

// 4 -----------------------------------------------------------------------

Outcome ladder() {
  std::string detail;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> atoms;
    std::vector<TlFormula> preds;
    for (std::size_t i = 1; i <= n; ++i) {
      atoms.push_back("P" + std::to_string(i));
      preds.push_back(TlFormula::atom(atoms.back()));
    }
    const auto chains = enumerate_chains(5, atoms);
    const Dea d = oc(preds);
    if (auto bad = compare_on_pairs(d, testing::oc_fo(preds), chains); !bad.empty()) {
      return {false, "n=" + std::to_string(n) + " disagrees at " + bad};
    }
    detail += (detail.empty() ? "" : ", ") + ("n=" + std::to_string(n) + ": " + std::to_string(chains.size()) +
                                             " chains, " + std::to_string(d.disjuncts.size()) + " disjuncts");
  }
  return {true, detail};
}

// 5 -----------------------------------------------------------------------

Outcome interval_negation() {
  const std::vector<TlFormula> labels{TlFormula::atom("P"), TlFormula::atom("Q"),
                                      TlFormula::negation(TlFormula::atom("P")), TlFormula::top()};
  const auto chains = enumerate_chains(5, kPQ);
  const auto& k = simd::active_kernels();
  std::size_t patterns = 0;
  std::size_t cover_checks = 0;
  for (std::size_t n = 0; n <= 2; ++n) {
    const std::size_t count = 2 * n + 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < count; ++i) total *= labels.size();
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<TlFormula> list;
      for (std::size_t i = 0, c = code; i < count; ++i, c /= labels.size()) list.push_back(labels[c % labels.size()]);
      const auto pat = IntervalPattern::alternating(list);
      const FoFormula oracle =
          FoFormula::conjunction(FoFormula::less("z0", "z1"), FoFormula::negation(testing::pattern_fo(pat, "z0", "z1")));
      if (auto bad = compare_on_pairs(neg_interval(pat), oracle, chains); !bad.empty()) {
        return {false, "pattern " + std::to_string(patterns) + " disagrees at " + bad};
      }
      ++patterns;
      if (n == 0) continue;
      const auto cases = interval_case_conditions(pat);
      for (const auto& [size, group] : by_size(chains)) {
        const ChainBatch batch(group);
        BatchTlEvaluator tl(batch, k);
        for (std::size_t z0 = 0; z0 < size; ++z0) {
          for (std::size_t z1 = z0 + 2; z1 < size; ++z1) {
            const Assignment a{{"z0", z0}, {"z1", z1}};
            Rows any(batch.words());
            for (const auto& c : cases) {
              const Rows r = eval_dea_lanes(batch, tl, a, c, k);
              k.or_words(any.data(), any.data(), r.data(), any.size());
            }
            k.andnot_words(any.data(), batch.lane_mask().data(), any.data(), any.size());
            if (k.any_words(any.data(), any.size())) {
              return {false, "case cover fails for pattern " + std::to_string(patterns - 1)};
            }
            cover_checks += batch.lanes();
          }
        }
      }
    }
  }
  return {true, std::to_string(patterns) + " patterns on " + std::to_string(chains.size()) + " chains, " +
                    std::to_string(cover_checks) + " cover instances"};
}

// 6 -----------------------------------------------------------------------

Outcome limit_modalities() {
  std::mt19937_64 rng(6);
  const auto chains = enumerate_chains(5, kPQ);
  std::size_t k_violations = 0;
  std::string first;
  std::size_t expansion_mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const TlFormula f = testing::random_tl(rng, 3, kPQ);
    bool violated = false;
    for (const auto& m : chains) {
      TlEvaluator eval(m);
      const auto& plus = eval.row(TlFormula::limit_future(f));
      const auto& minus = eval.row(TlFormula::limit_past(f));
      const auto& row = eval.row(f);
      const auto& always = eval.row(TlFormula::always(f));
      const auto& hist = eval.row(TlFormula::historically(f));
      for (std::size_t t = 0; t < m.size(); ++t) {
        if ((plus[t] || minus[t]) && !violated) {
          violated = true;
          if (first.empty()) {
            first = std::string(plus[t] ? "K+" : "K-") + "(" + print_tl(f) + ") true at [" + format_chain(m) +
                    "] position " + std::to_string(t);
          }
        }
        bool later = true;
        for (std::size_t s = t + 1; s < m.size(); ++s) later = later && row[s];
        bool earlier = true;
        for (std::size_t s = 0; s < t; ++s) earlier = earlier && row[s];
        if (always[t] != later || hist[t] != earlier) ++expansion_mismatches;
      }
    }
    if (violated) ++k_violations;
  }
  std::string detail = "K+/K- false everywhere: " + std::to_string(50 - k_violations) + "/50 formulas";
  if (!first.empty()) detail += " (first: " + first + ")";
  detail += "; G/H expansions: " + std::to_string(expansion_mismatches) + " mismatches";
  return {k_violations == 0 && expansion_mismatches == 0, detail};
}

// 7 -----------------------------------------------------------------------

Outcome mirror_duality() {
  std::mt19937_64 rng(7);
  const auto chains = enumerate_chains(6, kPQ);
  std::vector<Chain> reversed;
  for (const auto& m : chains) reversed.push_back(reverse(m));
  for (int i = 0; i < 100; ++i) {
    const TlFormula f = testing::random_tl(rng, 4, kPQ);
    const TlFormula g = mirror(f);
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const auto row = eval_tl_row(chains[c], g);
      const auto back = eval_tl_row(reversed[c], f);
      const std::size_t n = chains[c].size();
      for (std::size_t t = 0; t < n; ++t) {
        if (row[t] != back[n - 1 - t]) {
          return {false, print_tl(f) + " at [" + format_chain(chains[c]) + "] position " + std::to_string(t)};
        }
      }
    }
  }
  return {true, "100 formulas on " + std::to_string(chains.size()) + " chains"};
}

// 8 -----------------------------------------------------------------------

Outcome determinism() {
  auto invoke = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::vector<std::string> full{"kampc"};
    full.insert(full.end(), args.begin(), args.end());
    const int status = cli::run(full, out, err);
    return std::to_string(status) + "\n" + out.str() + err.str();
  };
  std::size_t translations = 0;
  for (auto text : testing::corpus()) {
    const std::vector<std::string> args{"translate", std::string(text)};
    if (invoke(args) != invoke(args)) return {false, "translate output differs for " + std::string(text)};
    ++translations;
  }
  const std::vector<std::string> verify{"verify", "A y.(x < y -> E z.(y < z & P(z)))", "--random", "50"};
  auto threaded = verify;
  threaded.insert(threaded.end(), {"--workers", "4"});
  if (invoke(verify) != invoke(threaded)) return {false, "verify output depends on worker count"};

  // Corrupted translations must yield the same first counterexample under every schedule.
  const std::vector<CheckOptions> schedules{{1, false, nullptr, 256}, {1, true, nullptr, 256},
                                            {4, true, nullptr, 1},    {3, true, &simd::scalar_kernels(), 5},
                                            {4, false, nullptr, 17}};
  std::size_t compared = 0;
  for (auto text : testing::corpus()) {
    const FoFormula f = parse_fo(text);
    const TlFormula wrong = mirror(translate(f));
    const auto chains = enumerate_chains(4, kPQ);
    std::optional<std::pair<std::size_t, std::size_t>> reference;
    bool first = true;
    for (const auto& s : schedules) {
      const Verdict v = check_equiv_fo_tl(f, "x", wrong, chains, s);
      std::optional<std::pair<std::size_t, std::size_t>> where;
      if (v.counterexample) where = std::pair{v.counterexample->chain_index, v.counterexample->position};
      if (first) {
        reference = where;
        first = false;
      } else if (where != reference) {
        return {false, "counterexample for " + std::string(text) + " depends on scheduling"};
      }
    }
    if (reference) ++compared;
  }
  return {true, std::to_string(translations) + " translations repeated identically; " + std::to_string(compared) +
                    " corrupted translations give schedule-independent counterexamples"};
}

// 9 -----------------------------------------------------------------------

std::string nested_negation(int k) {
  std::string body = "P(v0)";
  for (int i = 1; i <= k; ++i) {
    const std::string outer = "v" + std::to_string(i);
    const std::string inner = "v" + std::to_string(i - 1);
    body = "!E " + inner + ".(" + outer + " < " + inner + " & " + body + ")";
  }
  // Rename the outermost variable to x.
  const std::string top = "v" + std::to_string(k);
  std::string out;
  for (std::size_t i = 0; i < body.size();) {
    if (body.compare(i, top.size(), top) == 0 &&
        (i + top.size() == body.size() || !std::isdigit(static_cast<unsigned char>(body[i + top.size()])))) {
      out += "x";
      i += top.size();
    } else {
      out += body[i++];
    }
  }
  return out;
}

Outcome blowup_report() {
  std::vector<std::uint64_t> sizes;
  std::string detail;
  for (int k = 1; k <= 6; ++k) {
    cli::RunConfig cfg;
    cfg.command = cli::Command::stats;
    cfg.formula = nested_negation(k);
    std::ostringstream out, err;
    if (cli::cmd_stats(cfg, out, err) != cli::ok) return {false, "stats failed for depth " + std::to_string(k)};
    std::istringstream lines(out.str());
    std::string key;
    std::uint64_t value = 0;
    std::uint64_t tl_size = 0;
    std::uint64_t total = 0;
    while (lines >> key) {
      if (key == "pass") {
        std::string rest;
        std::getline(lines, rest);
        continue;
      }
      lines >> value;
      if (key == "tl_size") tl_size = value;
      if (key == "trace_total") total = value;
    }
    sizes.push_back(total);
    detail += (detail.empty() ? "" : ", ") + ("k=" + std::to_string(k) + " tl " + std::to_string(tl_size) +
                                             " trace " + std::to_string(total));
  }
  const bool monotone = std::is_sorted(sizes.begin(), sizes.end());
  return {monotone, detail};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "end-to-end soundness on the corpus", end_to_end},
      {2, "randomized soundness", randomized},
      {3, "normal-form closure laws", closure_laws},
      {4, "ladder against brute force", ladder},
      {5, "interval negation and case cover", interval_negation},
      {6, "limit modalities false on finite chains; G/H expansions", limit_modalities},
      {7, "mirror duality", mirror_duality},
      {8, "determinism and schedule independence", determinism},
      {9, "size report on a nested-negation family (monotone)", blowup_report},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.1fs", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " -- " << o.detail
              << " [" << elapsed << "]" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
