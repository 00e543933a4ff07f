#include "kamp/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>
#include <utility>

#include "kamp/batch.hpp"
#include "kamp/error.hpp"

namespace kamp {

bool TlEvaluator::eval(std::size_t t, const TlFormula& f) {
  if (t >= m_.size()) {
    throw EvalError("position " + std::to_string(t) + " out of range for chain of size " +
                    std::to_string(m_.size()));
  }
  return row(f)[t];
}

const std::vector<bool>& TlEvaluator::row(const TlFormula& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  std::vector<std::pair<TlFormula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (memo_.contains(g)) continue;
    if (expanded || g.kind() == TlKind::top || g.kind() == TlKind::atom) {
      memo_.emplace(g, compute(g));
      continue;
    }
    stack.emplace_back(g, true);
    if (g.is_binary()) stack.emplace_back(g.rhs(), false);
    stack.emplace_back(g.lhs(), false);
  }
  return memo_.at(f);
}

std::vector<bool> TlEvaluator::compute(const TlFormula& f) {
  const std::size_t n = m_.size();
  std::vector<bool> out(n);
  switch (f.kind()) {
    case TlKind::top:
      out.assign(n, true);
      break;
    case TlKind::atom:
      for (std::size_t t = 0; t < n; ++t) out[t] = m_.holds(f.name(), t);
      break;
    case TlKind::negation: {
      const auto& a = memo_.at(f.lhs());
      for (std::size_t t = 0; t < n; ++t) out[t] = !a[t];
      break;
    }
    case TlKind::disjunction:
    case TlKind::conjunction: {
      const auto& a = memo_.at(f.lhs());
      const auto& b = memo_.at(f.rhs());
      const bool conj = f.kind() == TlKind::conjunction;
      for (std::size_t t = 0; t < n; ++t) out[t] = conj ? (a[t] && b[t]) : (a[t] || b[t]);
      break;
    }
    case TlKind::until: {
      // Some t' > t has the goal and the hold formula covers (t, t').
      const auto& hold = memo_.at(f.lhs());
      const auto& goal = memo_.at(f.rhs());
      for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t w = t + 1; w < n && !out[t]; ++w) {
          bool covered = true;
          for (std::size_t s = t + 1; s < w && covered; ++s) covered = hold[s];
          out[t] = goal[w] && covered;
        }
      }
      break;
    }
    case TlKind::since: {
      const auto& hold = memo_.at(f.lhs());
      const auto& goal = memo_.at(f.rhs());
      for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t w = 0; w < t && !out[t]; ++w) {
          bool covered = true;
          for (std::size_t s = w + 1; s < t && covered; ++s) covered = hold[s];
          out[t] = goal[w] && covered;
        }
      }
      break;
    }
  }
  return out;
}

bool eval_tl(const Chain& m, std::size_t t, const TlFormula& f) {
  return TlEvaluator(m).eval(t, f);
}

std::vector<bool> eval_tl_row(const Chain& m, const TlFormula& f) {
  return TlEvaluator(m).row(f);
}

namespace {

class FoEval {
 public:
  FoEval(const Chain& m, Assignment env) : m_(m), env_(std::move(env)) {}

  bool eval(const FoFormula& f) {
    switch (f.kind()) {
      case FoKind::predicate:
        return m_.holds(f.atom(), lookup(f.var()));
      case FoKind::less:
        return lookup(f.var()) < lookup(f.var2());
      case FoKind::equal:
        return lookup(f.var()) == lookup(f.var2());
      case FoKind::negation:
        return !eval(f.lhs());
      case FoKind::disjunction:
        return eval(f.lhs()) || eval(f.rhs());
      case FoKind::conjunction:
        return eval(f.lhs()) && eval(f.rhs());
      case FoKind::exists:
      case FoKind::forall: {
        const bool exists = f.kind() == FoKind::exists;
        auto saved = env_.find(f.var());
        const bool had = saved != env_.end();
        const std::size_t old = had ? saved->second : 0;
        bool result = !exists;
        for (std::size_t p = 0; p < m_.size() && result != exists; ++p) {
          env_.insert_or_assign(f.var(), p);
          result = eval(f.body());
        }
        if (had) {
          env_.insert_or_assign(f.var(), old);
        } else {
          env_.erase(f.var());
        }
        return result;
      }
    }
    return false;
  }

 private:
  std::size_t lookup(const std::string& v) const {
    auto it = env_.find(v);
    if (it == env_.end()) throw EvalError("unassigned variable '" + v + "'");
    if (it->second >= m_.size()) throw EvalError("variable '" + v + "' assigned outside the chain");
    return it->second;
  }

  const Chain& m_;
  Assignment env_;
};

struct Unit {
  std::vector<std::size_t> indices;  // increasing
};

struct UnitResult {
  std::uint64_t points = 0;
  std::optional<std::pair<std::size_t, std::size_t>> first;  // chain index, position
  std::exception_ptr error;
};

std::vector<Unit> plan(std::span<const Chain> chains, std::size_t lanes) {
  std::map<std::size_t, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < chains.size(); ++i) by_size[chains[i].size()].push_back(i);
  std::vector<Unit> units;
  for (auto& [size, indices] : by_size) {
    for (std::size_t from = 0; from < indices.size(); from += lanes) {
      const std::size_t to = std::min(indices.size(), from + lanes);
      units.push_back({{indices.begin() + static_cast<std::ptrdiff_t>(from),
                        indices.begin() + static_cast<std::ptrdiff_t>(to)}});
    }
  }
  return units;
}

UnitResult run_scalar(const Unit& unit, const FoFormula& fo, std::string_view x,
                      const TlFormula& tl, std::span<const Chain> chains) {
  UnitResult r;
  for (std::size_t i : unit.indices) {
    const Chain& m = chains[i];
    TlEvaluator tl_eval(m);
    const auto& row = tl_eval.row(tl);
    r.points += m.size();
    if (r.first) continue;
    for (std::size_t t = 0; t < m.size(); ++t) {
      const bool fo_value = FoEval(m, Assignment{{std::string(x), t}}).eval(fo);
      if (fo_value != row[t]) {
        r.first = {i, t};
        break;
      }
    }
  }
  return r;
}

UnitResult run_batched(const Unit& unit, const FoFormula& fo, std::string_view x,
                       const TlFormula& tl, std::span<const Chain> chains,
                       const simd::KernelTable& k) {
  UnitResult r;
  std::vector<const Chain*> members;
  for (std::size_t i : unit.indices) members.push_back(&chains[i]);
  ChainBatch batch(members);
  BatchTlEvaluator tl_eval(batch, k);
  const Rows& tl_rows = tl_eval.rows(tl);
  const Rows fo_rows = eval_fo_table(batch, fo, x, k);
  const std::size_t w = batch.words();
  const std::size_t n = batch.positions();
  r.points = static_cast<std::uint64_t>(n) * members.size();

  // Lane l fails if any position differs; the earliest lane wins since
  // lanes follow chain order.
  Rows diff(w, 0);
  Rows scratch(w);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < w; ++i) scratch[i] = tl_rows[t * w + i] ^ fo_rows[t * w + i];
    k.or_words(diff.data(), diff.data(), scratch.data(), w);
  }
  k.and_words(diff.data(), diff.data(), batch.lane_mask().data(), w);
  if (!k.any_words(diff.data(), w)) return r;
  for (std::size_t l = 0; l < members.size(); ++l) {
    if (!ChainBatch::bit(diff.data(), l)) continue;
    for (std::size_t t = 0; t < n; ++t) {
      if (ChainBatch::bit(tl_rows.data() + t * w, l) != ChainBatch::bit(fo_rows.data() + t * w, l)) {
        r.first = {unit.indices[l], t};
        return r;
      }
    }
  }
  return r;
}

}  // namespace

bool eval_fo(const Chain& m, const Assignment& a, const FoFormula& f) {
  return FoEval(m, a).eval(f);
}

Verdict check_equiv_fo_tl(const FoFormula& fo, std::string_view x, const TlFormula& tl,
                          std::span<const Chain> chains, const CheckOptions& options) {
  for (const auto& v : free_vars(fo)) {
    if (v != x) {
      throw ArityError("formula has free variable '" + v + "' besides '" + std::string(x) + "'");
    }
  }
  const simd::KernelTable& k = options.kernels ? *options.kernels : simd::active_kernels();
  const std::vector<Unit> units = plan(chains, std::max<std::size_t>(1, options.lanes));
  std::vector<UnitResult> results(units.size());

  auto run = [&](std::size_t u) {
    try {
      results[u] = options.batched ? run_batched(units[u], fo, x, tl, chains, k)
                                   : run_scalar(units[u], fo, x, tl, chains);
    } catch (...) {
      results[u].error = std::current_exception();
    }
  };

  const unsigned workers = std::max(1U, options.workers);
  if (workers == 1 || units.size() < 2) {
    for (std::size_t u = 0; u < units.size(); ++u) run(u);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < std::min<std::size_t>(workers, units.size()); ++i) {
      pool.emplace_back([&] {
        for (std::size_t u = next++; u < units.size(); u = next++) run(u);
      });
    }
    for (auto& th : pool) th.join();
  }

  Verdict v;
  v.chains_checked = chains.size();
  std::optional<std::pair<std::size_t, std::size_t>> first;
  for (const auto& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    v.points_checked += r.points;
    if (r.first && (!first || *r.first < *first)) first = r.first;
  }
  if (first) {
    const Chain& m = chains[first->first];
    v.pass = false;
    v.counterexample = Counterexample{
        first->first, m, first->second,
        eval_fo(m, Assignment{{std::string(x), first->second}}, fo),
        eval_tl(m, first->second, tl)};
  }
  return v;
}

}  // namespace kamp
