#include "kamp/normal_form.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "kamp/error.hpp"

namespace kamp {

namespace {

const TlFormula& tt() {
  static const TlFormula f = TlFormula::top();
  return f;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

std::set<std::string> as_set(const VariableOrder& scope) {
  return {scope.begin(), scope.end()};
}

std::string scope_text(const VariableOrder& scope) {
  std::string out = "(";
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (i > 0) out += ", ";
    out += scope[i];
  }
  return out + ")";
}

// Position required for point j by the assignment, or npos if free;
// `ok` turns false when two variables on one point disagree.
constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> required_positions(const Assignment& a, const EaFormula& e, bool& ok) {
  std::vector<std::size_t> req(e.points.size(), kFree);
  ok = true;
  for (const auto& [v, j] : e.bindings) {
    auto it = a.find(v);
    if (it == a.end()) throw EvalError("unassigned variable '" + v + "'");
    if (req[j] != kFree && req[j] != it->second) ok = false;
    req[j] = it->second;
  }
  return req;
}

}  // namespace

EaFormula ea_skeleton(const std::vector<std::vector<std::string>>& groups) {
  EaFormula e;
  e.points.assign(groups.size(), tt());
  e.intervals.assign(groups.size() + 1, tt());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (const auto& v : groups[i]) e.bindings[v] = i;
  }
  return e;
}

void validate(const EaFormula& e) {
  if (e.intervals.size() != e.points.size() + 1) {
    throw ScopeError("EA formula needs one more interval label than point labels");
  }
  for (const auto& [v, j] : e.bindings) {
    if (j >= e.points.size()) throw ScopeError("variable '" + v + "' bound past the last point");
  }
}

void validate(const Dea& d) {
  const auto scope = as_set(d.scope);
  if (scope.size() != d.scope.size()) throw ScopeError("duplicate variable in scope");
  for (const auto& e : d.disjuncts) {
    validate(e);
    std::set<std::string> bound;
    for (const auto& [v, j] : e.bindings) bound.insert(v);
    if (bound != scope) {
      throw ScopeError("disjunct " + format_ea(e) + " does not bind exactly " +
                       scope_text(d.scope));
    }
  }
}

// ---------------------------------------------------------------------------
// Reference evaluation

bool DeaEvaluator::interval(const TlFormula& label, std::size_t lo, std::size_t hi) {
  const auto& row = tl_.row(label);
  for (std::size_t t = lo; t < hi; ++t) {
    if (!row[t]) return false;
  }
  return true;
}

bool DeaEvaluator::eval(const Assignment& a, const EaFormula& e) {
  validate(e);
  bool ok = true;
  const auto req = required_positions(a, e, ok);
  if (!ok) return false;
  for (std::size_t p : req) {
    if (p != kFree && p >= m_.size()) throw EvalError("variable assigned outside the chain");
  }

  // Depth-first over increasing tuples; `from` is the first admissible position.
  const std::size_t n = e.points.size();
  auto rec = [&](auto&& self, std::size_t j, std::size_t from) -> bool {
    if (j == n) return interval(e.intervals[n], from, m_.size());
    const auto& alpha = tl_.row(e.points[j]);
    const auto& beta = tl_.row(e.intervals[j]);
    for (std::size_t p = from; p < m_.size(); ++p) {
      if (p > from && !beta[p - 1]) break;
      if (req[j] != kFree && req[j] != p) continue;
      if (!alpha[p]) continue;
      if (self(self, j + 1, p + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

bool DeaEvaluator::eval(const Assignment& a, const Dea& d) {
  for (const auto& v : d.scope) {
    if (!a.contains(v)) throw EvalError("unassigned variable '" + v + "'");
  }
  for (const auto& e : d.disjuncts) {
    if (eval(a, e)) return true;
  }
  return false;
}

bool eval_ea(const Chain& m, const Assignment& a, const EaFormula& e) {
  return DeaEvaluator(m).eval(a, e);
}

bool eval_dea(const Chain& m, const Assignment& a, const Dea& d) {
  return DeaEvaluator(m).eval(a, d);
}

Rows eval_dea_lanes(const ChainBatch& batch, BatchTlEvaluator& tl, const Assignment& a,
                    const Dea& d, const simd::KernelTable& k) {
  using simd::Word;
  const std::size_t w = batch.words();
  const std::size_t positions = batch.positions();
  for (const auto& v : d.scope) {
    auto it = a.find(v);
    if (it == a.end()) throw EvalError("unassigned variable '" + v + "'");
    if (it->second >= positions) throw EvalError("variable '" + v + "' assigned outside the chain");
  }
  Rows result(w, 0);
  for (const auto& e : d.disjuncts) {
    validate(e);
    bool ok = true;
    const auto req = required_positions(a, e, ok);
    if (!ok) continue;
    const std::size_t n = e.points.size();
    // Prefetch tables; references into the memo stay valid across inserts.
    std::vector<const Rows*> alpha(n);
    std::vector<const Rows*> beta(n + 1);
    for (std::size_t j = 0; j < n; ++j) alpha[j] = &tl.rows(e.points[j]);
    for (std::size_t j = 0; j <= n; ++j) beta[j] = &tl.rows(e.intervals[j]);

    std::vector<Rows> run(n + 1, Rows(w));
    std::vector<Rows> live(n + 1, Rows(w));
    auto rec = [&](auto&& self, std::size_t j, std::size_t from, const Rows& mask) -> void {
      Rows& acc = run[j];
      acc = mask;
      if (j == n) {
        for (std::size_t t = from; t < positions; ++t) {
          k.and_words(acc.data(), acc.data(), beta[n]->data() + t * w, w);
        }
        k.or_words(result.data(), result.data(), acc.data(), w);
        return;
      }
      for (std::size_t p = from; p < positions; ++p) {
        if (p > from) k.and_words(acc.data(), acc.data(), beta[j]->data() + (p - 1) * w, w);
        if (!k.any_words(acc.data(), w)) break;
        if (req[j] != kFree && req[j] != p) continue;
        Rows& next = live[j];
        k.and_words(next.data(), acc.data(), alpha[j]->data() + p * w, w);
        if (k.any_words(next.data(), w)) self(self, j + 1, p + 1, Rows(next));
      }
    };
    rec(rec, 0, 0, batch.lane_mask());
  }
  k.and_words(result.data(), result.data(), batch.lane_mask().data(), w);
  return result;
}

// ---------------------------------------------------------------------------
// Constructions

Dea top_dea(const VariableOrder& scope) {
  std::vector<std::vector<std::vector<std::string>>> orderings{{}};
  for (const auto& v : scope) {
    std::vector<std::vector<std::vector<std::string>>> next;
    for (const auto& groups : orderings) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        auto joined = groups;
        joined[g].push_back(v);
        next.push_back(std::move(joined));
      }
      for (std::size_t g = 0; g <= groups.size(); ++g) {
        auto split = groups;
        split.insert(split.begin() + static_cast<std::ptrdiff_t>(g), {v});
        next.push_back(std::move(split));
      }
    }
    orderings = std::move(next);
  }
  Dea d{scope, {}};
  for (const auto& groups : orderings) d.disjuncts.push_back(ea_skeleton(groups));
  return d;
}

Dea false_dea(const VariableOrder& scope) { return Dea{scope, {}}; }

std::vector<EaFormula> merge(const EaFormula& a, const EaFormula& b) {
  const std::size_t na = a.points.size();
  const std::size_t nb = b.points.size();
  constexpr long kNone = -1;
  constexpr long kConflict = -2;
  std::vector<long> partner_a(na, kNone);
  std::vector<long> partner_b(nb, kNone);
  auto link = [&](std::vector<long>& partner, std::size_t i, long j) {
    if (partner[i] == kNone) {
      partner[i] = j;
    } else if (partner[i] != j) {
      partner[i] = kConflict;
    }
  };
  for (const auto& [v, i] : a.bindings) {
    auto it = b.bindings.find(v);
    if (it == b.bindings.end()) continue;
    link(partner_a, i, static_cast<long>(it->second));
    link(partner_b, it->second, static_cast<long>(i));
  }

  std::vector<EaFormula> out;
  EaFormula cur;
  std::vector<std::size_t> land_a(na);
  std::vector<std::size_t> land_b(nb);

  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
    const TlFormula gap = fold_and(a.intervals[i], b.intervals[j]);
    if (i == na && j == nb) {
      EaFormula e = cur;
      e.intervals.push_back(gap);
      for (const auto& [v, p] : a.bindings) e.bindings[v] = land_a[p];
      for (const auto& [v, p] : b.bindings) e.bindings[v] = land_b[p];
      out.push_back(std::move(e));
      return;
    }
    auto place = [&](const TlFormula& label, bool take_a, bool take_b) {
      if (label.is_false()) return;
      const std::size_t index = cur.points.size();
      if (take_a) land_a[i] = index;
      if (take_b) land_b[j] = index;
      cur.intervals.push_back(gap);
      cur.points.push_back(label);
      self(self, i + (take_a ? 1 : 0), j + (take_b ? 1 : 0));
      cur.intervals.pop_back();
      cur.points.pop_back();
    };
    if (i < na && partner_a[i] == kNone) place(fold_and(a.points[i], b.intervals[j]), true, false);
    if (j < nb && partner_b[j] == kNone) place(fold_and(b.points[j], a.intervals[i]), false, true);
    if (i < na && j < nb && (partner_a[i] == kNone || partner_a[i] == static_cast<long>(j)) &&
        (partner_b[j] == kNone || partner_b[j] == static_cast<long>(i))) {
      place(fold_and(a.points[i], b.points[j]), true, true);
    }
  };
  rec(rec, 0, 0);
  return out;
}

Dea conjoin(const Dea& a, const Dea& b) {
  Dea out{a.scope, {}};
  for (const auto& v : b.scope) {
    if (std::find(out.scope.begin(), out.scope.end(), v) == out.scope.end()) out.scope.push_back(v);
  }
  for (const auto& ea : a.disjuncts) {
    for (const auto& eb : b.disjuncts) {
      for (auto& e : merge(ea, eb)) out.disjuncts.push_back(std::move(e));
    }
  }
  return simplify(out);
}

Dea ea_and(const Dea& a, const Dea& b) {
  if (as_set(a.scope) != as_set(b.scope)) {
    throw ScopeError("conjunction of Deas over different scopes " + scope_text(a.scope) + " and " +
                     scope_text(b.scope));
  }
  return conjoin(a, b);
}

Dea ea_or(const Dea& a, const Dea& b) {
  if (as_set(a.scope) != as_set(b.scope)) {
    throw ScopeError("disjunction of Deas over different scopes " + scope_text(a.scope) + " and " +
                     scope_text(b.scope));
  }
  Dea out = a;
  out.disjuncts.insert(out.disjuncts.end(), b.disjuncts.begin(), b.disjuncts.end());
  return simplify(out);
}

Dea ea_exists(std::string_view v, const Dea& d) {
  auto it = std::find(d.scope.begin(), d.scope.end(), v);
  if (it == d.scope.end()) {
    throw ScopeError("variable '" + std::string(v) + "' not in scope " + scope_text(d.scope));
  }
  Dea out{d.scope, d.disjuncts};
  out.scope.erase(out.scope.begin() + (it - d.scope.begin()));
  for (auto& e : out.disjuncts) e.bindings.erase(std::string(v));
  return simplify(out);
}

std::vector<EaFormula> ea_split_pairs(const EaFormula& e) {
  validate(e);
  if (e.bindings.size() <= 1) return {e};

  // Representative variable (least name) of every bound point, in point order.
  std::map<std::size_t, std::string> rep;
  for (const auto& [v, j] : e.bindings) rep.emplace(j, v);

  auto slice = [&](std::size_t lo, std::size_t hi, bool with_head, bool with_tail) {
    EaFormula s;
    s.intervals.push_back(with_head ? e.intervals[lo] : tt());
    for (std::size_t j = lo; j <= hi; ++j) {
      s.points.push_back(e.points[j]);
      if (j < hi) s.intervals.push_back(e.intervals[j + 1]);
    }
    s.intervals.push_back(with_tail ? e.intervals[hi + 1] : tt());
    return s;
  };

  std::vector<EaFormula> out;
  const std::size_t first = rep.begin()->first;
  const std::size_t last = rep.rbegin()->first;
  EaFormula prefix = slice(0, first, true, false);
  prefix.bindings[rep.at(first)] = first;
  out.push_back(std::move(prefix));
  for (auto it = rep.begin(); std::next(it) != rep.end(); ++it) {
    auto nx = std::next(it);
    EaFormula mid = slice(it->first, nx->first, false, false);
    mid.bindings[it->second] = 0;
    mid.bindings[nx->second] = nx->first - it->first;
    out.push_back(std::move(mid));
  }
  EaFormula suffix = slice(last, e.points.size() - 1, false, true);
  suffix.bindings[rep.at(last)] = 0;
  out.push_back(std::move(suffix));
  for (const auto& [v, j] : e.bindings) {
    if (rep.at(j) != v) out.push_back(ea_skeleton({{rep.at(j), v}}));
  }
  return out;
}

Dea embed(const Dea& d, const VariableOrder& scope) {
  const auto target = as_set(scope);
  VariableOrder missing;
  for (const auto& v : d.scope) {
    if (!target.contains(v)) {
      throw ScopeError("cannot embed " + scope_text(d.scope) + " into " + scope_text(scope));
    }
  }
  for (const auto& v : scope) {
    if (std::find(d.scope.begin(), d.scope.end(), v) == d.scope.end()) missing.push_back(v);
  }
  Dea out = missing.empty() ? d : conjoin(d, top_dea(missing));
  out.scope = scope;
  return out;
}

Dea rename(const Dea& d, const std::map<std::string, std::string>& names) {
  auto apply = [&](const std::string& v) {
    auto it = names.find(v);
    return it == names.end() ? v : it->second;
  };
  Dea out{{}, {}};
  for (const auto& v : d.scope) out.scope.push_back(apply(v));
  if (as_set(out.scope).size() != out.scope.size()) {
    throw ScopeError("renaming merges variables of " + scope_text(d.scope));
  }
  for (const auto& e : d.disjuncts) {
    EaFormula r{e.points, e.intervals, {}};
    for (const auto& [v, j] : e.bindings) r.bindings[apply(v)] = j;
    out.disjuncts.push_back(std::move(r));
  }
  return out;
}

Dea mirror(const Dea& d) {
  Dea out{d.scope, {}};
  for (const auto& e : d.disjuncts) {
    EaFormula r;
    for (auto it = e.points.rbegin(); it != e.points.rend(); ++it) r.points.push_back(mirror(*it));
    for (auto it = e.intervals.rbegin(); it != e.intervals.rend(); ++it) {
      r.intervals.push_back(mirror(*it));
    }
    for (const auto& [v, j] : e.bindings) r.bindings[v] = e.points.size() - 1 - j;
    out.disjuncts.push_back(std::move(r));
  }
  return out;
}

Dea simplify(const Dea& d) {
  // !(f U true) fails wherever a later point exists; !(f S true) wherever an earlier one does.
  auto limit = [](const TlFormula& g, TlKind kind) {
    return g.kind() == TlKind::negation && g.lhs().kind() == kind && g.lhs().rhs().is_true();
  };

  Dea out{d.scope, {}};
  std::unordered_set<std::string> seen;
  for (const auto& e : d.disjuncts) {
    EaFormula f;
    f.bindings = e.bindings;
    bool dead = false;
    for (std::size_t j = 0; j < e.points.size() && !dead; ++j) {
      TlFormula label = fold(e.points[j]);
      for (const auto& part : conjuncts(label)) {
        dead = dead || (j + 1 < e.points.size() && limit(part, TlKind::until)) ||
               (j > 0 && limit(part, TlKind::since));
      }
      dead = dead || label.is_false();
      f.points.push_back(label);
    }
    if (dead) continue;
    for (const auto& b : e.intervals) f.intervals.push_back(fold(b));

    std::string key;
    for (const auto& p : f.points) key += std::to_string(p.id()) + ',';
    key += '|';
    for (const auto& b : f.intervals) key += std::to_string(b.id()) + ',';
    for (const auto& [v, j] : f.bindings) key += '|' + v + '@' + std::to_string(j);
    if (seen.insert(key).second) out.disjuncts.push_back(std::move(f));
  }
  return out;
}

std::uint64_t dea_size(const Dea& d) {
  std::uint64_t total = 0;
  for (const auto& e : d.disjuncts) {
    for (const auto& p : e.points) total = saturating_add(total, p.tree_size());
    for (const auto& b : e.intervals) total = saturating_add(total, b.tree_size());
  }
  return total;
}

std::string format_ea(const EaFormula& e) {
  std::string out = "[";
  for (std::size_t j = 0; j < e.intervals.size(); ++j) {
    if (j > 0) out += " | " + print_tl(e.points[j - 1]) + " | ";
    out += print_tl(e.intervals[j]);
  }
  out += "] @ {";
  bool first = true;
  for (const auto& [v, j] : e.bindings) {
    if (!first) out += ", ";
    out += v + "->" + std::to_string(j);
    first = false;
  }
  return out + "}";
}

std::string format_dea(const Dea& d) {
  std::string out = "scope " + scope_text(d.scope) + "\n";
  if (d.disjuncts.empty()) return out + "  false\n";
  for (const auto& e : d.disjuncts) out += "  " + format_ea(e) + "\n";
  return out;
}

}  // namespace kamp
