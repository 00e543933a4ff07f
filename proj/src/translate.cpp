#include "kamp/translate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "kamp/error.hpp"

namespace kamp {

namespace {

const TlFormula& tt() {
  static const TlFormula f = TlFormula::top();
  return f;
}

// Active translation context of the calling thread.
thread_local std::uint64_t t_budget = 0;
thread_local TranslationTrace* t_trace = nullptr;

void charge(std::uint64_t size) {
  if (t_budget != 0 && size > t_budget) throw BudgetExceeded(t_budget, size);
}

void charge(const Dea& d) {
  if (t_budget != 0) charge(dea_size(d));
}

EaFormula two_points(const TlFormula& before, const TlFormula& at0, const TlFormula& between,
                     const TlFormula& at1, const TlFormula& after, const std::string& v0 = "z0",
                     const std::string& v1 = "z1") {
  return EaFormula{{at0, at1}, {before, between, after}, {{v0, 0}, {v1, 1}}};
}

Dea single(const VariableOrder& scope, EaFormula e) {
  return simplify(Dea{scope, {std::move(e)}});
}

Dea unite(std::vector<Dea> parts, const VariableOrder& scope) {
  Dea out{scope, {}};
  for (auto& p : parts) {
    for (auto& e : p.disjuncts) out.disjuncts.push_back(std::move(e));
  }
  return simplify(out);
}

// acc conjoined with a disjunction of Deas over sub-scopes of acc.
Dea distribute(const Dea& acc, const std::vector<Dea>& options) {
  std::vector<Dea> parts;
  for (const auto& o : options) {
    parts.push_back(conjoin(acc, o));
    charge(parts.back());
  }
  Dea out = unite(std::move(parts), acc.scope);
  charge(out);
  return out;
}

Dea with_scope(Dea d, const VariableOrder& scope) {
  d.scope = scope;
  return d;
}

const VariableOrder& pair_scope() {
  static const VariableOrder s{"z0", "z1"};
  return s;
}

Dea true_between() { return single(pair_scope(), two_points(tt(), tt(), tt(), tt(), tt())); }

Dea atom_dea(const std::string& v, const TlFormula& label) {
  return single({v}, EaFormula{{label}, {tt(), tt()}, {{v, 0}}});
}

}  // namespace

// ---------------------------------------------------------------------------

IntervalPattern IntervalPattern::alternating(const std::vector<TlFormula>& labels) {
  if (labels.size() % 2 == 0) throw std::invalid_argument("pattern needs an odd number of labels");
  IntervalPattern p;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (i % 2 == 0 ? p.points : p.intervals).push_back(labels[i]);
  }
  return p;
}

std::vector<TlFormula> IntervalPattern::labels() const {
  std::vector<TlFormula> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out.push_back(intervals[i - 1]);
    out.push_back(points[i]);
  }
  return out;
}

TlFormula dea1_to_tl(const Dea& d) {
  if (d.scope.size() != 1) {
    throw ArityError("temporal emission needs exactly one free variable, scope has " +
                     std::to_string(d.scope.size()));
  }
  validate(d);
  std::vector<TlFormula> options;
  for (const auto& e : d.disjuncts) {
    const std::size_t k = e.bindings.begin()->second;
    const std::size_t n = e.points.size() - 1;
    TlFormula forward = fold_and(e.points[n], TlFormula::always(e.intervals[n + 1]));
    for (std::size_t j = n; j-- > k;) {
      forward = fold_and(e.points[j], fold_until(e.intervals[j + 1], forward));
    }
    TlFormula backward = fold_and(e.points[0], TlFormula::historically(e.intervals[0]));
    for (std::size_t j = 1; j < k; ++j) {
      backward = fold_and(e.points[j], fold_since(e.intervals[j], backward));
    }
    const TlFormula past =
        k == 0 ? TlFormula::historically(e.intervals[0]) : fold_since(e.intervals[k], backward);
    options.push_back(fold(fold_and(forward, past)));
  }
  return fold_or(options);
}

Dea inf_pattern(const TlFormula& p) {
  EaFormula e{{tt(), fold_or(p, TlFormula::limit_future(p)), tt()},
              {tt(), fold_not(p), tt(), tt()},
              {{"z0", 0}, {"r0", 1}, {"z1", 2}}};
  return single({"z0", "r0", "z1"}, std::move(e));
}

Dea oc(const std::vector<TlFormula>& preds) {
  if (preds.empty()) throw std::invalid_argument("oc needs at least one predicate");
  const TlFormula& p1 = preds.front();
  Dea none = single(pair_scope(), two_points(tt(), tt(), fold_not(p1), tt(), tt()));
  if (preds.size() == 1) return none;

  const std::vector<TlFormula> rest(preds.begin() + 1, preds.end());
  const Dea tail = oc(rest);
  Dea empty = single(pair_scope(), two_points(tt(), tt(), TlFormula::bottom(), tt(), tt()));
  Dea at_start = conjoin(
      single(pair_scope(), two_points(tt(), TlFormula::limit_future(p1), tt(), tt(), tt())), tail);
  Dea via_inf = ea_exists("r0", conjoin(inf_pattern(p1), rename(tail, {{"z0", "r0"}})));
  Dea out = unite({empty, none, at_start, with_scope(via_inf, pair_scope())}, pair_scope());
  charge(out);
  return out;
}

Dea neg_exists_between_left(const IntervalPattern& pat) {
  const std::size_t n = pat.length();
  if (n == 0) return true_between();
  std::vector<TlFormula> f(n + 1);
  f[n] = pat.points[n];
  for (std::size_t i = n; i-- > 0;) {
    f[i] = fold_and(pat.points[i], fold_until(pat.intervals[i], f[i + 1]));
  }
  Dea no_start = single(pair_scope(), two_points(tt(), fold_not(f[0]), tt(), tt(), tt()));
  Dea ladder = oc(std::vector<TlFormula>(f.begin() + 1, f.end()));
  return unite({no_start, ladder}, pair_scope());
}

namespace {

IntervalPattern mirror_pattern(const IntervalPattern& pat) {
  IntervalPattern out;
  for (auto it = pat.points.rbegin(); it != pat.points.rend(); ++it) out.points.push_back(mirror(*it));
  for (auto it = pat.intervals.rbegin(); it != pat.intervals.rend(); ++it) {
    out.intervals.push_back(mirror(*it));
  }
  return out;
}

Dea mirror_pair(const Dea& d) {
  return with_scope(rename(mirror(d), {{"z0", "z1"}, {"z1", "z0"}}), pair_scope());
}

std::vector<TlFormula> slice(const std::vector<TlFormula>& v, std::size_t lo, std::size_t hi) {
  return {v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi)};
}

struct PatternMemo {
  std::mutex mutex;
  std::map<std::vector<std::uint64_t>, std::pair<std::vector<TlFormula>, Dea>> table;
};

PatternMemo& pattern_memo() {
  static PatternMemo memo;
  return memo;
}

std::vector<std::uint64_t> pattern_key(const std::vector<TlFormula>& labels) {
  std::vector<std::uint64_t> key;
  for (const auto& l : labels) key.push_back(l.id());
  return key;
}

Dea case3_inf(const TlFormula& a0, const TlFormula& b1, const std::string& mid) {
  const TlFormula limit = TlFormula::limit_future(fold_not(b1));
  EaFormula e{{fold_and(a0, fold_not(limit)), fold_or(fold_not(b1), limit), tt()},
              {tt(), b1, tt(), tt()},
              {{"z0", 0}, {mid, 1}, {"z1", 2}}};
  return single({"z0", mid, "z1"}, std::move(e));
}

Dea compute_neg_interval(const IntervalPattern& pat) {
  const std::size_t n = pat.length();
  if (n == 0) return true_between();
  const auto& a = pat.points;
  const auto& b = pat.intervals;  // b[i-1] is beta_i
  const std::vector<TlFormula> labels = pat.labels();
  const TlFormula not_b1 = fold_not(b[0]);

  std::vector<Dea> parts;
  if (n == 1) {
    parts.push_back(
        single(pair_scope(), two_points(tt(), fold_not(a[0]), TlFormula::bottom(), tt(), tt())));
    parts.push_back(
        single(pair_scope(), two_points(tt(), tt(), TlFormula::bottom(), fold_not(a[1]), tt())));
  } else {
    parts.push_back(single(pair_scope(), two_points(tt(), tt(), TlFormula::bottom(), tt(), tt())));
  }

  // Case 1: alpha_0 fails at z0, or beta_1 fails arbitrarily close after it.
  parts.push_back(single(
      pair_scope(),
      two_points(tt(), fold_or(fold_not(a[0]), TlFormula::limit_future(not_b1)), tt(), tt(), tt())));

  // Case 2: beta_1 throughout (z0, z1).
  const Dea cond2 = single(pair_scope(), two_points(tt(), a[0], b[0], tt(), tt()));
  if (n == 1) {
    parts.push_back(conjoin(cond2, single(pair_scope(), two_points(tt(), tt(), tt(), fold_not(a[1]), tt()))));
  } else {
    parts.push_back(conjoin(
        cond2, neg_exists_between_right(IntervalPattern::alternating(slice(labels, 2, labels.size())))));
  }
  charge(parts.back());

  // Case 3: an infimum z of the points in (z0, z1) where beta_1 fails.
  if (n == 1) {
    parts.push_back(with_scope(ea_exists("z", case3_inf(a[0], b[0], "z")), pair_scope()));
  } else {
    const std::map<std::string, std::string> left{{"z1", "z"}};
    const std::map<std::string, std::string> right{{"z0", "z"}};
    Dea acc = case3_inf(a[0], b[0], "z");
    auto negated = [&](const std::vector<TlFormula>& lo, const std::vector<TlFormula>& hi) {
      return std::vector<Dea>{rename(neg_interval(IntervalPattern::alternating(lo)), left),
                              rename(neg_interval(IntervalPattern::alternating(hi)), right)};
    };
    // z is the point x_i.
    for (std::size_t i = 1; i < n; ++i) {
      acc = distribute(acc, negated(slice(labels, 0, 2 * i + 1), slice(labels, 2 * i, labels.size())));
    }
    // z lies inside (x_{i-1}, x_i); i = 1 is impossible at an infimum.
    for (std::size_t i = 2; i < n; ++i) {
      auto lo = slice(labels, 0, 2 * i - 1);
      lo.insert(lo.end(), 2, b[i - 1]);
      std::vector<TlFormula> hi{b[i - 1]};
      auto tail = slice(labels, 2 * i - 1, labels.size());
      hi.insert(hi.end(), tail.begin(), tail.end());
      acc = distribute(acc, negated(lo, hi));
    }
    {
      auto lo = slice(labels, 2, 2 * n - 1);
      lo.insert(lo.end(), 2, b[n - 1]);
      const std::vector<TlFormula> hi{b[n - 1], b[n - 1], a[n]};
      acc = distribute(
          acc, {rename(neg_exists_between_right(IntervalPattern::alternating(lo)), left),
                rename(neg_interval(IntervalPattern::alternating(hi)), right)});
    }
    parts.push_back(with_scope(ea_exists("z", acc), pair_scope()));
  }
  Dea out = unite(std::move(parts), pair_scope());
  charge(out);
  return out;
}

}  // namespace

Dea neg_exists_between_right(const IntervalPattern& pat) {
  return mirror_pair(neg_exists_between_left(mirror_pattern(pat)));
}

Dea neg_interval(const IntervalPattern& pat) {
  const std::vector<TlFormula> labels = pat.labels();
  const auto key = pattern_key(labels);
  PatternMemo& memo = pattern_memo();
  {
    std::lock_guard lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end()) return it->second.second;
  }
  Dea out = compute_neg_interval(pat);
  std::lock_guard lock(memo.mutex);
  memo.table.emplace(key, std::pair{labels, out});
  return out;
}

std::array<Dea, 3> interval_case_conditions(const IntervalPattern& pat) {
  if (pat.length() == 0) throw std::invalid_argument("case analysis needs a nonempty pattern");
  const TlFormula& a0 = pat.points[0];
  const TlFormula& b1 = pat.intervals[0];
  return {
      single(pair_scope(), two_points(tt(), fold_or(fold_not(a0), TlFormula::limit_future(fold_not(b1))),
                                      tt(), tt(), tt())),
      single(pair_scope(), two_points(tt(), a0, b1, tt(), tt())),
      with_scope(ea_exists("z", case3_inf(a0, b1, "z")), pair_scope()),
  };
}

Dea interval_infimum(const IntervalPattern& pat) {
  if (pat.length() == 0) throw std::invalid_argument("infimum needs a nonempty pattern");
  return case3_inf(pat.points[0], pat.intervals[0], "z");
}

// ---------------------------------------------------------------------------

Dea neg_ea2(const EaFormula& e) {
  validate(e);
  VariableOrder scope;
  for (const auto& [v, j] : e.bindings) scope.push_back(v);
  if (scope.size() == 1) {
    return atom_dea(scope[0], fold_not(dea1_to_tl(Dea{scope, {e}})));
  }
  if (scope.size() != 2) {
    throw ScopeError("negation of an EA formula needs one or two free variables, got " +
                     std::to_string(scope.size()));
  }

  std::string a = scope[0];
  std::string b = scope[1];
  if (e.bindings.at(a) > e.bindings.at(b)) std::swap(a, b);
  const std::size_t i = e.bindings.at(a);
  const std::size_t j = e.bindings.at(b);

  std::vector<Dea> parts;
  parts.push_back(single(scope, two_points(tt(), tt(), tt(), tt(), tt(), b, a)));
  if (i == j) {
    parts.push_back(single(scope, two_points(tt(), tt(), tt(), tt(), tt(), a, b)));
    const TlFormula merged = dea1_to_tl(ea_exists(b, Dea{scope, {e}}));
    parts.push_back(single(scope, EaFormula{{fold_not(merged)}, {tt(), tt()}, {{a, 0}, {b, 0}}}));
    return unite(std::move(parts), scope);
  }

  parts.push_back(single(scope, ea_skeleton({{a, b}})));
  EaFormula prefix;
  prefix.intervals.assign(e.intervals.begin(), e.intervals.begin() + static_cast<std::ptrdiff_t>(i + 1));
  prefix.points.assign(e.points.begin(), e.points.begin() + static_cast<std::ptrdiff_t>(i + 1));
  prefix.intervals.push_back(tt());
  prefix.bindings[a] = i;
  EaFormula suffix;
  suffix.intervals.push_back(tt());
  suffix.points.assign(e.points.begin() + static_cast<std::ptrdiff_t>(j), e.points.end());
  suffix.intervals.insert(suffix.intervals.end(), e.intervals.begin() + static_cast<std::ptrdiff_t>(j + 1),
                          e.intervals.end());
  suffix.bindings[b] = 0;
  const TlFormula not_prefix = fold_not(dea1_to_tl(Dea{{a}, {prefix}}));
  const TlFormula not_suffix = fold_not(dea1_to_tl(Dea{{b}, {suffix}}));
  parts.push_back(single(scope, two_points(tt(), not_prefix, tt(), tt(), tt(), a, b)));
  parts.push_back(single(scope, two_points(tt(), tt(), tt(), not_suffix, tt(), a, b)));

  IntervalPattern middle;
  middle.points.assign(e.points.begin() + static_cast<std::ptrdiff_t>(i),
                       e.points.begin() + static_cast<std::ptrdiff_t>(j + 1));
  middle.intervals.assign(e.intervals.begin() + static_cast<std::ptrdiff_t>(i + 1),
                          e.intervals.begin() + static_cast<std::ptrdiff_t>(j + 1));
  parts.push_back(with_scope(rename(neg_interval(middle), {{"z0", a}, {"z1", b}}), scope));
  return unite(std::move(parts), scope);
}

Dea neg_dea(const Dea& d) {
  validate(d);
  if (d.disjuncts.empty()) return top_dea(d.scope);
  if (d.scope.size() == 1) return atom_dea(d.scope[0], fold_not(dea1_to_tl(d)));
  Dea acc = top_dea(d.scope);
  for (const auto& e : d.disjuncts) {
    std::vector<Dea> options;
    if (e.bindings.size() <= 2) {
      options.push_back(neg_ea2(e));
    } else {
      for (const auto& piece : ea_split_pairs(e)) options.push_back(neg_ea2(piece));
    }
    acc = distribute(acc, options);
    if (acc.disjuncts.empty()) break;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// First-order preprocessing

namespace {

class Normalizer {
 public:
  FoFormula run(const FoFormula& f) { return miniscope(nnf(apart(f, {}), false)); }

 private:
  FoFormula apart(const FoFormula& f, const std::map<std::string, std::string>& env) {
    auto name = [&](const std::string& v) {
      auto it = env.find(v);
      return it == env.end() ? v : it->second;
    };
    switch (f.kind()) {
      case FoKind::predicate:
        return FoFormula::predicate(f.atom(), name(f.var()));
      case FoKind::less:
        return FoFormula::less(name(f.var()), name(f.var2()));
      case FoKind::equal:
        return FoFormula::equal(name(f.var()), name(f.var2()));
      case FoKind::negation:
        return FoFormula::negation(apart(f.lhs(), env));
      case FoKind::disjunction:
        return FoFormula::disjunction(apart(f.lhs(), env), apart(f.rhs(), env));
      case FoKind::conjunction:
        return FoFormula::conjunction(apart(f.lhs(), env), apart(f.rhs(), env));
      case FoKind::exists:
      case FoKind::forall: {
        auto inner = env;
        const std::string fresh = f.var() + "#" + std::to_string(++counter_);
        inner[f.var()] = fresh;
        const FoFormula body = apart(f.body(), inner);
        return f.kind() == FoKind::exists ? FoFormula::exists(fresh, body)
                                          : FoFormula::forall(fresh, body);
      }
    }
    return f;
  }

  static FoFormula nnf(const FoFormula& f, bool negate) {
    switch (f.kind()) {
      case FoKind::predicate:
      case FoKind::less:
      case FoKind::equal:
        return negate ? FoFormula::negation(f) : f;
      case FoKind::negation:
        return nnf(f.lhs(), !negate);
      case FoKind::disjunction:
      case FoKind::conjunction: {
        const bool conj = (f.kind() == FoKind::conjunction) != negate;
        const FoFormula l = nnf(f.lhs(), negate);
        const FoFormula r = nnf(f.rhs(), negate);
        return conj ? FoFormula::conjunction(l, r) : FoFormula::disjunction(l, r);
      }
      case FoKind::exists:
      case FoKind::forall: {
        const bool ex = (f.kind() == FoKind::exists) != negate;
        const FoFormula body = nnf(f.body(), negate);
        return ex ? FoFormula::exists(f.var(), body) : FoFormula::forall(f.var(), body);
      }
    }
    return f;
  }

  static void flatten(const FoFormula& f, FoKind kind, std::vector<FoFormula>& out) {
    if (f.kind() == kind) {
      flatten(f.lhs(), kind, out);
      flatten(f.rhs(), kind, out);
    } else {
      out.push_back(f);
    }
  }

  static FoFormula join(const std::vector<FoFormula>& parts, FoKind kind) {
    FoFormula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
      acc = kind == FoKind::conjunction ? FoFormula::conjunction(acc, parts[i])
                                        : FoFormula::disjunction(acc, parts[i]);
    }
    return acc;
  }

  // Quantifier `q` over `v` applied to an already miniscoped body.
  static FoFormula push(FoKind q, const std::string& v, const FoFormula& body) {
    if (!free_vars(body).contains(v)) return body;
    const FoKind spread = q == FoKind::exists ? FoKind::disjunction : FoKind::conjunction;
    const FoKind split = q == FoKind::exists ? FoKind::conjunction : FoKind::disjunction;
    if (body.kind() == spread) {
      const FoFormula l = push(q, v, body.lhs());
      const FoFormula r = push(q, v, body.rhs());
      return spread == FoKind::disjunction ? FoFormula::disjunction(l, r)
                                           : FoFormula::conjunction(l, r);
    }
    if (body.kind() == split) {
      std::vector<FoFormula> parts;
      flatten(body, split, parts);
      std::vector<FoFormula> with;
      std::vector<FoFormula> without;
      for (const auto& p : parts) (free_vars(p).contains(v) ? with : without).push_back(p);
      if (!without.empty()) {
        without.push_back(push(q, v, join(with, split)));
        return join(without, split);
      }
    }
    return q == FoKind::exists ? FoFormula::exists(v, body) : FoFormula::forall(v, body);
  }

  static FoFormula miniscope(const FoFormula& f) {
    switch (f.kind()) {
      case FoKind::disjunction:
        return FoFormula::disjunction(miniscope(f.lhs()), miniscope(f.rhs()));
      case FoKind::conjunction:
        return FoFormula::conjunction(miniscope(f.lhs()), miniscope(f.rhs()));
      case FoKind::exists:
      case FoKind::forall:
        return push(f.kind(), f.var(), miniscope(f.body()));
      default:
        return f;
    }
  }

  int counter_ = 0;
};

std::string summary(const FoFormula& f) {
  std::string s = print_fo(f);
  constexpr std::size_t kWidth = 60;
  if (s.size() > kWidth) s = s.substr(0, kWidth - 3) + "...";
  return s;
}

std::string scope_summary(const VariableOrder& scope) {
  std::string out = "(";
  for (std::size_t i = 0; i < scope.size(); ++i) out += (i > 0 ? ", " : "") + scope[i];
  return out + ")";
}

class Induction {
 public:
  explicit Induction(std::string anchor) : anchor_(std::move(anchor)) {}

  Dea run(const FoFormula& f) {
    switch (f.kind()) {
      case FoKind::predicate:
      case FoKind::less:
      case FoKind::equal:
        return finish("atomic", f, literal(f, false));
      case FoKind::negation:
        if (!f.lhs().is_atomic()) throw std::logic_error("formula not in negation normal form");
        return finish("atomic", f, literal(f.lhs(), true));
      case FoKind::disjunction: {
        const Dea l = run(f.lhs());
        const Dea r = run(f.rhs());
        const VariableOrder scope = order(l, r);
        return finish("or", f, ea_or(embed(l, scope), embed(r, scope)));
      }
      case FoKind::conjunction: {
        const Dea l = run(f.lhs());
        const Dea r = run(f.rhs());
        return finish("and", f, conjoin(l, r));
      }
      case FoKind::exists: {
        const Dea body = run(f.body());
        return finish("exists", f, has(body, f.var()) ? ea_exists(f.var(), body) : body);
      }
      case FoKind::forall: {
        const Dea dual = run(flip(f.body()));
        Dea witness = has(dual, f.var()) ? ea_exists(f.var(), dual) : dual;
        witness = embed(witness, canonical({witness.scope.begin(), witness.scope.end()}));
        return finish("forall", f, neg_dea(witness));
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  static bool has(const Dea& d, const std::string& v) {
    return std::find(d.scope.begin(), d.scope.end(), v) != d.scope.end();
  }

  // Negation of a formula in negation normal form, kept in that form.
  static FoFormula flip(const FoFormula& f) {
    switch (f.kind()) {
      case FoKind::negation:
        return f.lhs();
      case FoKind::disjunction:
        return FoFormula::conjunction(flip(f.lhs()), flip(f.rhs()));
      case FoKind::conjunction:
        return FoFormula::disjunction(flip(f.lhs()), flip(f.rhs()));
      case FoKind::exists:
        return FoFormula::forall(f.var(), flip(f.body()));
      case FoKind::forall:
        return FoFormula::exists(f.var(), flip(f.body()));
      default:
        return FoFormula::negation(f);
    }
  }

  VariableOrder order(const Dea& l, const Dea& r) const {
    std::set<std::string> vars(l.scope.begin(), l.scope.end());
    vars.insert(r.scope.begin(), r.scope.end());
    return canonical(vars);
  }

  // The anchor leads when present; it joins only scopes that would be empty.
  VariableOrder canonical(std::set<std::string> vars) const {
    const bool anchored = vars.empty() || vars.erase(anchor_) > 0;
    VariableOrder out;
    if (anchored) out.push_back(anchor_);
    out.insert(out.end(), vars.begin(), vars.end());
    return out;
  }

  Dea literal(const FoFormula& f, bool negated) const {
    std::vector<EaFormula> options;
    const std::string& u = f.var();
    switch (f.kind()) {
      case FoKind::predicate: {
        const TlFormula p = TlFormula::atom(f.atom());
        options.push_back(EaFormula{{negated ? fold_not(p) : p}, {tt(), tt()}, {{u, 0}}});
        break;
      }
      case FoKind::less:
        if (u == f.var2()) {
          if (negated) options.push_back(ea_skeleton({{u}}));
        } else if (negated) {
          options.push_back(ea_skeleton({{f.var2()}, {u}}));
          options.push_back(ea_skeleton({{u, f.var2()}}));
        } else {
          options.push_back(ea_skeleton({{u}, {f.var2()}}));
        }
        break;
      case FoKind::equal:
        if (u == f.var2()) {
          if (!negated) options.push_back(ea_skeleton({{u}}));
        } else if (negated) {
          options.push_back(ea_skeleton({{u}, {f.var2()}}));
          options.push_back(ea_skeleton({{f.var2()}, {u}}));
        } else {
          options.push_back(ea_skeleton({{u, f.var2()}}));
        }
        break;
      default:
        break;
    }
    std::set<std::string> vars{u};
    if (f.kind() != FoKind::predicate) vars.insert(f.var2());
    return simplify(Dea{canonical(vars), std::move(options)});
  }

  Dea finish(const char* pass, const FoFormula& f, Dea d) {
    d = embed(d, canonical({d.scope.begin(), d.scope.end()}));
    if (d.scope.size() == 1 &&
        (d.disjuncts.size() > 1 || (d.disjuncts.size() == 1 && d.disjuncts[0].points.size() > 1))) {
      d = atom_dea(d.scope[0], dea1_to_tl(d));
    }
    const std::uint64_t size = dea_size(d);
    charge(size);
    if (t_trace != nullptr) {
      const std::uint64_t before = t_trace->entries.empty() ? 0 : t_trace->entries.back().total;
      t_trace->entries.push_back(TraceEntry{pass, summary(f), scope_summary(d.scope),
                                            d.disjuncts.size(), size, before + size});
    }
    return d;
  }

  std::string anchor_;
};

struct ContextGuard {
  ContextGuard(std::uint64_t budget, TranslationTrace* trace)
      : saved_budget(t_budget), saved_trace(t_trace) {
    t_budget = budget;
    t_trace = trace;
  }
  ~ContextGuard() {
    t_budget = saved_budget;
    t_trace = saved_trace;
  }
  std::uint64_t saved_budget;
  TranslationTrace* saved_trace;
};

std::string single_free_variable(const FoFormula& f) {
  const auto vars = free_vars(f);
  if (vars.size() != 1) {
    std::string listed;
    for (const auto& v : vars) listed += (listed.empty() ? "" : ", ") + v;
    throw ArityError("expected exactly one free variable, found {" + listed + "}");
  }
  return *vars.begin();
}

}  // namespace

FoFormula normalize(const FoFormula& f) { return Normalizer().run(f); }

Dea fo_to_dea(const FoFormula& f, std::string_view anchor) {
  Dea d = Induction(std::string(anchor)).run(normalize(f));
  VariableOrder scope{std::string(anchor)};
  std::set<std::string> rest(d.scope.begin(), d.scope.end());
  rest.erase(scope[0]);
  scope.insert(scope.end(), rest.begin(), rest.end());
  return embed(d, scope);
}

TlFormula translate(const FoFormula& f) {
  const std::string x = single_free_variable(f);
  return dea1_to_tl(fo_to_dea(f, x));
}

Translation translate_with_trace(const FoFormula& f, const TranslateOptions& options) {
  const std::string x = single_free_variable(f);
  Translation out;
  ContextGuard guard(options.node_budget, &out.trace);
  const FoFormula g = normalize(f);
  charge(fo_size(g));
  out.trace.entries.push_back(TraceEntry{"normalize", summary(f), "", 0, fo_size(g), fo_size(g)});
  const Dea d = embed(Induction(x).run(g), {x});
  out.formula = dea1_to_tl(d);
  const std::uint64_t size = out.formula.tree_size();
  charge(size);
  out.trace.entries.push_back(TraceEntry{"emit", "normal form over (" + x + ")", "", d.disjuncts.size(),
                                         size, out.trace.entries.back().total + size});
  return out;
}

std::string format_trace(const TranslationTrace& trace) {
  std::string out = "step  pass       disjuncts        size       total  input\n";
  auto pad = [](std::string s, std::size_t width, bool left) {
    if (s.size() >= width) return s;
    return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
  };
  for (std::size_t i = 0; i < trace.entries.size(); ++i) {
    const auto& e = trace.entries[i];
    out += pad(std::to_string(i + 1), 4, false) + "  " + pad(e.pass, 9, true) + "  " +
           pad(std::to_string(e.disjuncts), 9, false) + "  " + pad(std::to_string(e.size), 10, false) +
           "  " + pad(std::to_string(e.total), 10, false) + "  " + e.input +
           (e.scope.empty() ? "" : "  " + e.scope) + "\n";
  }
  return out;
}

}  // namespace kamp
