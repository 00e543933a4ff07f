#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "kamp/error.hpp"
#include "kamp/normal_form.hpp"
#include "kamp/parser.hpp"
#include "oracles.hpp"

using namespace kamp;
using testing::all_assignments;

namespace {

const std::vector<std::string> kPQ{"P", "Q"};
const TlFormula T = TlFormula::top();

TlFormula atom(const std::string& name) { return TlFormula::atom(name); }

Dea random_dea(std::mt19937_64& rng, const VariableOrder& scope, std::size_t max_disjuncts = 2) {
  Dea d{scope, {}};
  const std::size_t k = 1 + rng() % max_disjuncts;
  for (std::size_t i = 0; i < k; ++i) d.disjuncts.push_back(testing::random_ea(rng, 3, scope, kPQ));
  return d;
}

Assignment restrict(const Assignment& a, const VariableOrder& scope) {
  Assignment out;
  for (const auto& v : scope) out[v] = a.at(v);
  return out;
}

// Runs `check(m, a)` for every chain up to `max_size` and every assignment of `scope`.
template <class F>
void for_all(std::size_t max_size, const VariableOrder& scope, F check) {
  for (const auto& m : enumerate_chains(max_size, kPQ)) {
    for (const auto& a : all_assignments(scope, m.size())) check(m, a);
  }
}

std::uint64_t delannoy(std::uint64_t m, std::uint64_t n) {
  auto choose = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= std::min(m, n); ++k) total += choose(m, k) * choose(n, k) << k;
  return total;
}

EaFormula labeled_points(const std::string& prefix, std::size_t n,
                         const std::map<std::string, std::size_t>& bindings) {
  EaFormula e;
  for (std::size_t i = 0; i < n; ++i) e.points.push_back(atom(prefix + std::to_string(i)));
  e.intervals.assign(n + 1, T);
  e.bindings = bindings;
  return e;
}

}  // namespace

TEST_CASE("EA evaluation on hand-made chains") {
  // u is a P-point followed later by a Q-point.
  const EaFormula e{{atom("P"), atom("Q")}, {T, T, T}, {{"u", 0}}};
  const Chain m = parse_chain("n=3; P=0,1; Q=2");
  CHECK(eval_ea(m, {{"u", 0}}, e));
  CHECK(eval_ea(m, {{"u", 1}}, e));
  CHECK_FALSE(eval_ea(m, {{"u", 2}}, e));

  // u and v with nothing but !Q strictly between.
  const EaFormula gap{{T, T}, {T, TlFormula::negation(atom("Q")), T}, {{"u", 0}, {"v", 1}}};
  const Chain n = parse_chain("n=4; Q=2");
  CHECK(eval_ea(n, {{"u", 0}, {"v", 2}}, gap));
  CHECK_FALSE(eval_ea(n, {{"u", 0}, {"v", 3}}, gap));
  CHECK_FALSE(eval_ea(n, {{"u", 2}, {"v", 2}}, gap));

  // Both variables on one point.
  const EaFormula same{{atom("P")}, {T, T}, {{"u", 0}, {"v", 0}}};
  CHECK(eval_ea(m, {{"u", 1}, {"v", 1}}, same));
  CHECK_FALSE(eval_ea(m, {{"u", 0}, {"v", 1}}, same));
}

TEST_CASE("the Until EA agrees with P U Q") {
  const EaFormula e{{T, atom("Q")}, {T, atom("P"), T}, {{"x", 0}}};
  const TlFormula until = parse_tl("P U Q");
  for (const auto& m : enumerate_chains(4, kPQ)) {
    for (std::size_t t = 0; t < m.size(); ++t) REQUIRE(eval_ea(m, {{"x", t}}, e) == eval_tl(m, t, until));
  }
}

TEST_CASE("Dea evaluation agrees with its first-order reading") {
  std::mt19937_64 rng(31);
  const VariableOrder scope{"u", "v"};
  for (int i = 0; i < 40; ++i) {
    const Dea d = random_dea(rng, scope, 3);
    const FoFormula fo = testing::dea_to_fo(d);
    for_all(4, scope, [&](const Chain& m, const Assignment& a) {
      REQUIRE(eval_dea(m, a, d) == eval_fo(m, a, fo));
    });
  }
}

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(ea_skeleton({{"u"}, {"v", "w"}})));
  CHECK_THROWS_AS(validate(EaFormula{{T}, {T}, {}}), ScopeError);
  CHECK_THROWS_AS(validate(EaFormula{{T}, {T, T}, {{"u", 1}}}), ScopeError);
  CHECK_THROWS_AS(validate(Dea{{"u", "v"}, {ea_skeleton({{"u"}})}}), ScopeError);
  CHECK_THROWS_AS(eval_dea(Chain(2), {{"u", 0}}, top_dea({"u", "v"})), EvalError);
}

TEST_CASE("formatting") {
  CHECK(format_ea(ea_skeleton({{"z0"}, {"z1"}})) == "[true | true | true | true | true] @ {z0->0, z1->1}");
  const EaFormula e{{atom("P")}, {TlFormula::negation(atom("Q")), T}, {{"x", 0}}};
  CHECK(format_ea(e) == "[!Q | P | true] @ {x->0}");
  CHECK(format_dea(false_dea({"x", "y"})) == "scope (x, y)\n  false\n");
  CHECK(format_dea(Dea{{"x"}, {e}}) == "scope (x)\n  [!Q | P | true] @ {x->0}\n");
}

TEST_CASE("top and false") {
  CHECK(top_dea({"u"}).disjuncts.size() == 1);
  CHECK(top_dea({"u", "v"}).disjuncts.size() == 3);
  CHECK(top_dea({"u", "v", "w"}).disjuncts.size() == 13);
  const VariableOrder scope{"u", "v", "w"};
  const Dea top = top_dea(scope);
  const Dea bottom = false_dea(scope);
  for_all(3, scope, [&](const Chain& m, const Assignment& a) {
    REQUIRE(eval_dea(m, a, top));
    REQUIRE_FALSE(eval_dea(m, a, bottom));
  });
}

TEST_CASE("merge enumerates every interleaving once") {
  for (std::size_t n1 = 1; n1 <= 3; ++n1) {
    for (std::size_t n2 = 1; n2 <= 3; ++n2) {
      const auto merged = merge(labeled_points("A", n1, {{"u", 0}}), labeled_points("B", n2, {{"v", 0}}));
      CHECK(merged.size() == delannoy(n1, n2));
    }
  }
  // A shared variable pins its two points together.
  CHECK(merge(labeled_points("A", 1, {{"u", 0}}), labeled_points("B", 1, {{"u", 0}})).size() == 1);
  CHECK(merge(labeled_points("A", 2, {{"u", 1}}), labeled_points("B", 2, {{"u", 1}})).size() == 3);
  CHECK(merge(labeled_points("A", 2, {{"u", 0}, {"v", 1}}), labeled_points("B", 2, {{"v", 0}, {"u", 1}}))
            .empty());
}

TEST_CASE("merge drops contradictory coincidences") {
  const EaFormula p{{atom("P")}, {T, T}, {{"u", 0}}};
  const EaFormula not_p{{TlFormula::negation(atom("P"))}, {T, T}, {{"v", 0}}};
  const auto merged = merge(p, not_p);
  CHECK(merged.size() == 2);
  for (const auto& e : merged) CHECK(e.points.size() == 2);
}

TEST_CASE("conjunction, disjunction and existential closure are sound") {
  std::mt19937_64 rng(32);
  const VariableOrder scope{"u", "v"};
  for (int i = 0; i < 25; ++i) {
    const Dea a = random_dea(rng, scope);
    const Dea b = random_dea(rng, {"v", "u"});
    const Dea both = ea_and(a, b);
    const Dea either = ea_or(a, b);
    const Dea some = ea_exists("v", a);
    CHECK(some.scope == VariableOrder{"u"});
    for_all(4, scope, [&](const Chain& m, const Assignment& x) {
      const bool va = eval_dea(m, x, a);
      const bool vb = eval_dea(m, x, b);
      REQUIRE(eval_dea(m, x, both) == (va && vb));
      REQUIRE(eval_dea(m, x, either) == (va || vb));
      if (x.at("v") == 0) {
        bool witness = false;
        for (std::size_t p = 0; p < m.size(); ++p) {
          Assignment y = x;
          y["v"] = p;
          witness = witness || eval_dea(m, y, a);
        }
        REQUIRE(eval_dea(m, {{"u", x.at("u")}}, some) == witness);
      }
    });
  }
}

TEST_CASE("conjunction laws") {
  std::mt19937_64 rng(33);
  const VariableOrder scope{"u", "v"};
  for (int i = 0; i < 15; ++i) {
    const Dea a = random_dea(rng, scope);
    const Dea b = random_dea(rng, scope);
    const Dea c = random_dea(rng, scope);
    const Dea id = ea_and(a, top_dea(scope));
    const Dea zero = ea_and(a, false_dea(scope));
    const Dea ab = ea_and(a, b);
    const Dea ba = ea_and(b, a);
    const Dea left = ea_and(ab, c);
    const Dea right = ea_and(a, ea_and(b, c));
    CHECK(zero.disjuncts.empty());
    for_all(4, scope, [&](const Chain& m, const Assignment& x) {
      REQUIRE(eval_dea(m, x, id) == eval_dea(m, x, a));
      REQUIRE(eval_dea(m, x, ab) == eval_dea(m, x, ba));
      REQUIRE(eval_dea(m, x, left) == eval_dea(m, x, right));
    });
  }
}

TEST_CASE("scope mismatches are rejected") {
  const Dea u = top_dea({"u"});
  const Dea v = top_dea({"v"});
  CHECK_THROWS_AS(ea_and(u, v), ScopeError);
  CHECK_THROWS_AS(ea_or(u, top_dea({"u", "v"})), ScopeError);
  CHECK_THROWS_AS(ea_exists("w", u), ScopeError);
  CHECK_THROWS_AS(embed(top_dea({"u", "v"}), {"u"}), ScopeError);
}

TEST_CASE("conjoin takes the union of scopes") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 20; ++i) {
    const Dea a = random_dea(rng, {"u"});
    const Dea b = random_dea(rng, {"w", "v"});
    const Dea c = conjoin(a, b);
    CHECK(c.scope == VariableOrder{"u", "w", "v"});
    for_all(3, c.scope, [&](const Chain& m, const Assignment& x) {
      REQUIRE(eval_dea(m, x, c) == (eval_dea(m, restrict(x, a.scope), a) && eval_dea(m, restrict(x, b.scope), b)));
    });
  }
}

TEST_CASE("splitting into pairs") {
  EaFormula e = ea_skeleton({{}, {"z0"}, {}, {"z1"}, {}});
  CHECK(ea_split_pairs(e).size() == 3);
  CHECK(ea_split_pairs(ea_skeleton({{"u"}, {}})).size() == 1);

  std::mt19937_64 rng(35);
  const VariableOrder scope{"u", "v", "w"};
  for (int i = 0; i < 40; ++i) {
    const EaFormula f = testing::random_ea(rng, 4, scope, kPQ);
    const auto pieces = ea_split_pairs(f);
    for (const auto& piece : pieces) CHECK(piece.bindings.size() <= 2);
    for_all(4, scope, [&](const Chain& m, const Assignment& x) {
      bool all = true;
      for (const auto& piece : pieces) {
        Assignment y;
        for (const auto& [v, k] : piece.bindings) y[v] = x.at(v);
        all = all && eval_ea(m, y, piece);
      }
      REQUIRE(all == eval_ea(m, x, f));
    });
  }
}

TEST_CASE("embedding, renaming and mirroring preserve meaning") {
  std::mt19937_64 rng(36);
  const VariableOrder scope{"u", "v"};
  const VariableOrder wide{"w", "v", "u"};
  for (int i = 0; i < 20; ++i) {
    const Dea d = random_dea(rng, scope);
    const Dea big = embed(d, wide);
    CHECK(big.scope == wide);
    const Dea swapped = rename(d, {{"u", "v"}, {"v", "u"}});
    const Dea back = mirror(d);
    for_all(4, wide, [&](const Chain& m, const Assignment& x) {
      REQUIRE(eval_dea(m, x, big) == eval_dea(m, restrict(x, scope), d));
    });
    for_all(4, scope, [&](const Chain& m, const Assignment& x) {
      const bool value = eval_dea(m, x, d);
      REQUIRE(eval_dea(m, {{"u", x.at("v")}, {"v", x.at("u")}}, swapped) == value);
      const std::size_t last = m.size() - 1;
      REQUIRE(eval_dea(reverse(m), {{"u", last - x.at("u")}, {"v", last - x.at("v")}}, back) == value);
    });
  }
}

TEST_CASE("simplify drops impossible disjuncts and is idempotent") {
  const TlFormula F = TlFormula::bottom();
  const EaFormula dead{{F}, {T, T}, {{"u", 0}}};
  const EaFormula gap{{atom("P"), atom("Q")}, {T, F, T}, {{"u", 0}}};
  const EaFormula early_end{{parse_tl("K+ P"), T}, {T, T, T}, {{"u", 0}}};
  const Dea d{{"u"}, {dead, gap, gap, early_end}};
  const Dea s = simplify(d);
  CHECK(s.disjuncts.size() == 1);
  CHECK(s.disjuncts[0] == gap);
  CHECK(format_dea(simplify(s)) == format_dea(s));

  std::mt19937_64 rng(37);
  for (int i = 0; i < 30; ++i) {
    const Dea r = random_dea(rng, {"u", "v"}, 3);
    const Dea t = simplify(r);
    CHECK(format_dea(simplify(t)) == format_dea(t));
    CHECK(dea_size(t) <= dea_size(r));
    for_all(3, r.scope, [&](const Chain& m, const Assignment& x) {
      REQUIRE(eval_dea(m, x, t) == eval_dea(m, x, r));
    });
  }
}

TEST_CASE("size") {
  CHECK(dea_size(false_dea({"u"})) == 0);
  CHECK(dea_size(top_dea({"u"})) == 3);
  const EaFormula e{{atom("P")}, {parse_tl("P U Q"), T}, {{"u", 0}}};
  CHECK(dea_size(Dea{{"u"}, {e}}) == 5);
}
