#include "generators.hpp"

namespace kamp::testing {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

class FoGen {
 public:
  FoGen(std::mt19937_64& rng, const FoShape& shape) : rng_(rng), shape_(shape) {}

  FoFormula make(std::vector<std::string>& vars, int depth, int budget) {
    const std::size_t choice = budget <= 0 ? 0 : pick(rng_, depth < shape_.max_quantifier_depth ? 6 : 4);
    switch (choice) {
      case 0:
        return leaf(vars);
      case 1:
        return FoFormula::negation(make(vars, depth, budget - 1));
      case 2:
      case 3: {
        const int left = static_cast<int>(pick(rng_, static_cast<std::size_t>(budget)));
        FoFormula l = make(vars, depth, left);
        FoFormula r = make(vars, depth, budget - 1 - left);
        switch (pick(rng_, 3)) {
          case 0:
            return FoFormula::conjunction(l, r);
          case 1:
            return FoFormula::disjunction(l, r);
          default:
            return FoFormula::implication(l, r);
        }
      }
      default: {
        const std::string v = "y" + std::to_string(++fresh_);
        vars.push_back(v);
        FoFormula body = make(vars, depth + 1, budget - 1);
        // Most quantifiers are bounded relative to an outer variable.
        if (pick(rng_, 3) != 0) {
          const std::string& outer = vars[pick(rng_, vars.size() - 1)];
          const FoFormula guard = pick(rng_, 2) == 0 ? FoFormula::less(outer, v) : FoFormula::less(v, outer);
          body = choice == 4 ? FoFormula::conjunction(guard, body) : FoFormula::implication(guard, body);
        }
        vars.pop_back();
        return choice == 4 ? FoFormula::exists(v, body) : FoFormula::forall(v, body);
      }
    }
  }

 private:
  FoFormula leaf(const std::vector<std::string>& vars) {
    const std::string& u = vars[pick(rng_, vars.size())];
    const std::size_t kind = pick(rng_, 4);
    if (kind <= 1 || vars.size() == 1) return FoFormula::predicate(shape_.atoms[pick(rng_, shape_.atoms.size())], u);
    const std::string& v = vars[pick(rng_, vars.size())];
    return kind == 2 ? FoFormula::less(u, v) : FoFormula::equal(u, v);
  }

  std::mt19937_64& rng_;
  const FoShape& shape_;
  int fresh_ = 0;
};

}  // namespace

FoFormula random_fo(std::mt19937_64& rng, const FoShape& shape) {
  for (;;) {
    std::vector<std::string> vars{"x"};
    FoFormula f = FoGen(rng, shape).make(vars, 0, static_cast<int>(pick(rng, static_cast<std::size_t>(shape.max_connectives) + 1)));
    if (free_vars(f) == std::set<std::string>{"x"}) return f;
  }
}

TlFormula random_tl(std::mt19937_64& rng, int depth, const std::vector<std::string>& atoms) {
  if (depth <= 0 || pick(rng, 4) == 0) {
    return pick(rng, 6) == 0 ? TlFormula::top() : TlFormula::atom(atoms[pick(rng, atoms.size())]);
  }
  switch (pick(rng, 5)) {
    case 0:
      return TlFormula::negation(random_tl(rng, depth - 1, atoms));
    case 1:
      return TlFormula::conjunction(random_tl(rng, depth - 1, atoms), random_tl(rng, depth - 1, atoms));
    case 2:
      return TlFormula::disjunction(random_tl(rng, depth - 1, atoms), random_tl(rng, depth - 1, atoms));
    case 3:
      return TlFormula::until(random_tl(rng, depth - 1, atoms), random_tl(rng, depth - 1, atoms));
    default:
      return TlFormula::since(random_tl(rng, depth - 1, atoms), random_tl(rng, depth - 1, atoms));
  }
}

EaFormula random_ea(std::mt19937_64& rng, std::size_t max_points, const VariableOrder& scope,
                    const std::vector<std::string>& atoms) {
  auto label = [&] {
    switch (pick(rng, 4)) {
      case 0:
        return TlFormula::top();
      case 1:
        return TlFormula::negation(TlFormula::atom(atoms[pick(rng, atoms.size())]));
      default:
        return TlFormula::atom(atoms[pick(rng, atoms.size())]);
    }
  };
  const std::size_t n = 1 + pick(rng, max_points);
  EaFormula e;
  for (std::size_t i = 0; i < n; ++i) e.points.push_back(label());
  for (std::size_t i = 0; i <= n; ++i) e.intervals.push_back(pick(rng, 2) == 0 ? TlFormula::top() : label());
  for (const auto& v : scope) e.bindings[v] = pick(rng, n);
  return e;
}

std::vector<Assignment> all_assignments(const VariableOrder& scope, std::size_t n) {
  std::vector<Assignment> out{{}};
  for (const auto& v : scope) {
    std::vector<Assignment> next;
    for (const auto& a : out) {
      for (std::size_t p = 0; p < n; ++p) {
        Assignment b = a;
        b[v] = p;
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace kamp::testing
