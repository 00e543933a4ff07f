#include "kamp/batch.hpp"

#include <stdexcept>
#include <utility>

#include "kamp/error.hpp"

namespace kamp {

using simd::Word;

ChainBatch::ChainBatch(std::span<const Chain* const> chains) {
  lanes_ = chains.size();
  words_ = (lanes_ + 63) / 64;
  positions_ = chains.empty() ? 0 : chains.front()->size();
  zero_.assign(positions_ * words_, 0);
  mask_.assign(words_, 0);
  for (std::size_t l = 0; l < lanes_; ++l) mask_[l / 64] |= Word{1} << (l % 64);

  for (std::size_t l = 0; l < lanes_; ++l) {
    const Chain& m = *chains[l];
    if (m.size() != positions_) throw std::invalid_argument("chains in a batch must share a size");
    for (const auto& atom : m.atoms()) {
      auto it = atoms_.find(atom);
      if (it == atoms_.end()) it = atoms_.emplace(atom, zero_).first;
      for (std::size_t t : m.positions(atom)) {
        it->second[t * words_ + l / 64] |= Word{1} << (l % 64);
      }
    }
  }
}

const Word* ChainBatch::atom_rows(std::string_view atom) const {
  auto it = atoms_.find(atom);
  return it == atoms_.end() ? zero_.data() : it->second.data();
}

const Rows& BatchTlEvaluator::rows(const TlFormula& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  // Iterative post-order: translated formulas can be deep.
  std::vector<std::pair<TlFormula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (memo_.contains(g)) continue;
    if (expanded || g.kind() == TlKind::top || g.kind() == TlKind::atom) {
      compute(g);
      continue;
    }
    stack.emplace_back(g, true);
    if (g.is_binary()) stack.emplace_back(g.rhs(), false);
    stack.emplace_back(g.lhs(), false);
  }
  return memo_.at(f);
}

void BatchTlEvaluator::compute(const TlFormula& f) {
  const std::size_t n = batch_.positions() * batch_.words();
  Rows out(n);
  switch (f.kind()) {
    case TlKind::top:
      out.assign(n, ~Word{0});
      break;
    case TlKind::atom: {
      const Word* src = batch_.atom_rows(f.name());
      out.assign(src, src + n);
      break;
    }
    case TlKind::negation:
      k_.not_words(out.data(), memo_.at(f.lhs()).data(), n);
      break;
    case TlKind::disjunction:
      k_.or_words(out.data(), memo_.at(f.lhs()).data(), memo_.at(f.rhs()).data(), n);
      break;
    case TlKind::conjunction:
      k_.and_words(out.data(), memo_.at(f.lhs()).data(), memo_.at(f.rhs()).data(), n);
      break;
    case TlKind::until:
      k_.until_scan(out.data(), memo_.at(f.lhs()).data(), memo_.at(f.rhs()).data(),
                    batch_.positions(), batch_.words());
      break;
    case TlKind::since:
      k_.since_scan(out.data(), memo_.at(f.lhs()).data(), memo_.at(f.rhs()).data(),
                    batch_.positions(), batch_.words());
      break;
  }
  memo_.emplace(f, std::move(out));
}

namespace {

class FoLanes {
 public:
  FoLanes(const ChainBatch& batch, const simd::KernelTable& k, Assignment env)
      : batch_(batch), k_(k), env_(std::move(env)) {}

  Rows eval(const FoFormula& f) {
    const std::size_t w = batch_.words();
    switch (f.kind()) {
      case FoKind::predicate: {
        const Word* row = batch_.atom_rows(f.atom()) + lookup(f.var()) * w;
        return Rows(row, row + w);
      }
      case FoKind::less:
        return constant(lookup(f.var()) < lookup(f.var2()));
      case FoKind::equal:
        return constant(lookup(f.var()) == lookup(f.var2()));
      case FoKind::negation: {
        Rows r = eval(f.lhs());
        k_.not_words(r.data(), r.data(), w);
        return r;
      }
      case FoKind::disjunction:
      case FoKind::conjunction: {
        Rows a = eval(f.lhs());
        Rows b = eval(f.rhs());
        if (f.kind() == FoKind::conjunction) {
          k_.and_words(a.data(), a.data(), b.data(), w);
        } else {
          k_.or_words(a.data(), a.data(), b.data(), w);
        }
        return a;
      }
      case FoKind::exists:
      case FoKind::forall: {
        const bool exists = f.kind() == FoKind::exists;
        Rows acc = constant(!exists);
        auto saved = env_.find(f.var());
        const bool had = saved != env_.end();
        const std::size_t old = had ? saved->second : 0;
        for (std::size_t p = 0; p < batch_.positions(); ++p) {
          env_.insert_or_assign(f.var(), p);
          Rows r = eval(f.body());
          if (exists) {
            k_.or_words(acc.data(), acc.data(), r.data(), w);
          } else {
            k_.and_words(acc.data(), acc.data(), r.data(), w);
          }
        }
        if (had) {
          env_.insert_or_assign(f.var(), old);
        } else {
          env_.erase(f.var());
        }
        return acc;
      }
    }
    return constant(false);
  }

 private:
  std::size_t lookup(const std::string& v) const {
    auto it = env_.find(v);
    if (it == env_.end()) throw EvalError("unassigned variable '" + v + "'");
    if (it->second >= batch_.positions()) {
      throw EvalError("variable '" + v + "' assigned outside the chain");
    }
    return it->second;
  }

  Rows constant(bool value) const { return Rows(batch_.words(), value ? ~Word{0} : 0); }

  const ChainBatch& batch_;
  const simd::KernelTable& k_;
  Assignment env_;
};

}  // namespace

Rows eval_fo_lanes(const ChainBatch& batch, const FoFormula& f, const Assignment& a,
                   const simd::KernelTable& kernels) {
  return FoLanes(batch, kernels, a).eval(f);
}

Rows eval_fo_table(const ChainBatch& batch, const FoFormula& f, std::string_view x,
                   const simd::KernelTable& kernels) {
  const std::size_t w = batch.words();
  Rows out(batch.positions() * w);
  for (std::size_t t = 0; t < batch.positions(); ++t) {
    Assignment a{{std::string(x), t}};
    Rows r = eval_fo_lanes(batch, f, a, kernels);
    std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(t * w));
  }
  return out;
}

}  // namespace kamp
