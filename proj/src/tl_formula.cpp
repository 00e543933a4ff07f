#include "kamp/tl_formula.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace kamp {

namespace detail {

struct TlNode {
  TlKind kind;
  std::string name;
  TlFormula lhs{nullptr};
  TlFormula rhs{nullptr};
  std::uint64_t id;
  std::uint64_t tree_size;
  std::uint32_t depth;
};

}  // namespace detail

namespace {

using detail::TlNode;

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

struct NodeKey {
  TlKind kind;
  std::string name;
  std::uint64_t lhs;
  std::uint64_t rhs;

  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::size_t h = std::hash<std::string>{}(k.name);
    h ^= static_cast<std::size_t>(k.kind) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(k.lhs) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(k.rhs) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Children are keyed by id rather than address: ids are never reused, so a
// stale entry can only ever match a key whose children are still alive.
class Interner {
 public:
  static Interner& instance() {
    static Interner* interner = new Interner();  // outlives static formulas
    return *interner;
  }

  std::shared_ptr<const TlNode> intern(NodeKey key, const TlFormula* lhs, const TlFormula* rhs,
                                       std::uint64_t tree_size, std::uint32_t depth) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) {
      if (auto live = it->second.lock()) return live;
    }
    auto node = std::make_shared<TlNode>();
    node->kind = key.kind;
    node->name = key.name;
    if (lhs != nullptr) node->lhs = *lhs;
    if (rhs != nullptr) node->rhs = *rhs;
    node->id = next_id_++;
    node->tree_size = tree_size;
    node->depth = depth;
    std::shared_ptr<const TlNode> result = node;
    if (it != table_.end()) {
      it->second = result;
    } else {
      table_.emplace(std::move(key), result);
      if (table_.size() > sweep_threshold_) sweep();
    }
    return result;
  }

 private:
  void sweep() {
    std::erase_if(table_, [](const auto& entry) { return entry.second.expired(); });
    sweep_threshold_ = std::max<std::size_t>(1024, 2 * table_.size());
  }

  std::mutex mutex_;
  std::unordered_map<NodeKey, std::weak_ptr<const TlNode>, NodeKeyHash> table_;
  std::uint64_t next_id_ = 1;
  std::size_t sweep_threshold_ = 1024;
};

}  // namespace

TlFormula TlFormula::make(TlKind kind, std::string_view name, const TlFormula* lhs,
                          const TlFormula* rhs) {
  std::uint64_t size = 1;
  std::uint32_t depth = 0;
  NodeKey key{kind, std::string(name), 0, 0};
  if (lhs != nullptr) {
    key.lhs = lhs->id();
    size = saturating_add(size, lhs->tree_size());
    depth = std::max(depth, lhs->depth());
  }
  if (rhs != nullptr) {
    key.rhs = rhs->id();
    size = saturating_add(size, rhs->tree_size());
    depth = std::max(depth, rhs->depth());
  }
  if (lhs != nullptr || rhs != nullptr) ++depth;
  return TlFormula(Interner::instance().intern(std::move(key), lhs, rhs, size, depth));
}

TlFormula::TlFormula() : TlFormula(top()) {}

TlFormula TlFormula::top() {
  static const TlFormula t = make(TlKind::top, "", nullptr, nullptr);
  return t;
}

TlFormula TlFormula::atom(std::string_view name) { return make(TlKind::atom, name, nullptr, nullptr); }

TlFormula TlFormula::negation(const TlFormula& f) { return make(TlKind::negation, "", &f, nullptr); }

TlFormula TlFormula::disjunction(const TlFormula& lhs, const TlFormula& rhs) {
  return make(TlKind::disjunction, "", &lhs, &rhs);
}

TlFormula TlFormula::conjunction(const TlFormula& lhs, const TlFormula& rhs) {
  return make(TlKind::conjunction, "", &lhs, &rhs);
}

TlFormula TlFormula::until(const TlFormula& hold, const TlFormula& goal) {
  return make(TlKind::until, "", &hold, &goal);
}

TlFormula TlFormula::since(const TlFormula& hold, const TlFormula& goal) {
  return make(TlKind::since, "", &hold, &goal);
}

TlFormula TlFormula::bottom() { return negation(top()); }

TlFormula TlFormula::always(const TlFormula& f) { return negation(until(top(), negation(f))); }

TlFormula TlFormula::historically(const TlFormula& f) {
  return negation(since(top(), negation(f)));
}

TlFormula TlFormula::limit_future(const TlFormula& f) {
  return negation(until(negation(f), top()));
}

TlFormula TlFormula::limit_past(const TlFormula& f) { return negation(since(negation(f), top())); }

TlFormula TlFormula::implication(const TlFormula& lhs, const TlFormula& rhs) {
  return disjunction(negation(lhs), rhs);
}

TlKind TlFormula::kind() const noexcept { return node_->kind; }
const std::string& TlFormula::name() const noexcept { return node_->name; }
const TlFormula& TlFormula::lhs() const noexcept { return node_->lhs; }
const TlFormula& TlFormula::rhs() const noexcept { return node_->rhs; }
std::uint64_t TlFormula::id() const noexcept { return node_->id; }
std::uint64_t TlFormula::tree_size() const noexcept { return node_->tree_size; }
std::uint32_t TlFormula::depth() const noexcept { return node_->depth; }

bool TlFormula::is_false() const noexcept {
  return kind() == TlKind::negation && lhs().kind() == TlKind::top;
}

bool TlFormula::is_binary() const noexcept {
  switch (kind()) {
    case TlKind::disjunction:
    case TlKind::conjunction:
    case TlKind::until:
    case TlKind::since:
      return true;
    default:
      return false;
  }
}

int compare(const TlFormula& a, const TlFormula& b) {
  if (a == b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case TlKind::top:
      return 0;
    case TlKind::atom:
      return a.name().compare(b.name()) < 0 ? -1 : 1;
    case TlKind::negation:
      return compare(a.lhs(), b.lhs());
    default:
      if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
      return compare(a.rhs(), b.rhs());
  }
}

std::uint64_t dag_size(const TlFormula& f) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<TlFormula> stack{f};
  while (!stack.empty()) {
    TlFormula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.id()).second) continue;
    if (g.kind() == TlKind::negation) stack.push_back(g.lhs());
    if (g.is_binary()) {
      stack.push_back(g.lhs());
      stack.push_back(g.rhs());
    }
  }
  return seen.size();
}

namespace {

TlFormula mirror_rec(const TlFormula& f, std::unordered_map<std::uint64_t, TlFormula>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  TlFormula out;
  switch (f.kind()) {
    case TlKind::top:
    case TlKind::atom:
      out = f;
      break;
    case TlKind::negation:
      out = TlFormula::negation(mirror_rec(f.lhs(), memo));
      break;
    case TlKind::disjunction:
      out = TlFormula::disjunction(mirror_rec(f.lhs(), memo), mirror_rec(f.rhs(), memo));
      break;
    case TlKind::conjunction:
      out = TlFormula::conjunction(mirror_rec(f.lhs(), memo), mirror_rec(f.rhs(), memo));
      break;
    case TlKind::until:
      out = TlFormula::since(mirror_rec(f.lhs(), memo), mirror_rec(f.rhs(), memo));
      break;
    case TlKind::since:
      out = TlFormula::until(mirror_rec(f.lhs(), memo), mirror_rec(f.rhs(), memo));
      break;
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

TlFormula mirror(const TlFormula& f) {
  std::unordered_map<std::uint64_t, TlFormula> memo;
  return mirror_rec(f, memo);
}

std::vector<std::string> atoms_of(const TlFormula& f) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::string> names;
  std::vector<TlFormula> stack{f};
  while (!stack.empty()) {
    TlFormula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.id()).second) continue;
    if (g.kind() == TlKind::atom) names.push_back(g.name());
    if (g.kind() == TlKind::negation) stack.push_back(g.lhs());
    if (g.is_binary()) {
      stack.push_back(g.lhs());
      stack.push_back(g.rhs());
    }
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

namespace {

void collect(const TlFormula& f, TlKind kind, std::vector<TlFormula>& out) {
  if (f.kind() == kind) {
    collect(f.lhs(), kind, out);
    collect(f.rhs(), kind, out);
  } else {
    out.push_back(f);
  }
}

// Shared body of fold_and / fold_or. `unit` is absorbed, `zero` annihilates.
TlFormula fold_associative(const std::vector<TlFormula>& operands, TlKind kind) {
  const bool is_and = kind == TlKind::conjunction;
  std::vector<TlFormula> items;
  for (const auto& op : operands) collect(op, kind, items);

  std::vector<TlFormula> kept;
  kept.reserve(items.size());
  for (auto& item : items) {
    if (is_and ? item.is_true() : item.is_false()) continue;
    if (is_and ? item.is_false() : item.is_true()) {
      return is_and ? TlFormula::bottom() : TlFormula::top();
    }
    kept.push_back(std::move(item));
  }
  std::sort(kept.begin(), kept.end(), TlLess{});
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  for (const auto& item : kept) {
    if (item.kind() == TlKind::negation &&
        std::binary_search(kept.begin(), kept.end(), item.lhs(), TlLess{})) {
      return is_and ? TlFormula::bottom() : TlFormula::top();
    }
  }

  if (kept.empty()) return is_and ? TlFormula::top() : TlFormula::bottom();
  TlFormula acc = kept.back();
  for (auto it = kept.rbegin() + 1; it != kept.rend(); ++it) {
    acc = is_and ? TlFormula::conjunction(*it, acc) : TlFormula::disjunction(*it, acc);
  }
  return acc;
}

}  // namespace

TlFormula fold_not(const TlFormula& f) {
  if (f.kind() == TlKind::negation) return f.lhs();
  return TlFormula::negation(f);
}

TlFormula fold_and(const TlFormula& a, const TlFormula& b) {
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  if (a == b) return a;
  return fold_associative({a, b}, TlKind::conjunction);
}

TlFormula fold_or(const TlFormula& a, const TlFormula& b) {
  if (a.is_false()) return b;
  if (b.is_false()) return a;
  if (a == b) return a;
  return fold_associative({a, b}, TlKind::disjunction);
}

TlFormula fold_and(const std::vector<TlFormula>& operands) {
  return fold_associative(operands, TlKind::conjunction);
}

TlFormula fold_or(const std::vector<TlFormula>& operands) {
  return fold_associative(operands, TlKind::disjunction);
}

TlFormula fold_until(const TlFormula& hold, const TlFormula& goal) {
  if (goal.is_false()) return TlFormula::bottom();
  return TlFormula::until(hold, goal);
}

TlFormula fold_since(const TlFormula& hold, const TlFormula& goal) {
  if (goal.is_false()) return TlFormula::bottom();
  return TlFormula::since(hold, goal);
}

namespace {

TlFormula fold_rec(const TlFormula& f, std::unordered_map<std::uint64_t, TlFormula>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  TlFormula out;
  switch (f.kind()) {
    case TlKind::top:
    case TlKind::atom:
      out = f;
      break;
    case TlKind::negation:
      out = fold_not(fold_rec(f.lhs(), memo));
      break;
    case TlKind::disjunction:
      out = fold_or(fold_rec(f.lhs(), memo), fold_rec(f.rhs(), memo));
      break;
    case TlKind::conjunction:
      out = fold_and(fold_rec(f.lhs(), memo), fold_rec(f.rhs(), memo));
      break;
    case TlKind::until:
      out = fold_until(fold_rec(f.lhs(), memo), fold_rec(f.rhs(), memo));
      break;
    case TlKind::since:
      out = fold_since(fold_rec(f.lhs(), memo), fold_rec(f.rhs(), memo));
      break;
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

TlFormula fold(const TlFormula& f) {
  std::unordered_map<std::uint64_t, TlFormula> memo;
  return fold_rec(f, memo);
}

std::vector<TlFormula> conjuncts(const TlFormula& f) {
  std::vector<TlFormula> out;
  collect(f, TlKind::conjunction, out);
  return out;
}

namespace {

void print_infix(const TlFormula& f, std::string& out) {
  switch (f.kind()) {
    case TlKind::top:
      out += "true";
      return;
    case TlKind::atom:
      out += f.name();
      return;
    case TlKind::negation:
      out += '!';
      print_infix(f.lhs(), out);
      return;
    default:
      break;
  }
  const char* op = " & ";
  if (f.kind() == TlKind::disjunction) op = " | ";
  if (f.kind() == TlKind::until) op = " U ";
  if (f.kind() == TlKind::since) op = " S ";
  out += '(';
  print_infix(f.lhs(), out);
  out += op;
  print_infix(f.rhs(), out);
  out += ')';
}

void print_sexpr(const TlFormula& f, std::string& out) {
  switch (f.kind()) {
    case TlKind::top:
      out += "true";
      return;
    case TlKind::atom:
      out += f.name();
      return;
    case TlKind::negation:
      out += "(not ";
      print_sexpr(f.lhs(), out);
      out += ')';
      return;
    default:
      break;
  }
  const char* head = "(and ";
  if (f.kind() == TlKind::disjunction) head = "(or ";
  if (f.kind() == TlKind::until) head = "(until ";
  if (f.kind() == TlKind::since) head = "(since ";
  out += head;
  print_sexpr(f.lhs(), out);
  out += ' ';
  print_sexpr(f.rhs(), out);
  out += ')';
}

}  // namespace

std::string print_tl(const TlFormula& f) {
  std::string out;
  print_infix(f, out);
  return out;
}

std::string print_tl_sexpr(const TlFormula& f) {
  std::string out;
  print_sexpr(f, out);
  return out;
}

}  // namespace kamp
