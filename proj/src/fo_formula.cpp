#include "kamp/fo_formula.hpp"

#include <algorithm>

namespace kamp {

FoFormula FoFormula::predicate(std::string_view atom, std::string_view var) {
  return FoFormula(std::make_shared<const Node>(
      Node{FoKind::predicate, std::string(atom), std::string(var), {}, nullptr, nullptr}));
}

FoFormula FoFormula::less(std::string_view lhs, std::string_view rhs) {
  return FoFormula(std::make_shared<const Node>(
      Node{FoKind::less, {}, std::string(lhs), std::string(rhs), nullptr, nullptr}));
}

FoFormula FoFormula::equal(std::string_view lhs, std::string_view rhs) {
  return FoFormula(std::make_shared<const Node>(
      Node{FoKind::equal, {}, std::string(lhs), std::string(rhs), nullptr, nullptr}));
}

FoFormula FoFormula::negation(const FoFormula& f) {
  return FoFormula(std::make_shared<const Node>(
      Node{FoKind::negation, {}, {}, {}, std::make_shared<const FoFormula>(f), nullptr}));
}

FoFormula FoFormula::disjunction(const FoFormula& lhs, const FoFormula& rhs) {
  return FoFormula(std::make_shared<const Node>(
      Node{FoKind::disjunction, {}, {}, {}, std::make_shared<const FoFormula>(lhs),
           std::make_shared<const FoFormula>(rhs)}));
}

FoFormula FoFormula::conjunction(const FoFormula& lhs, const FoFormula& rhs) {
  return FoFormula(std::make_shared<const Node>(
      Node{FoKind::conjunction, {}, {}, {}, std::make_shared<const FoFormula>(lhs),
           std::make_shared<const FoFormula>(rhs)}));
}

FoFormula FoFormula::exists(std::string_view var, const FoFormula& body) {
  return FoFormula(std::make_shared<const Node>(Node{
      FoKind::exists, {}, std::string(var), {}, std::make_shared<const FoFormula>(body), nullptr}));
}

FoFormula FoFormula::forall(std::string_view var, const FoFormula& body) {
  return FoFormula(std::make_shared<const Node>(Node{
      FoKind::forall, {}, std::string(var), {}, std::make_shared<const FoFormula>(body), nullptr}));
}

FoFormula FoFormula::implication(const FoFormula& lhs, const FoFormula& rhs) {
  return disjunction(negation(lhs), rhs);
}

bool operator==(const FoFormula& a, const FoFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FoKind::predicate:
      return a.atom() == b.atom() && a.var() == b.var();
    case FoKind::less:
    case FoKind::equal:
      return a.var() == b.var() && a.var2() == b.var2();
    case FoKind::negation:
      return a.lhs() == b.lhs();
    case FoKind::disjunction:
    case FoKind::conjunction:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case FoKind::exists:
    case FoKind::forall:
      return a.var() == b.var() && a.body() == b.body();
  }
  return false;
}

namespace {

void collect_free(const FoFormula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (!bound.contains(v)) out.insert(v);
  };
  switch (f.kind()) {
    case FoKind::predicate:
      note(f.var());
      break;
    case FoKind::less:
    case FoKind::equal:
      note(f.var());
      note(f.var2());
      break;
    case FoKind::negation:
      collect_free(f.lhs(), bound, out);
      break;
    case FoKind::disjunction:
    case FoKind::conjunction:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      break;
    case FoKind::exists:
    case FoKind::forall: {
      const bool shadowed = bound.contains(f.var());
      bound.insert(f.var());
      collect_free(f.body(), bound, out);
      if (!shadowed) bound.erase(f.var());
      break;
    }
  }
}

void print_rec(const FoFormula& f, std::string& out) {
  switch (f.kind()) {
    case FoKind::predicate:
      out += f.atom() + "(" + f.var() + ")";
      return;
    case FoKind::less:
      out += f.var() + " < " + f.var2();
      return;
    case FoKind::equal:
      out += f.var() + " = " + f.var2();
      return;
    case FoKind::negation:
      out += '!';
      if (f.lhs().kind() == FoKind::less || f.lhs().kind() == FoKind::equal) {
        out += '(';
        print_rec(f.lhs(), out);
        out += ')';
      } else {
        print_rec(f.lhs(), out);
      }
      return;
    case FoKind::disjunction:
    case FoKind::conjunction:
      out += '(';
      print_rec(f.lhs(), out);
      out += f.kind() == FoKind::conjunction ? " & " : " | ";
      print_rec(f.rhs(), out);
      out += ')';
      return;
    case FoKind::exists:
    case FoKind::forall:
      out += f.kind() == FoKind::exists ? "(E " : "(A ";
      out += f.var() + ". ";
      print_rec(f.body(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const FoFormula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> atoms_of(const FoFormula& f) {
  std::set<std::string> out;
  switch (f.kind()) {
    case FoKind::predicate:
      out.insert(f.atom());
      break;
    case FoKind::less:
    case FoKind::equal:
      break;
    case FoKind::negation:
    case FoKind::exists:
    case FoKind::forall:
      out = atoms_of(f.lhs());
      break;
    case FoKind::disjunction:
    case FoKind::conjunction:
      out = atoms_of(f.lhs());
      out.merge(atoms_of(f.rhs()));
      break;
  }
  return out;
}

int quantifier_depth(const FoFormula& f) {
  switch (f.kind()) {
    case FoKind::negation:
      return quantifier_depth(f.lhs());
    case FoKind::disjunction:
    case FoKind::conjunction:
      return std::max(quantifier_depth(f.lhs()), quantifier_depth(f.rhs()));
    case FoKind::exists:
    case FoKind::forall:
      return 1 + quantifier_depth(f.body());
    default:
      return 0;
  }
}

std::uint64_t fo_size(const FoFormula& f) {
  switch (f.kind()) {
    case FoKind::predicate:
    case FoKind::less:
    case FoKind::equal:
      return 3;
    case FoKind::negation:
      return 1 + fo_size(f.lhs());
    case FoKind::disjunction:
    case FoKind::conjunction:
      return 1 + fo_size(f.lhs()) + fo_size(f.rhs());
    case FoKind::exists:
    case FoKind::forall:
      return 2 + fo_size(f.body());
  }
  return 0;
}

std::string print_fo(const FoFormula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

}  // namespace kamp
