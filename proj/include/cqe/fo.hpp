#pragma once

// First-order query AST produced by the rewriters: atoms, term equalities,
// n-ary conjunction/disjunction, negation and single-variable existential
// quantification. An empty conjunction is TRUE, an empty disjunction FALSE.

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cqe/model.hpp"

namespace cqe {

class FOQuery {
 public:
  enum class Kind { Atom, Equals, And, Or, Not, Exists };

  /// Default-constructed query is TRUE.
  FOQuery() : node_(std::make_shared<Node>(Node{Kind::And, {}, {}, {}})) {}

  // Raw constructors. Only collapse single-child And/Or so that every
  // well-formed tree has a unique textual form.
  static FOQuery atom(Atom a) { return FOQuery(Node{Kind::Atom, std::move(a), {}, {}}); }
  static FOQuery equals(Term lhs, Term rhs) {
    return FOQuery(Node{Kind::Equals, Atom("=", {std::move(lhs), std::move(rhs)}), {}, {}});
  }
  static FOQuery conj(std::vector<FOQuery> children) {
    if (children.size() == 1) return std::move(children.front());
    return FOQuery(Node{Kind::And, {}, std::move(children), {}});
  }
  static FOQuery disj(std::vector<FOQuery> children) {
    if (children.size() == 1) return std::move(children.front());
    return FOQuery(Node{Kind::Or, {}, std::move(children), {}});
  }
  static FOQuery negate(FOQuery sub) { return FOQuery(Node{Kind::Not, {}, {std::move(sub)}, {}}); }
  static FOQuery exists(std::string var, FOQuery sub) {
    return FOQuery(Node{Kind::Exists, {}, {std::move(sub)}, std::move(var)});
  }
  static FOQuery truth() { return conj({}); }
  static FOQuery falsity() { return disj({}); }

  Kind kind() const { return node_->kind; }
  bool is_true() const { return kind() == Kind::And && children().empty(); }
  bool is_false() const { return kind() == Kind::Or && children().empty(); }

  /// Atom payload for Kind::Atom; for Kind::Equals the two compared terms are args[0], args[1].
  const Atom& atom_value() const { return node_->atom; }
  const std::vector<FOQuery>& children() const { return node_->children; }
  const FOQuery& child() const { return node_->children.front(); }
  const std::string& variable() const { return node_->var; }

  /// Number of AST nodes.
  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.size();
    return n;
  }

  std::set<std::string> free_variables() const {
    std::set<std::string> out;
    collect_free(std::set<std::string>{}, out);
    return out;
  }
  bool is_sentence() const { return free_variables().empty(); }

  /// Address of the shared node; stable for the lifetime of the tree.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const FOQuery& a, const FOQuery& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.atom == y.atom && x.var == y.var && x.children == y.children;
  }

 private:
  struct Node {
    Kind kind;
    Atom atom;
    std::vector<FOQuery> children;
    std::string var;
  };

  explicit FOQuery(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  void collect_free(const std::set<std::string>& bound, std::set<std::string>& out) const {
    switch (kind()) {
      case Kind::Atom:
      case Kind::Equals:
        for (const auto& t : atom_value().args)
          if (t.is_variable() && !bound.count(t.name)) out.insert(t.name);
        return;
      case Kind::Exists: {
        auto inner = bound;
        inner.insert(variable());
        child().collect_free(inner, out);
        return;
      }
      default:
        for (const auto& c : children()) c.collect_free(bound, out);
    }
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Simplifying constructors used by the rewriters. They fold TRUE/FALSE,
// flatten nested connectives of the same kind and drop duplicate operands.

namespace fo {

inline FOQuery atom(Atom a) { return FOQuery::atom(std::move(a)); }

inline FOQuery equals(Term lhs, Term rhs) {
  if (lhs == rhs) return FOQuery::truth();
  if (lhs.is_constant() && rhs.is_constant()) return FOQuery::falsity();
  if (rhs < lhs) std::swap(lhs, rhs);
  return FOQuery::equals(std::move(lhs), std::move(rhs));
}

namespace detail {
inline FOQuery connective(std::vector<FOQuery> operands, FOQuery::Kind kind) {
  const bool is_and = kind == FOQuery::Kind::And;
  std::vector<FOQuery> out;
  auto push = [&](const FOQuery& q) {
    for (const auto& seen : out)
      if (seen == q) return;
    out.push_back(q);
  };
  for (auto& q : operands) {
    if (is_and ? q.is_true() : q.is_false()) continue;
    if (is_and ? q.is_false() : q.is_true()) return q;
    if (q.kind() == kind) {
      for (const auto& c : q.children()) push(c);
    } else {
      push(q);
    }
  }
  return is_and ? FOQuery::conj(std::move(out)) : FOQuery::disj(std::move(out));
}
}  // namespace detail

inline FOQuery conj(std::vector<FOQuery> operands) {
  return detail::connective(std::move(operands), FOQuery::Kind::And);
}
inline FOQuery disj(std::vector<FOQuery> operands) {
  return detail::connective(std::move(operands), FOQuery::Kind::Or);
}

inline FOQuery negate(FOQuery q) {
  if (q.is_true()) return FOQuery::falsity();
  if (q.is_false()) return FOQuery::truth();
  if (q.kind() == FOQuery::Kind::Not) return q.child();
  return FOQuery::negate(std::move(q));
}

inline FOQuery exists(const std::string& var, FOQuery body) {
  if (!body.free_variables().count(var)) return body;
  return FOQuery::exists(var, std::move(body));
}

/// ∃vars. body, quantifiers nested in the given order.
inline FOQuery exists(const std::vector<std::string>& vars, FOQuery body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

/// The existential closure of a conjunction of atoms.
inline FOQuery from_cq(const ConjunctiveQuery& q) {
  std::vector<FOQuery> parts;
  for (const auto& a : q.atoms) parts.push_back(atom(a));
  auto vars = q.variables();
  return exists(std::vector<std::string>(vars.begin(), vars.end()), conj(std::move(parts)));
}

}  // namespace fo

}  // namespace cqe
