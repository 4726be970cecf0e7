#pragma once

// DL-Lite_R reasoning: TBox saturation, PerfectRef, CQ entailment, the
// ground-atom closure cl_GA and consistency checks. A bounded chase is
// provided as an independent oracle for the rewriting-based procedures.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cqe/homomorphism.hpp"
#include "cqe/model.hpp"

namespace cqe {

// ---------------------------------------------------------------------------
// Saturation

/// All subsumptions and disjointnesses between basic concepts / role
/// expressions that follow from a TBox.
struct InclusionClosure {
  std::set<std::pair<BasicConcept, BasicConcept>> concept_subs;
  std::set<std::pair<RoleExpr, RoleExpr>> role_subs;
  std::set<std::pair<BasicConcept, BasicConcept>> disjoint_concepts;  // first <= second
  std::set<std::pair<RoleExpr, RoleExpr>> disjoint_roles;            // first <= second
  Signature signature;

  bool subsumed(const BasicConcept& sub, const BasicConcept& sup) const {
    return sub == sup || concept_subs.count({sub, sup}) > 0;
  }
  bool subsumed(const RoleExpr& sub, const RoleExpr& sup) const {
    return sub == sup || role_subs.count({sub, sup}) > 0;
  }
  bool disjoint(BasicConcept a, BasicConcept b) const {
    if (b < a) std::swap(a, b);
    return disjoint_concepts.count({a, b}) > 0;
  }
  bool disjoint(RoleExpr a, RoleExpr b) const {
    if (b < a) std::swap(a, b);
    return disjoint_roles.count({a, b}) > 0;
  }

  /// Every B with T ⊨ B ⊑ sup (sup itself included, also for names outside the signature).
  std::vector<BasicConcept> subsumees(const BasicConcept& sup) const {
    return lookup(concepts_below_, sup);
  }
  std::vector<BasicConcept> subsumers(const BasicConcept& sub) const { return lookup(concepts_above_, sub); }
  std::vector<RoleExpr> subsumees(const RoleExpr& sup) const { return lookup(roles_below_, sup); }
  std::vector<RoleExpr> subsumers(const RoleExpr& sub) const { return lookup(roles_above_, sub); }

  /// Rebuilds the lookup tables from the pair sets.
  void index() {
    concepts_below_.clear();
    concepts_above_.clear();
    roles_below_.clear();
    roles_above_.clear();
    for (const auto& [a, b] : concept_subs) {
      concepts_below_[b].push_back(a);
      concepts_above_[a].push_back(b);
    }
    for (const auto& [a, b] : role_subs) {
      roles_below_[b].push_back(a);
      roles_above_[a].push_back(b);
    }
  }

 private:
  template <class K>
  static std::vector<K> lookup(const std::map<K, std::vector<K>>& m, const K& k) {
    auto it = m.find(k);
    if (it == m.end()) return {k};
    return it->second;
  }

  std::map<BasicConcept, std::vector<BasicConcept>> concepts_below_, concepts_above_;
  std::map<RoleExpr, std::vector<RoleExpr>> roles_below_, roles_above_;
};

namespace detail {

template <class K>
std::set<std::pair<K, K>> reflexive_transitive(const std::vector<K>& nodes,
                                               const std::map<K, std::vector<K>>& edges) {
  std::set<std::pair<K, K>> out;
  for (const K& start : nodes) {
    std::set<K> seen{start};
    std::deque<K> todo{start};
    while (!todo.empty()) {
      K cur = todo.front();
      todo.pop_front();
      out.insert({start, cur});
      if (auto it = edges.find(cur); it != edges.end())
        for (const K& next : it->second)
          if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return out;
}

template <class K>
void add_unordered(std::set<std::pair<K, K>>& s, K a, K b) {
  if (b < a) std::swap(a, b);
  s.insert({std::move(a), std::move(b)});
}

}  // namespace detail

/// Saturates the TBox over its signature extended with `extra`.
inline InclusionClosure saturate_tbox(const TBox& tbox, const Signature& extra = {}) {
  InclusionClosure cl;
  cl.signature = tbox.signature;
  cl.signature.merge(extra);

  std::vector<RoleExpr> roles;
  std::vector<BasicConcept> concepts;
  for (const auto& c : cl.signature.concepts) concepts.push_back(BasicConcept::atomic(c));
  for (const auto& r : cl.signature.roles) {
    roles.push_back(RoleExpr::direct(r));
    roles.push_back(RoleExpr::inverse_of(r));
    concepts.push_back(BasicConcept::exists(r));
    concepts.push_back(BasicConcept::exists_inverse(r));
  }

  std::map<RoleExpr, std::vector<RoleExpr>> role_edges;
  for (const auto& ax : tbox.axioms)
    if (const auto* ri = std::get_if<RoleInclusion>(&ax); ri && !ri->negated) {
      role_edges[ri->lhs].push_back(ri->rhs);
      role_edges[ri->lhs.inverted()].push_back(ri->rhs.inverted());
    }
  cl.role_subs = detail::reflexive_transitive(roles, role_edges);

  std::map<BasicConcept, std::vector<BasicConcept>> concept_edges;
  for (const auto& ax : tbox.axioms)
    if (const auto* ci = std::get_if<ConceptInclusion>(&ax); ci && !ci->negated)
      concept_edges[ci->lhs].push_back(ci->rhs);
  for (const auto& [r, s] : cl.role_subs)
    if (r != s) concept_edges[BasicConcept::exists(r)].push_back(BasicConcept::exists(s));
  cl.concept_subs = detail::reflexive_transitive(concepts, concept_edges);
  cl.index();

  // Negative inclusions, closed under positive subsumption on both sides.
  for (const auto& ax : tbox.axioms) {
    if (const auto* ci = std::get_if<ConceptInclusion>(&ax); ci && ci->negated) {
      for (const auto& b : cl.subsumees(ci->lhs))
        for (const auto& c : cl.subsumees(ci->rhs)) detail::add_unordered(cl.disjoint_concepts, b, c);
    } else if (const auto* ri = std::get_if<RoleInclusion>(&ax); ri && ri->negated) {
      for (const auto& r : cl.subsumees(ri->lhs))
        for (const auto& s : cl.subsumees(ri->rhs)) {
          detail::add_unordered(cl.disjoint_roles, r, s);
          detail::add_unordered(cl.disjoint_roles, r.inverted(), s.inverted());
        }
    }
  }
  // Disjoint domains (or ranges) make the roles themselves disjoint.
  for (const auto& [b, c] : std::set(cl.disjoint_concepts)) {
    if (b.is_atomic() || c.is_atomic()) continue;
    for (const auto& r : cl.subsumees(b.role()))
      for (const auto& s : cl.subsumees(c.role())) {
        detail::add_unordered(cl.disjoint_roles, r, s);
        detail::add_unordered(cl.disjoint_roles, r.inverted(), s.inverted());
      }
  }

  // Unsatisfiable concepts and roles: self-disjoint ones, propagated through
  // ∃R ~ R ~ ∃R⁻ and downwards along subsumption.
  std::set<BasicConcept> empty_concepts;
  std::set<RoleExpr> empty_roles;
  for (const auto& [b, c] : cl.disjoint_concepts)
    if (b == c) empty_concepts.insert(b);
  for (const auto& [r, s] : cl.disjoint_roles)
    if (r == s) empty_roles.insert(r);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& b : std::set(empty_concepts)) {
      for (const auto& sub : cl.subsumees(b)) changed |= empty_concepts.insert(sub).second;
      if (!b.is_atomic()) {
        changed |= empty_roles.insert(b.role()).second;
        changed |= empty_roles.insert(b.role().inverted()).second;
      }
    }
    for (const auto& r : std::set(empty_roles)) {
      for (const auto& sub : cl.subsumees(r)) changed |= empty_roles.insert(sub).second;
      changed |= empty_roles.insert(r.inverted()).second;
      changed |= empty_concepts.insert(BasicConcept::exists(r)).second;
    }
  }
  for (const auto& b : empty_concepts)
    for (const auto& c : concepts) {
      cl.concept_subs.insert({b, c});
      detail::add_unordered(cl.disjoint_concepts, b, c);
    }
  for (const auto& r : empty_roles)
    for (const auto& s : roles) {
      cl.role_subs.insert({r, s});
      detail::add_unordered(cl.disjoint_roles, r, s);
    }
  cl.index();
  return cl;
}

// ---------------------------------------------------------------------------
// Atom builders

/// The atom expressing "t ∈ B"; `fresh` names the anonymous filler of ∃R.
inline Atom concept_atom(const BasicConcept& b, const Term& t, const Term& fresh) {
  switch (b.kind) {
    case BasicConcept::Kind::Atomic: return Atom::unary(b.name, t);
    case BasicConcept::Kind::Exists: return Atom::binary(b.name, t, fresh);
    case BasicConcept::Kind::ExistsInverse: return Atom::binary(b.name, fresh, t);
  }
  return {};
}

/// The atom expressing "(s,t) ∈ R".
inline Atom role_atom(const RoleExpr& r, const Term& s, const Term& t) {
  return r.inverse ? Atom::binary(r.name, t, s) : Atom::binary(r.name, s, t);
}

// ---------------------------------------------------------------------------
// CQ utilities

/// Renames variables to V0, V1, ... in an order that depends only on the
/// query's shape (up to ties), then sorts atoms.
inline ConjunctiveQuery canonicalize(const ConjunctiveQuery& q) {
  std::vector<Atom> atoms = q.atoms;
  for (int round = 0; round < 3; ++round) {
    // Sort with variables masked, then by the current names.
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
      auto masked = [](const Atom& x) {
        Atom m = x;
        for (auto& t : m.args)
          if (t.is_variable()) t.name.clear();
        return m;
      };
      return masked(a) < masked(b);
    });
    std::map<std::string, std::string> rename;
    for (const auto& a : atoms)
      for (const auto& t : a.args)
        if (t.is_variable() && !rename.count(t.name))
          rename.emplace(t.name, "V" + std::to_string(rename.size()));
    for (auto& a : atoms)
      for (auto& t : a.args)
        if (t.is_variable()) t.name = rename.at(t.name);
  }
  return ConjunctiveQuery(std::move(atoms));
}

/// Variables occurring exactly once in q ("unbound" in PerfectRef terms).
inline std::set<std::string> unbound_variables(const ConjunctiveQuery& q) {
  std::map<std::string, int> count;
  for (const auto& a : q.atoms)
    for (const auto& t : a.args)
      if (t.is_variable()) ++count[t.name];
  std::set<std::string> out;
  for (const auto& [v, n] : count)
    if (n == 1) out.insert(v);
  return out;
}

/// Most general unifier of two atoms, as a substitution on variables.
inline std::optional<Binding> unify(const Atom& a, const Atom& b, Binding sub = {}) {
  if (a.predicate != b.predicate || a.arity() != b.arity()) return std::nullopt;
  auto resolve = [&](Term t) {
    while (t.is_variable()) {
      auto it = sub.find(t.name);
      if (it == sub.end()) break;
      t = it->second;
    }
    return t;
  };
  for (std::size_t i = 0; i < a.arity(); ++i) {
    Term x = resolve(a.args[i]);
    Term y = resolve(b.args[i]);
    if (x == y) continue;
    if (x.is_variable()) {
      sub[x.name] = y;
    } else if (y.is_variable()) {
      sub[y.name] = x;
    } else {
      return std::nullopt;
    }
  }
  // Flatten chains so that a single application suffices.
  Binding flat;
  for (const auto& [v, _] : sub) flat[v] = resolve(Term::variable(v));
  return flat;
}

inline ConjunctiveQuery substitute(const ConjunctiveQuery& q, const Binding& sub) {
  std::vector<Atom> atoms;
  for (const auto& a : q.atoms) atoms.push_back(instantiate(sub, a));
  return ConjunctiveQuery(std::move(atoms));
}

inline bool eval_cq(const ConjunctiveQuery& q, const AtomIndex& index) { return has_homomorphism(q.atoms, index); }

/// True iff q has a homomorphism into the ABox.
inline bool eval_cq(const ConjunctiveQuery& q, const ABox& abox) {
  return eval_cq(q, AtomIndex(abox.atoms()));
}

/// q1 maps homomorphically into q2 (variables of q2 frozen), i.e. q2 ⊨ q1.
inline bool cq_contains(const ConjunctiveQuery& q1, const ConjunctiveQuery& q2) {
  std::vector<Atom> frozen;
  for (auto a : q2.atoms) {
    for (auto& t : a.args)
      if (t.is_variable()) t = Term::constant("?" + t.name);
    frozen.push_back(std::move(a));
  }
  return has_homomorphism(q1.atoms, AtomIndex(frozen));
}

/// Removes atoms that are redundant up to homomorphic equivalence (the core).
inline ConjunctiveQuery minimize_cq(const ConjunctiveQuery& q) {
  ConjunctiveQuery cur = q;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < cur.atoms.size() && cur.atoms.size() > 1; ++i) {
      std::vector<Atom> rest = cur.atoms;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      ConjunctiveQuery smaller(rest);
      if (cq_contains(cur, smaller)) {
        cur = smaller;
        changed = true;
        break;
      }
    }
  }
  return cur;
}

/// Drops members of a union that are contained in another member.
inline std::vector<ConjunctiveQuery> prune_subsumed(std::vector<ConjunctiveQuery> ucq) {
  std::vector<ConjunctiveQuery> kept;
  for (std::size_t i = 0; i < ucq.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < ucq.size() && !redundant; ++j) {
      if (i == j || !cq_contains(ucq[j], ucq[i])) continue;
      // Equivalent pairs keep the earlier one.
      redundant = !cq_contains(ucq[i], ucq[j]) || j < i;
    }
    if (!redundant) kept.push_back(ucq[i]);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Reasoner

/// A TBox with its saturation and precomputed inconsistency rewritings.
/// Immutable after construction.
class Reasoner {
 public:
  explicit Reasoner(TBox tbox, const Signature& extra = {})
      : tbox_(std::move(tbox)), closure_(saturate_tbox(tbox_, extra)) {
    const Term x = Term::variable("X"), y = Term::variable("Y"), z = Term::variable("Z");
    for (const auto& [b, c] : closure_.disjoint_concepts) {
      ConjunctiveQuery v({concept_atom(b, x, y), concept_atom(c, x, z)});
      for (auto& r : perfect_ref(v)) violations_.push_back(std::move(r));
    }
    for (const auto& [r, s] : closure_.disjoint_roles) {
      ConjunctiveQuery v({role_atom(r, x, y), role_atom(s, x, y)});
      for (auto& rr : perfect_ref(v)) violations_.push_back(std::move(rr));
    }
    std::sort(violations_.begin(), violations_.end());
    violations_.erase(std::unique(violations_.begin(), violations_.end()), violations_.end());
    violations_ = prune_subsumed(std::move(violations_));
  }

  const TBox& tbox() const { return tbox_; }
  const InclusionClosure& closure() const { return closure_; }

  /// Union of CQs whose evaluation over an ABox coincides with certain
  /// answers under the positive inclusions of the TBox.
  std::vector<ConjunctiveQuery> perfect_ref(const ConjunctiveQuery& q) const {
    std::set<ConjunctiveQuery> seen;
    std::deque<ConjunctiveQuery> todo;
    auto push = [&](const ConjunctiveQuery& c) {
      auto canon = canonicalize(c);
      if (seen.insert(canon).second) todo.push_back(std::move(canon));
    };
    push(q);
    while (!todo.empty()) {
      ConjunctiveQuery cur = std::move(todo.front());
      todo.pop_front();
      const auto unbound = unbound_variables(cur);
      const Term fresh = fresh_variable(cur);
      for (std::size_t i = 0; i < cur.atoms.size(); ++i) {
        for (const Atom& replacement : atom_rewritings(cur.atoms[i], unbound, fresh)) {
          auto atoms = cur.atoms;
          atoms[i] = replacement;
          push(ConjunctiveQuery(std::move(atoms)));
        }
        for (std::size_t j = i + 1; j < cur.atoms.size(); ++j)
          if (auto mgu = unify(cur.atoms[i], cur.atoms[j])) push(substitute(cur, *mgu));
      }
    }
    return {seen.begin(), seen.end()};
  }

  /// Rewritings of the violation patterns of all entailed disjointnesses.
  const std::vector<ConjunctiveQuery>& violation_queries() const { return violations_; }

  bool is_consistent(const AtomIndex& index) const {
    return std::none_of(violations_.begin(), violations_.end(),
                        [&](const ConjunctiveQuery& v) { return eval_cq(v, index); });
  }
  bool is_consistent(const ABox& abox) const { return is_consistent(AtomIndex(abox.atoms())); }

  void require_consistent(const ABox& abox) const {
    if (!is_consistent(abox)) throw InconsistentOntology("TBox and ABox are inconsistent");
  }

  /// T ∪ A ⊨ q for a consistent T ∪ A (not re-checked).
  bool entails_unchecked(const AtomIndex& index, const ConjunctiveQuery& q) const {
    for (const auto& r : perfect_ref(q))
      if (eval_cq(r, index)) return true;
    return false;
  }

  bool entails(const ABox& abox, const ConjunctiveQuery& q) const {
    AtomIndex index(abox.atoms());
    if (!is_consistent(index)) throw InconsistentOntology("TBox and ABox are inconsistent");
    return entails_unchecked(index, q);
  }

  /// cl_GA(A): all entailed ground atoms over the constants of A.
  ABox abox_closure(const ABox& abox) const {
    require_consistent(abox);
    return closure_unchecked(abox);
  }

  ABox closure_unchecked(const ABox& abox) const {
    ABox out;
    for (const Atom& a : abox) {
      if (a.is_concept()) {
        add_concept_consequences(out, BasicConcept::atomic(a.predicate), a.args[0]);
      } else {
        add_concept_consequences(out, BasicConcept::exists(a.predicate), a.args[0]);
        add_concept_consequences(out, BasicConcept::exists_inverse(a.predicate), a.args[1]);
        for (const auto& s : closure_.subsumers(RoleExpr::direct(a.predicate)))
          out.insert(role_atom(s, a.args[0], a.args[1]));
      }
    }
    return out;
  }

 private:
  void add_concept_consequences(ABox& out, const BasicConcept& b, const Term& t) const {
    for (const auto& sup : closure_.subsumers(b))
      if (sup.is_atomic()) out.insert(Atom::unary(sup.name, t));
  }

  static Term fresh_variable(const ConjunctiveQuery& q) {
    auto vars = q.variables();
    for (std::size_t n = vars.size();; ++n) {
      std::string name = "V" + std::to_string(n);
      if (!vars.count(name)) return Term::variable(name);
    }
  }

  /// One-step replacements of an atom by the lhs of an applicable inclusion.
  std::vector<Atom> atom_rewritings(const Atom& g, const std::set<std::string>& unbound, const Term& fresh) const {
    std::vector<Atom> out;
    auto is_unbound = [&](const Term& t) { return t.is_variable() && unbound.count(t.name); };
    auto add_concepts = [&](const BasicConcept& target, const Term& t) {
      for (const auto& b : closure_.subsumees(target))
        if (b != target) out.push_back(concept_atom(b, t, fresh));
    };
    if (g.is_concept()) {
      add_concepts(BasicConcept::atomic(g.predicate), g.args[0]);
      return out;
    }
    const Term& s = g.args[0];
    const Term& t = g.args[1];
    if (is_unbound(t)) add_concepts(BasicConcept::exists(g.predicate), s);
    if (is_unbound(s)) add_concepts(BasicConcept::exists_inverse(g.predicate), t);
    for (const auto& r : closure_.subsumees(RoleExpr::direct(g.predicate)))
      if (r != RoleExpr::direct(g.predicate)) out.push_back(role_atom(r, s, t));
    return out;
  }

  TBox tbox_;
  InclusionClosure closure_;
  std::vector<ConjunctiveQuery> violations_;
};

// ---------------------------------------------------------------------------
// Free-function interface

inline std::vector<ConjunctiveQuery> perfect_ref(const ConjunctiveQuery& q, const TBox& tbox) {
  return Reasoner(tbox).perfect_ref(q);
}

inline bool is_consistent(const TBox& tbox, const ABox& abox) {
  return Reasoner(tbox, abox.signature()).is_consistent(abox);
}

/// T ∪ A ⊨ q. Throws InconsistentOntology when T ∪ A has no model.
inline bool cq_entailed(const TBox& tbox, const ABox& abox, const ConjunctiveQuery& q) {
  return Reasoner(tbox).entails(abox, q);
}

inline ABox abox_closure(const TBox& tbox, const ABox& abox) {
  return Reasoner(tbox, abox.signature()).abox_closure(abox);
}

/// T ∪ P ∪ A is consistent, for a consistent T ∪ A.
inline bool is_policy_consistent(const TBox& tbox, const Policy& policy, const ABox& abox) {
  Reasoner r(tbox);
  AtomIndex index(abox.atoms());
  if (!r.is_consistent(index)) throw InconsistentOntology("TBox and ABox are inconsistent");
  for (const auto& d : policy.denials)
    if (r.entails_unchecked(index, d.as_query())) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Bounded chase

/// A finite prefix of the canonical model: labelled nulls are constants
/// named "_n<k>" and carry their distance from the named individuals.
struct ChaseStructure {
  std::set<Atom> atoms;
  std::map<std::string, std::size_t> depth;  // nulls only

  bool contains(const Atom& a) const { return atoms.count(a) > 0; }
  std::size_t null_count() const { return depth.size(); }
  static bool is_null(const Term& t) { return t.name.size() > 2 && t.name[0] == '_' && t.name[1] == 'n'; }
};

/// Canonical model truncated at nulls of distance `max_depth`. An ∃R
/// requirement is expanded only when no existing edge already satisfies it.
inline ChaseStructure chase_bounded(const TBox& tbox, const ABox& abox, std::size_t max_depth) {
  Reasoner reasoner(tbox, abox.signature());
  reasoner.require_consistent(abox);
  const InclusionClosure& cl = reasoner.closure();

  ChaseStructure out;
  std::map<std::string, std::set<BasicConcept>> types;
  std::map<std::string, std::set<RoleExpr>> outgoing;  // role expressions leaving a term

  auto add_type = [&](const std::string& t, const BasicConcept& b) {
    for (const auto& sup : cl.subsumers(b)) types[t].insert(sup);
  };
  auto add_edge = [&](const RoleExpr& r, const Term& s, const Term& t) {
    for (const auto& sup : cl.subsumers(r)) {
      out.atoms.insert(role_atom(sup, s, t));
      outgoing[s.name].insert(sup);
      outgoing[t.name].insert(sup.inverted());
    }
    add_type(s.name, BasicConcept::exists(r));
    add_type(t.name, BasicConcept::exists(r.inverted()));
  };

  std::deque<std::pair<std::string, std::size_t>> todo;
  for (const Atom& a : abox) {
    if (a.is_concept()) add_type(a.args[0].name, BasicConcept::atomic(a.predicate));
    else add_edge(RoleExpr::direct(a.predicate), a.args[0], a.args[1]);
  }
  for (const auto& c : abox.constants()) todo.emplace_back(c, 0);

  std::size_t next_null = 0;
  while (!todo.empty()) {
    auto [term, d] = todo.front();
    todo.pop_front();
    if (d >= max_depth) continue;
    const std::set<BasicConcept> type = types[term];
    for (const auto& b : type) {
      if (b.is_atomic()) continue;
      const RoleExpr r = b.role();
      const auto& out_roles = outgoing[term];
      bool satisfied = std::any_of(out_roles.begin(), out_roles.end(),
                                   [&](const RoleExpr& e) { return cl.subsumed(e, r); });
      if (satisfied) continue;
      std::string null = "_n" + std::to_string(++next_null);
      out.depth[null] = d + 1;
      add_edge(r, Term::constant(term), Term::constant(null));
      todo.emplace_back(null, d + 1);
    }
  }
  for (const auto& [t, type] : types)
    for (const auto& b : type)
      if (b.is_atomic()) out.atoms.insert(Atom::unary(b.name, Term::constant(t)));
  return out;
}

/// Oracle entailment: q maps into the chase truncated at |atoms(q)|.
inline bool chase_entails(const TBox& tbox, const ABox& abox, const ConjunctiveQuery& q) {
  auto chase = chase_bounded(tbox, abox, q.size());
  return has_homomorphism(q.atoms, AtomIndex(chase.atoms));
}

}  // namespace cqe
