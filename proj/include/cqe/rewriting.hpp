#pragma once

// FO rewriting pipeline: active-domain evaluation of FO sentences,
// atom-wise TBox rewriting (atomRewr), the IAR-perfect reformulation with
// respect to T ∪ P, and their composition, the QIB-perfect reformulation.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cqe/fo.hpp"
#include "cqe/model.hpp"
#include "cqe/reasoner.hpp"

namespace cqe {

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

class FOEvaluator {
 public:
  explicit FOEvaluator(const ABox& abox) {
    for (const Atom& a : abox) {
      const std::string key = pred_key(a);
      facts_.insert(fact_key(a));
      by_pred_[key].push_back(&a);
      for (std::size_t i = 0; i < a.arity(); ++i) by_arg_[arg_key(key, i, a.args[i].name)].push_back(&a);
    }
    auto consts = abox.constants();
    domain_.assign(consts.begin(), consts.end());
    domain_set_.insert(consts.begin(), consts.end());
  }

  bool eval(const FOQuery& q, std::map<std::string, std::string>& env) {
    using K = FOQuery::Kind;
    switch (q.kind()) {
      case K::Atom: return holds(q.atom_value(), env);
      case K::Equals: return value(q.atom_value().args[0], env) == value(q.atom_value().args[1], env);
      case K::Not: return !eval(q.child(), env);
      case K::And:
        for (const auto& c : q.children())
          if (!eval(c, env)) return false;
        return true;
      case K::Or:
        for (const auto& c : q.children())
          if (eval(c, env)) return true;
        return false;
      case K::Exists: {
        std::vector<std::string> vars;
        const FOQuery* body = &q;
        while (body->kind() == K::Exists) {
          vars.push_back(body->variable());
          body = &body->child();
        }
        return exists(vars, *body, env);
      }
    }
    return false;
  }

 private:
  static std::string pred_key(const Atom& a) { return a.predicate + '/' + static_cast<char>('0' + a.arity()); }
  static std::string arg_key(const std::string& pk, std::size_t pos, const std::string& c) {
    return pk + '|' + static_cast<char>('0' + pos) + '|' + c;
  }
  static std::string fact_key(const Atom& a) {
    std::string k = pred_key(a);
    for (const auto& t : a.args) k += '|' + t.name;
    return k;
  }

  static std::string value(const Term& t, const std::map<std::string, std::string>& env) {
    if (t.is_constant()) return t.name;
    auto it = env.find(t.name);
    if (it == env.end()) throw InvalidInput("unbound variable " + t.name + " in FO query");
    return it->second;
  }

  bool holds(const Atom& a, const std::map<std::string, std::string>& env) const {
    std::string k = pred_key(a);
    for (const auto& t : a.args) k += '|' + value(t, env);
    return facts_.count(k) > 0;
  }

  const std::set<std::string>& free_vars(const FOQuery& q) {
    auto it = free_cache_.find(q.identity());
    if (it != free_cache_.end()) return it->second;
    return free_cache_.emplace(q.identity(), q.free_variables()).first->second;
  }

  static void flatten_and(const FOQuery& q, std::vector<FOQuery>& out) {
    if (q.kind() == FOQuery::Kind::And) {
      for (const auto& c : q.children()) flatten_and(c, out);
    } else {
      out.push_back(q);
    }
  }

  // ∃vars. body, distributing over disjunctions and joining positive atoms
  // through the argument index instead of scanning the domain.
  bool exists(const std::vector<std::string>& vars, const FOQuery& body, std::map<std::string, std::string>& env) {
    if (body.kind() == FOQuery::Kind::Or) {
      for (const auto& d : body.children())
        if (exists(vars, d, env)) return true;
      return false;
    }
    std::vector<FOQuery> conjuncts;
    flatten_and(body, conjuncts);
    // Inner quantifiers shadow outer bindings of the same name.
    std::map<std::string, std::string> shadowed;
    std::set<std::string> open;
    for (const auto& v : vars) {
      if (auto it = env.find(v); it != env.end()) {
        shadowed.insert(*it);
        env.erase(it);
      }
      open.insert(v);
    }
    bool result = exists_open(conjuncts, open, env);
    for (auto& [v, val] : shadowed) env[v] = val;
    return result;
  }

  bool exists_open(const std::vector<FOQuery>& conjuncts, std::set<std::string>& open,
                   std::map<std::string, std::string>& env) {
    // Quantified variables that occur nowhere only require a non-empty domain.
    std::set<std::string> used;
    for (const auto& c : conjuncts)
      for (const auto& v : free_vars(c)) used.insert(v);
    for (auto it = open.begin(); it != open.end();) {
      if (!used.count(*it)) {
        if (domain_.empty()) return false;
        it = open.erase(it);
      } else {
        ++it;
      }
    }
    std::vector<bool> done(conjuncts.size(), false);
    return join(conjuncts, done, open, env);
  }

  bool join(const std::vector<FOQuery>& conjuncts, std::vector<bool>& done, std::set<std::string>& open,
            std::map<std::string, std::string>& env) {
    auto is_open = [&](const std::string& v) { return open.count(v) > 0; };
    // Evaluate every pending conjunct whose variables are all bound.
    std::vector<std::size_t> checked;
    bool ok = true;
    for (std::size_t i = 0; i < conjuncts.size() && ok; ++i) {
      if (done[i]) continue;
      const auto& fv = free_vars(conjuncts[i]);
      if (std::none_of(fv.begin(), fv.end(), is_open)) {
        done[i] = true;
        checked.push_back(i);
        ok = eval(conjuncts[i], env);
      }
    }
    bool result = false;
    if (ok) result = open.empty() ? true : bind_next(conjuncts, done, open, env);
    for (auto i : checked) done[i] = false;
    return result;
  }

  bool bind_next(const std::vector<FOQuery>& conjuncts, std::vector<bool>& done, std::set<std::string>& open,
                 std::map<std::string, std::string>& env) {
    // Prefer an equality that pins an open variable, then the positive atom
    // with the most bound arguments, then a domain scan.
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
      if (done[i] || conjuncts[i].kind() != FOQuery::Kind::Equals) continue;
      const auto& args = conjuncts[i].atom_value().args;
      for (int side = 0; side < 2; ++side) {
        const Term& v = args[side];
        const Term& other = args[1 - side];
        if (!v.is_variable() || !open.count(v.name)) continue;
        if (other.is_variable() && open.count(other.name)) continue;
        std::string val = value(other, env);
        if (!domain_set_.count(val)) return false;  // active domain only
        return with_binding(v.name, val, conjuncts, done, open, env);
      }
    }
    std::optional<std::size_t> best;
    int best_bound = -1;
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
      if (done[i] || conjuncts[i].kind() != FOQuery::Kind::Atom) continue;
      int bound = 0;
      for (const auto& t : conjuncts[i].atom_value().args)
        if (t.is_constant() || !open.count(t.name)) ++bound;
      if (bound > best_bound) {
        best_bound = bound;
        best = i;
      }
    }
    if (best) {
      const Atom& pattern = conjuncts[*best].atom_value();
      const std::string pk = pred_key(pattern);
      const std::vector<const Atom*>* candidates = nullptr;
      static const std::vector<const Atom*> none;
      for (std::size_t pos = 0; pos < pattern.arity() && !candidates; ++pos) {
        const Term& t = pattern.args[pos];
        if (t.is_variable() && open.count(t.name)) continue;
        auto it = by_arg_.find(arg_key(pk, pos, value(t, env)));
        candidates = it == by_arg_.end() ? &none : &it->second;
      }
      if (!candidates) {
        auto it = by_pred_.find(pk);
        candidates = it == by_pred_.end() ? &none : &it->second;
      }
      done[*best] = true;
      bool found = false;
      for (const Atom* fact : *candidates) {
        std::vector<std::string> bound_here;
        bool match = true;
        for (std::size_t pos = 0; pos < pattern.arity() && match; ++pos) {
          const Term& t = pattern.args[pos];
          const std::string& f = fact->args[pos].name;
          if (t.is_variable() && open.count(t.name)) {
            env[t.name] = f;
            open.erase(t.name);
            bound_here.push_back(t.name);
          } else {
            match = value(t, env) == f;
          }
        }
        if (match) found = join(conjuncts, done, open, env);
        for (const auto& v : bound_here) {
          env.erase(v);
          open.insert(v);
        }
        if (found) break;
      }
      done[*best] = false;
      return found;
    }
    const std::string v = *open.begin();
    for (const auto& c : domain_)
      if (with_binding(v, c, conjuncts, done, open, env)) return true;
    return false;
  }

  bool with_binding(const std::string& var, const std::string& val, const std::vector<FOQuery>& conjuncts,
                    std::vector<bool>& done, std::set<std::string>& open, std::map<std::string, std::string>& env) {
    env[var] = val;
    open.erase(var);
    bool r = join(conjuncts, done, open, env);
    open.insert(var);
    env.erase(var);
    return r;
  }

  std::unordered_set<std::string> facts_;
  std::unordered_map<std::string, std::vector<const Atom*>> by_pred_;
  std::unordered_map<std::string, std::vector<const Atom*>> by_arg_;
  std::vector<std::string> domain_;
  std::unordered_set<std::string> domain_set_;
  std::unordered_map<const void*, std::set<std::string>> free_cache_;
};

}  // namespace detail

/// Truth of an FO sentence in the finite structure of the ABox, quantifiers
/// ranging over the constants that occur in it.
inline bool eval_fo(const FOQuery& q, const ABox& abox) {
  if (auto fv = q.free_variables(); !fv.empty())
    throw InvalidInput("FO query is not a sentence: " + *fv.begin() + " is unbound");
  detail::FOEvaluator ev(abox);
  std::map<std::string, std::string> env;
  return ev.eval(q, env);
}

// ---------------------------------------------------------------------------
// Fresh variables

/// Generates V_v1, V_v2, ...; user identifiers cannot contain "_v<digit>".
class FreshNames {
 public:
  explicit FreshNames(std::size_t start = 0) : next_(start) {}

  /// Starts numbering after the largest reserved suffix already used in q.
  static FreshNames after(const FOQuery& q) {
    std::size_t max = 0;
    scan(q, max);
    return FreshNames(max);
  }

  Term next() { return Term::variable("V_v" + std::to_string(++next_)); }

  /// Renames every variable of q apart.
  ConjunctiveQuery rename_apart(const ConjunctiveQuery& q, std::vector<std::string>* vars = nullptr) {
    Binding b;
    for (const auto& v : q.variables()) {
      Term t = next();
      if (vars) vars->push_back(t.name);
      b.emplace(v, t);
    }
    return substitute(q, b);
  }

 private:
  static void note(const std::string& name, std::size_t& max) {
    auto pos = name.rfind("_v");
    if (pos == std::string::npos || pos + 2 >= name.size()) return;
    std::size_t n = 0;
    for (std::size_t i = pos + 2; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return;
      n = n * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    max = std::max(max, n);
  }
  static void scan(const FOQuery& q, std::size_t& max) {
    if (q.kind() == FOQuery::Kind::Atom || q.kind() == FOQuery::Kind::Equals)
      for (const auto& t : q.atom_value().args) note(t.name, max);
    if (q.kind() == FOQuery::Kind::Exists) note(q.variable(), max);
    for (const auto& c : q.children()) scan(c, max);
  }

  std::size_t next_;
};

// ---------------------------------------------------------------------------
// atomRewr

namespace detail {

inline Signature fo_signature(const FOQuery& q, Signature sig = {}) {
  if (q.kind() == FOQuery::Kind::Atom) sig.declare(q.atom_value().predicate, q.atom_value().arity());
  for (const auto& c : q.children()) sig = fo_signature(c, std::move(sig));
  return sig;
}

inline FOQuery atom_rewr_rec(const FOQuery& q, const InclusionClosure& cl, FreshNames& fresh) {
  using K = FOQuery::Kind;
  switch (q.kind()) {
    case K::Equals: return q;
    case K::Atom: {
      const Atom& a = q.atom_value();
      std::vector<FOQuery> disjuncts{fo::atom(a)};
      if (a.is_concept()) {
        const BasicConcept self = BasicConcept::atomic(a.predicate);
        for (const auto& b : cl.subsumees(self)) {
          if (b == self) continue;
          if (b.is_atomic()) {
            disjuncts.push_back(fo::atom(Atom::unary(b.name, a.args[0])));
          } else {
            Term x = fresh.next();
            disjuncts.push_back(fo::exists(x.name, fo::atom(concept_atom(b, a.args[0], x))));
          }
        }
      } else {
        const RoleExpr self = RoleExpr::direct(a.predicate);
        for (const auto& r : cl.subsumees(self))
          if (r != self) disjuncts.push_back(fo::atom(role_atom(r, a.args[0], a.args[1])));
      }
      return fo::disj(std::move(disjuncts));
    }
    case K::Not: return fo::negate(atom_rewr_rec(q.child(), cl, fresh));
    case K::Exists: return FOQuery::exists(q.variable(), atom_rewr_rec(q.child(), cl, fresh));
    case K::And:
    case K::Or: {
      std::vector<FOQuery> parts;
      for (const auto& c : q.children()) parts.push_back(atom_rewr_rec(c, cl, fresh));
      return q.kind() == K::And ? fo::conj(std::move(parts)) : fo::disj(std::move(parts));
    }
  }
  return q;
}

}  // namespace detail

/// Replaces every atom by the disjunction of its causes under the positive
/// inclusions, so that evaluating the result over A equals evaluating q
/// over cl_GA(A).
inline FOQuery atom_rewr(const FOQuery& q, const TBox& tbox) {
  InclusionClosure cl = saturate_tbox(tbox, detail::fo_signature(q));
  FreshNames fresh = FreshNames::after(q);
  return detail::atom_rewr_rec(q, cl, fresh);
}

// ---------------------------------------------------------------------------
// IAR / QIB reformulation

/// Sizes recorded while building a QIB reformulation.
struct RewritingReport {
  ConjunctiveQuery query;
  std::size_t perfect_ref_size = 0;
  std::size_t denial_rewritings = 0;
  std::size_t guard_count = 0;
  std::size_t output_size = 0;
};

namespace detail {

using TermPairs = std::vector<std::pair<Term, Term>>;

/// Maps pattern atoms onto target atoms position by position. Pattern
/// variables are substituted; clashes between target terms become
/// equalities. Returns nullopt when two distinct constants would have to
/// be equal.
inline std::optional<std::pair<Binding, TermPairs>> match_onto(const std::vector<Atom>& pattern,
                                                              const std::vector<const Atom*>& targets) {
  Binding sub;
  TermPairs eqs;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Atom& p = pattern[i];
    const Atom& t = *targets[i];
    if (p.predicate != t.predicate || p.arity() != t.arity()) return std::nullopt;
    for (std::size_t k = 0; k < p.arity(); ++k) {
      Term lhs = p.args[k];
      if (lhs.is_variable()) {
        auto it = sub.find(lhs.name);
        if (it == sub.end()) {
          sub.emplace(lhs.name, t.args[k]);
          continue;
        }
        lhs = it->second;
      }
      const Term& rhs = t.args[k];
      if (lhs == rhs) continue;
      if (lhs.is_constant() && rhs.is_constant()) return std::nullopt;
      eqs.emplace_back(lhs, rhs);
    }
  }
  return std::make_pair(std::move(sub), std::move(eqs));
}

inline FOQuery equalities(const TermPairs& eqs) {
  std::vector<FOQuery> parts;
  for (const auto& [a, b] : eqs) parts.push_back(fo::equals(a, b));
  return fo::conj(std::move(parts));
}

/// γ and α denote the same ground atom.
inline FOQuery same_atom(const Atom& gamma, const Atom& alpha) {
  if (gamma.predicate != alpha.predicate || gamma.arity() != alpha.arity()) return FOQuery::falsity();
  std::vector<FOQuery> parts;
  for (std::size_t i = 0; i < gamma.arity(); ++i) parts.push_back(fo::equals(gamma.args[i], alpha.args[i]));
  return fo::conj(std::move(parts));
}

class IarRewriter {
 public:
  IarRewriter(const Reasoner& reasoner, std::vector<ConjunctiveQuery> denial_queries)
      : reasoner_(reasoner), denials_(std::move(denial_queries)) {}

  FOQuery rewrite(const ConjunctiveQuery& q, RewritingReport* report) {
    auto ucq = prune_subsumed(reasoner_.perfect_ref(q));
    std::vector<FOQuery> disjuncts;
    for (const auto& member : ucq) {
      std::vector<std::string> vars;
      ConjunctiveQuery renamed = fresh_.rename_apart(member, &vars);
      std::vector<FOQuery> parts;
      for (const auto& alpha : renamed.atoms) {
        parts.push_back(fo::atom(alpha));
        FOQuery conflict = in_some_secret(alpha);
        if (!conflict.is_false()) ++guards_;
        parts.push_back(fo::negate(std::move(conflict)));
      }
      disjuncts.push_back(fo::exists(vars, fo::conj(std::move(parts))));
    }
    FOQuery out = fo::disj(std::move(disjuncts));
    if (report) {
      report->query = q;
      report->perfect_ref_size = ucq.size();
      report->denial_rewritings = denials_.size();
      report->guard_count = guards_;
    }
    return out;
  }

 private:
  // α lies in a minimal conflict iff it lies in the image S of some
  // rewritten denial body such that S \ {α} is conflict-free.
  FOQuery in_some_secret(const Atom& alpha) {
    std::vector<FOQuery> cases;
    for (const auto& body : denials_) {
      for (std::size_t pos = 0; pos < body.atoms.size(); ++pos) {
        std::vector<std::string> vars;
        ConjunctiveQuery b = fresh_.rename_apart(body, &vars);
        auto m = match_onto({b.atoms[pos]}, {&alpha});
        if (!m) continue;
        auto& [sub, eqs] = *m;
        std::vector<Atom> image;
        for (std::size_t i = 0; i < b.atoms.size(); ++i) image.push_back(i == pos ? alpha : instantiate(sub, b.atoms[i]));
        std::vector<std::string> remaining;
        for (const auto& v : vars)
          if (!sub.count(v)) remaining.push_back(v);
        std::vector<FOQuery> parts{equalities(eqs)};
        for (std::size_t i = 0; i < image.size(); ++i)
          if (i != pos) parts.push_back(fo::atom(image[i]));
        parts.push_back(fo::negate(conflict_without(image, alpha)));
        cases.push_back(fo::exists(remaining, fo::conj(std::move(parts))));
      }
    }
    return fo::disj(std::move(cases));
  }

  // Some rewritten denial body maps into the atoms of `image` other than α.
  FOQuery conflict_without(const std::vector<Atom>& image, const Atom& alpha) {
    std::vector<FOQuery> cases;
    for (const auto& body : denials_) {
      ConjunctiveQuery b = fresh_.rename_apart(body);
      std::vector<const Atom*> targets(b.atoms.size());
      enumerate_targets(b.atoms, image, alpha, 0, targets, cases);
    }
    return fo::disj(std::move(cases));
  }

  void enumerate_targets(const std::vector<Atom>& pattern, const std::vector<Atom>& image, const Atom& alpha,
                         std::size_t i, std::vector<const Atom*>& targets, std::vector<FOQuery>& cases) {
    if (i == pattern.size()) {
      auto m = match_onto(pattern, targets);
      if (!m) return;
      std::vector<FOQuery> parts{equalities(m->second)};
      std::set<const Atom*> used(targets.begin(), targets.end());
      for (const Atom* g : used) parts.push_back(fo::negate(same_atom(*g, alpha)));
      cases.push_back(fo::conj(std::move(parts)));
      return;
    }
    for (const Atom& g : image) {
      if (g.predicate != pattern[i].predicate || g.arity() != pattern[i].arity()) continue;
      targets[i] = &g;
      enumerate_targets(pattern, image, alpha, i + 1, targets, cases);
    }
  }

  const Reasoner& reasoner_;
  std::vector<ConjunctiveQuery> denials_;
  FreshNames fresh_;
  std::size_t guards_ = 0;
};

inline Signature rewriting_signature(const ConjunctiveQuery& q, const Policy& policy) {
  Signature sig;
  for (const auto& a : q.atoms) sig.declare(a.predicate, a.arity());
  for (const auto& d : policy.denials)
    for (const auto& a : d.body) sig.declare(a.predicate, a.arity());
  return sig;
}

inline std::vector<ConjunctiveQuery> rewritten_denials(const Reasoner& r, const Policy& policy) {
  std::vector<ConjunctiveQuery> out;
  for (const auto& d : policy.denials)
    for (const auto& q : r.perfect_ref(d.as_query())) out.push_back(minimize_cq(q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return prune_subsumed(std::move(out));
}

}  // namespace detail

/// FO sentence that holds in a T-consistent ABox exactly when q is entailed
/// by T together with the IAR repair of (T ∪ P, ABox).
inline FOQuery iar_rewrite(const ConjunctiveQuery& q, const TBox& tbox, const Policy& policy,
                           RewritingReport* report = nullptr) {
  Reasoner r(tbox, detail::rewriting_signature(q, policy));
  detail::IarRewriter rw(r, detail::rewritten_denials(r, policy));
  return rw.rewrite(q, report);
}

/// atomRewr of the IAR reformulation: evaluated directly over A it decides
/// QIB-entailment of q.
inline FOQuery qib_rewrite(const ConjunctiveQuery& q, const TBox& tbox, const Policy& policy,
                           RewritingReport* report = nullptr) {
  FOQuery out = atom_rewr(iar_rewrite(q, tbox, policy, report), tbox);
  if (report) report->output_size = out.size();
  return out;
}

}  // namespace cqe
