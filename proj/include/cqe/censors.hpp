#pragma once

// Censors over DL-Lite_R with denial policies: the greedy optimal GA censor,
// enumeration of all optimal GA censors, skeptical IB-entailment, secrets,
// the IAR repair of the closure and QIB-entailment with its brute-force
// counterpart.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cqe/model.hpp"
#include "cqe/reasoner.hpp"

namespace cqe {

inline constexpr std::size_t kDefaultSizeGuard = 24;

/// Iteration order over cl_GA(A): the canonical atom order, or an explicit
/// permutation of the closure.
struct AtomOrder {
  std::optional<std::vector<Atom>> permutation;

  static AtomOrder lex() { return {}; }
  static AtomOrder explicit_order(std::vector<Atom> atoms) { return {std::move(atoms)}; }
  bool is_lex() const { return !permutation.has_value(); }
};

/// T, P and A with everything the censor operations share: the saturated
/// TBox, cl_GA(A) and the rewritten denial bodies.
class CensorContext {
 public:
  CensorContext(const TBox& tbox, const Policy& policy, const ABox& abox)
      : reasoner_(tbox, merged_signature(policy, abox)), policy_(policy) {
    reasoner_.require_consistent(abox);
    closure_ = reasoner_.closure_unchecked(abox);
    for (const auto& d : policy_.denials)
      for (const auto& q : reasoner_.perfect_ref(d.as_query())) denial_queries_.push_back(minimize_cq(q));
    std::sort(denial_queries_.begin(), denial_queries_.end());
    denial_queries_.erase(std::unique(denial_queries_.begin(), denial_queries_.end()), denial_queries_.end());
    denial_queries_ = prune_subsumed(std::move(denial_queries_));
    // T ∪ P alone is always consistent in DL-Lite_R (the empty ABox has an
    // empty canonical model), so no load-time policy check can fail here.
  }

  const Reasoner& reasoner() const { return reasoner_; }
  const Policy& policy() const { return policy_; }
  const ABox& closure() const { return closure_; }
  /// Minimized rewritings of every denial body; a subset of cl_GA(A) is
  /// inconsistent with T ∪ P iff one of them maps into it.
  const std::vector<ConjunctiveQuery>& denial_queries() const { return denial_queries_; }

  /// T ∪ P ∪ S is consistent.
  bool consistent(const ABox& s) const {
    AtomIndex index(s.atoms());
    if (!reasoner_.is_consistent(index)) return false;
    return std::none_of(denial_queries_.begin(), denial_queries_.end(),
                        [&](const ConjunctiveQuery& q) { return eval_cq(q, index); });
  }

  void check_guard(std::size_t limit) const {
    if (closure_.size() > limit) throw SizeGuardExceeded(closure_.size(), limit);
  }

  // Greedy censor: scan the closure in order and keep every atom that leaves
  // the kept set consistent with T ∪ P.
  ABox opt_ga_censor(const AtomOrder& order = AtomOrder::lex()) const {
    std::vector<Atom> sequence;
    if (order.is_lex()) {
      sequence = closure_.to_vector();
    } else {
      sequence = *order.permutation;
      std::vector<Atom> sorted = sequence;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted != closure_.to_vector())
        throw InvalidInput("atom order is not a permutation of the ABox closure");
    }
    ABox kept;
    for (const Atom& alpha : sequence) {
      ABox candidate = kept;
      candidate.insert(alpha);
      if (consistent(candidate)) kept = std::move(candidate);
    }
    return kept;
  }

  /// All maximal subsets of cl_GA(A) consistent with T ∪ P.
  std::set<ABox> enumerate_optimal(std::size_t limit = kDefaultSizeGuard) const {
    check_guard(limit);
    const std::vector<Atom> atoms = closure_.to_vector();
    std::set<ABox> out;
    ABox current;
    std::vector<std::size_t> excluded;
    enumerate_rec(atoms, 0, current, excluded, out);
    return out;
  }

  bool ib_entails(const ConjunctiveQuery& q, std::size_t limit = kDefaultSizeGuard) const {
    for (const auto& censor : enumerate_optimal(limit))
      if (!reasoner_.entails_unchecked(AtomIndex(censor.atoms()), q)) return false;
    return true;
  }

  /// Minimal subsets of cl_GA(A) inconsistent with T ∪ P, read off the
  /// homomorphic images of the rewritten denial bodies.
  SecretSet secrets() const {
    std::set<ABox> images;
    AtomIndex index(closure_.atoms());
    for (const auto& q : denial_queries_)
      for_each_homomorphism(q.atoms, index, [&](const Binding& b) {
        ABox image;
        for (const auto& a : q.atoms) image.insert(instantiate(b, a));
        images.insert(std::move(image));
        return true;
      });
    SecretSet out;
    for (const auto& s : images) {
      bool has_smaller = std::any_of(images.begin(), images.end(), [&](const ABox& o) {
        return o.size() < s.size() && o.is_subset_of(s);
      });
      if (has_smaller) continue;
      if (!is_minimal_inconsistent(s)) continue;
      out.secrets.insert(s);
    }
    return out;
  }

  /// cl_GA(A) minus every atom that occurs in a secret.
  ABox iar_repair() const {
    ABox repair = closure_;
    for (const auto& s : secrets().secrets)
      for (const auto& a : s) repair.erase(a);
    return repair;
  }

  bool qib_entails(const ConjunctiveQuery& q) const {
    return reasoner_.entails_unchecked(AtomIndex(iar_repair().atoms()), q);
  }

  /// Subset enumeration over cl_GA(A): some A' ⊆ cl_GA(A) entails q and is
  /// disjoint from every secret, where secrets are found by testing every
  /// subset for consistency.
  bool qib_entails_bruteforce(const ConjunctiveQuery& q, std::size_t limit = kDefaultSizeGuard) const {
    check_guard(limit);
    const std::vector<Atom> atoms = closure_.to_vector();
    const std::size_t n = atoms.size();
    const std::uint64_t full = std::uint64_t{1} << n;
    auto subset = [&](std::uint64_t mask) {
      ABox s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.insert(atoms[i]);
      return s;
    };
    std::vector<bool> ok(full);
    for (std::uint64_t m = 0; m < full; ++m) ok[m] = consistent(subset(m));
    std::uint64_t in_secret = 0;
    for (std::uint64_t m = 0; m < full; ++m) {
      if (ok[m]) continue;
      bool minimal = true;
      for (std::size_t i = 0; i < n && minimal; ++i)
        if ((m >> i & 1) && !ok[m & ~(std::uint64_t{1} << i)]) minimal = false;
      if (minimal) in_secret |= m;
    }
    for (std::uint64_t m = 0; m < full; ++m) {
      if (m & in_secret) continue;
      if (reasoner_.entails_unchecked(AtomIndex(subset(m).atoms()), q)) return true;
    }
    return false;
  }

 private:
  static Signature merged_signature(const Policy& policy, const ABox& abox) {
    Signature sig = abox.signature();
    for (const auto& d : policy.denials)
      for (const auto& a : d.body) sig.declare(a.predicate, a.arity());
    return sig;
  }

  bool is_minimal_inconsistent(const ABox& s) const {
    if (consistent(s)) return false;
    for (const auto& a : s) {
      ABox smaller = s;
      smaller.erase(a);
      if (!consistent(smaller)) return false;
    }
    return true;
  }

  void enumerate_rec(const std::vector<Atom>& atoms, std::size_t i, ABox& current,
                     std::vector<std::size_t>& excluded, std::set<ABox>& out) const {
    if (i == atoms.size()) {
      for (std::size_t e : excluded) {
        ABox extended = current;
        extended.insert(atoms[e]);
        if (consistent(extended)) return;  // not maximal
      }
      out.insert(current);
      return;
    }
    current.insert(atoms[i]);
    if (consistent(current)) enumerate_rec(atoms, i + 1, current, excluded, out);
    current.erase(atoms[i]);
    excluded.push_back(i);
    enumerate_rec(atoms, i + 1, current, excluded, out);
    excluded.pop_back();
  }

  Reasoner reasoner_;
  Policy policy_;
  ABox closure_;
  std::vector<ConjunctiveQuery> denial_queries_;
};

// ---------------------------------------------------------------------------
// Free-function interface

inline ABox opt_ga_censor(const TBox& tbox, const Policy& policy, const ABox& abox,
                          const AtomOrder& order = AtomOrder::lex()) {
  return CensorContext(tbox, policy, abox).opt_ga_censor(order);
}

inline std::set<ABox> enumerate_optimal_ga_censors(const TBox& tbox, const Policy& policy, const ABox& abox,
                                                   std::size_t limit = kDefaultSizeGuard) {
  return CensorContext(tbox, policy, abox).enumerate_optimal(limit);
}

/// q ∈ cl_CQ(representative) under the TBox.
inline bool censor_entails(const TBox& tbox, const CensorTheory& theory, const ConjunctiveQuery& q) {
  return cq_entailed(tbox, theory.representative, q);
}

inline bool ib_entail(const TBox& tbox, const Policy& policy, const ABox& abox, const ConjunctiveQuery& q,
                      std::size_t limit = kDefaultSizeGuard) {
  return CensorContext(tbox, policy, abox).ib_entails(q, limit);
}

inline SecretSet secrets(const TBox& tbox, const Policy& policy, const ABox& abox) {
  return CensorContext(tbox, policy, abox).secrets();
}

inline ABox iar_repair(const TBox& tbox, const Policy& policy, const ABox& abox) {
  return CensorContext(tbox, policy, abox).iar_repair();
}

inline bool qib_entail(const TBox& tbox, const Policy& policy, const ABox& abox, const ConjunctiveQuery& q) {
  return CensorContext(tbox, policy, abox).qib_entails(q);
}

inline bool qib_entail_bruteforce(const TBox& tbox, const Policy& policy, const ABox& abox,
                                  const ConjunctiveQuery& q, std::size_t limit = kDefaultSizeGuard) {
  return CensorContext(tbox, policy, abox).qib_entails_bruteforce(q, limit);
}

}  // namespace cqe
