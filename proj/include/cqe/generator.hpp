#pragma once

// Seeded random instances for property suites and the `gen` command.
// Only mt19937_64 (whose output sequence is fixed by the standard) and
// modular reduction are used, so a seed yields the same instance everywhere.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cqe/model.hpp"
#include "cqe/reasoner.hpp"

namespace cqe {

struct GenBounds {
  std::size_t concepts = 4;
  std::size_t roles = 2;
  std::size_t constants = 3;
  std::size_t abox_atoms = 6;
  std::size_t axioms = 4;
  std::size_t denials = 2;
  std::size_t max_denial_atoms = 2;
  std::size_t max_query_atoms = 3;
  /// Percentage of TBox axioms that are disjointnesses.
  unsigned negative_percent = 15;
};

struct Instance {
  TBox tbox;
  Policy policy;
  ABox abox;
};

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, GenBounds bounds = {}) : rng_(seed), bounds_(bounds) {
    for (std::size_t i = 0; i < bounds_.concepts; ++i) concepts_.push_back(std::string(1, char('A' + i)));
    static const char* role_names[] = {"P", "R", "S", "U", "W", "Q"};
    for (std::size_t i = 0; i < bounds_.roles; ++i) roles_.push_back(role_names[i % 6] + suffix(i / 6));
    for (std::size_t i = 0; i < bounds_.constants; ++i) constants_.push_back(std::string(1, char('a' + i)));
  }

  std::size_t pick(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool chance(unsigned percent) { return rng_() % 100 < percent; }

  /// A triple with T ∪ A consistent. Retries (bounded) until one is found;
  /// falls back to an empty ABox, which is always consistent.
  Instance instance() {
    Instance inst;
    inst.tbox = tbox();
    Reasoner r(inst.tbox, signature());
    for (int attempt = 0; attempt < 50; ++attempt) {
      ABox a = abox();
      if (r.is_consistent(a)) {
        inst.abox = std::move(a);
        break;
      }
    }
    inst.policy = policy();
    return inst;
  }

  TBox tbox() {
    TBox t(std::vector<TBoxAxiom>{}, signature());
    for (std::size_t i = 0; i < bounds_.axioms; ++i) {
      const bool negative = chance(bounds_.negative_percent);
      if (!roles_.empty() && chance(20)) {
        t.add(RoleInclusion{role_expr(), role_expr(), negative});
      } else {
        t.add(ConceptInclusion{basic(), negative ? basic() : rhs_basic(), negative});
      }
    }
    return t;
  }

  ABox abox() {
    ABox a;
    for (std::size_t i = 0; i < bounds_.abox_atoms; ++i) a.insert(ground_atom());
    return a;
  }

  Policy policy() {
    std::vector<Denial> ds;
    for (std::size_t i = 0; i < bounds_.denials; ++i)
      ds.emplace_back(body(1 + pick(bounds_.max_denial_atoms), /*constant_percent=*/5));
    return Policy(std::move(ds));
  }

  ConjunctiveQuery query() { return ConjunctiveQuery(body(1 + pick(bounds_.max_query_atoms), 20)); }

  Atom ground_atom() {
    if (roles_.empty() || (!concepts_.empty() && chance(50)))
      return Atom::unary(concepts_[pick(concepts_.size())], constant());
    return Atom::binary(roles_[pick(roles_.size())], constant(), constant());
  }

  Term constant() { return Term::constant(constants_[pick(constants_.size())]); }

  Signature signature() const {
    Signature s;
    for (const auto& c : concepts_) s.declare(c, 1);
    for (const auto& r : roles_) s.declare(r, 2);
    return s;
  }

  const std::vector<std::string>& concept_names() const { return concepts_; }
  const std::vector<std::string>& role_names() const { return roles_; }
  const std::vector<std::string>& constant_names() const { return constants_; }
  std::mt19937_64& engine() { return rng_; }

 private:
  static std::string suffix(std::size_t k) { return k == 0 ? "" : std::to_string(k); }

  RoleExpr role_expr() { return {roles_[pick(roles_.size())], chance(30)}; }

  BasicConcept basic() {
    if (roles_.empty() || chance(60)) return BasicConcept::atomic(concepts_[pick(concepts_.size())]);
    return BasicConcept::exists(role_expr());
  }

  // Right-hand sides lean towards atomic concepts so that closures grow.
  BasicConcept rhs_basic() {
    if (roles_.empty() || chance(75)) return BasicConcept::atomic(concepts_[pick(concepts_.size())]);
    return BasicConcept::exists(role_expr());
  }

  // Conjunctions over X, Y, Z that stay connected most of the time.
  std::vector<Atom> body(std::size_t n, unsigned constant_percent) {
    static const char* vars[] = {"X", "Y", "Z"};
    auto term = [&] {
      if (chance(constant_percent)) return constant();
      return Term::variable(vars[pick(3)]);
    };
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < n; ++i) {
      if (roles_.empty() || (!concepts_.empty() && chance(50)))
        atoms.push_back(Atom::unary(concepts_[pick(concepts_.size())], term()));
      else
        atoms.push_back(Atom::binary(roles_[pick(roles_.size())], term(), term()));
    }
    return atoms;
  }

  std::mt19937_64 rng_;
  GenBounds bounds_;
  std::vector<std::string> concepts_;
  std::vector<std::string> roles_;
  std::vector<std::string> constants_;
};

}  // namespace cqe
