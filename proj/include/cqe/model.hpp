#pragma once

// Shared vocabulary: terms, atoms, TBox axioms, ABoxes, policies and
// Boolean conjunctive queries. All types are plain values; containers that
// have set semantics are kept sorted and duplicate-free so that structural
// equality coincides with set equality.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cqe {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T ∪ A has no model, or an operation's consistency precondition failed.
class InconsistentOntology : public Error {
 public:
  using Error::Error;
};

/// An exponential procedure was asked to run on an input above its guard.
class SizeGuardExceeded : public Error {
 public:
  SizeGuardExceeded(std::size_t size, std::size_t limit)
      : Error("closure has " + std::to_string(size) + " atoms, size guard is " +
              std::to_string(limit)),
        size_(size),
        limit_(limit) {}
  std::size_t size() const { return size_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

/// Malformed value handed to an operation (wrong arity, non-ground ABox atom, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Terms and atoms

enum class TermKind { Constant, Variable };

struct Term {
  TermKind kind = TermKind::Constant;
  std::string name;

  static Term constant(std::string n) { return {TermKind::Constant, std::move(n)}; }
  static Term variable(std::string n) { return {TermKind::Variable, std::move(n)}; }

  bool is_variable() const { return kind == TermKind::Variable; }
  bool is_constant() const { return kind == TermKind::Constant; }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.name.compare(b.name); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.kind <=> b.kind;
  }
};

/// Concept atoms have one argument, role atoms two.
struct Atom {
  std::string predicate;
  std::vector<Term> args;

  Atom() = default;
  Atom(std::string pred, std::vector<Term> a) : predicate(std::move(pred)), args(std::move(a)) {}

  static Atom unary(std::string pred, Term t) { return Atom(std::move(pred), {std::move(t)}); }
  static Atom binary(std::string pred, Term s, Term t) {
    return Atom(std::move(pred), {std::move(s), std::move(t)});
  }

  std::size_t arity() const { return args.size(); }
  bool is_concept() const { return args.size() == 1; }
  bool is_role() const { return args.size() == 2; }
  bool is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
  }

  friend bool operator==(const Atom&, const Atom&) = default;

  // Global canonical order: predicate bytewise, concepts before roles of the
  // same name, then arguments bytewise. Algorithm-1 "lexicographic" order.
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.predicate.compare(b.predicate); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
};

template <class Range>
std::set<std::string> variables_of(const Range& atoms) {
  std::set<std::string> out;
  for (const Atom& a : atoms)
    for (const Term& t : a.args)
      if (t.is_variable()) out.insert(t.name);
  return out;
}

template <class Range>
std::set<std::string> constants_of(const Range& atoms) {
  std::set<std::string> out;
  for (const Atom& a : atoms)
    for (const Term& t : a.args)
      if (t.is_constant()) out.insert(t.name);
  return out;
}

// ---------------------------------------------------------------------------
// TBox vocabulary

/// A role name or its inverse.
struct RoleExpr {
  std::string name;
  bool inverse = false;

  static RoleExpr direct(std::string n) { return {std::move(n), false}; }
  static RoleExpr inverse_of(std::string n) { return {std::move(n), true}; }
  RoleExpr inverted() const { return {name, !inverse}; }

  friend bool operator==(const RoleExpr&, const RoleExpr&) = default;
  friend auto operator<=>(const RoleExpr&, const RoleExpr&) = default;
};

/// A, ∃R or ∃R⁻.
struct BasicConcept {
  enum class Kind { Atomic, Exists, ExistsInverse };
  Kind kind = Kind::Atomic;
  std::string name;

  static BasicConcept atomic(std::string n) { return {Kind::Atomic, std::move(n)}; }
  static BasicConcept exists(std::string role) { return {Kind::Exists, std::move(role)}; }
  static BasicConcept exists_inverse(std::string role) { return {Kind::ExistsInverse, std::move(role)}; }
  static BasicConcept exists(const RoleExpr& r) {
    return r.inverse ? exists_inverse(r.name) : exists(r.name);
  }

  bool is_atomic() const { return kind == Kind::Atomic; }
  /// The role expression R of ∃R; only meaningful for non-atomic concepts.
  RoleExpr role() const { return {name, kind == Kind::ExistsInverse}; }

  friend bool operator==(const BasicConcept&, const BasicConcept&) = default;
  friend std::strong_ordering operator<=>(const BasicConcept& a, const BasicConcept& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    auto c = a.name.compare(b.name);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

/// B1 ⊑ B2, or B1 ⊑ ¬B2 when negated.
struct ConceptInclusion {
  BasicConcept lhs;
  BasicConcept rhs;
  bool negated = false;
  friend bool operator==(const ConceptInclusion&, const ConceptInclusion&) = default;
  friend auto operator<=>(const ConceptInclusion&, const ConceptInclusion&) = default;
};

/// R1 ⊑ R2, or R1 ⊑ ¬R2 when negated.
struct RoleInclusion {
  RoleExpr lhs;
  RoleExpr rhs;
  bool negated = false;
  friend bool operator==(const RoleInclusion&, const RoleInclusion&) = default;
  friend auto operator<=>(const RoleInclusion&, const RoleInclusion&) = default;
};

using TBoxAxiom = std::variant<ConceptInclusion, RoleInclusion>;

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;

  friend bool operator==(const Signature&, const Signature&) = default;

  /// Registers a name with the given arity; throws on a concept/role clash.
  void declare(const std::string& name, std::size_t arity) {
    if (arity == 1) {
      if (roles.count(name)) throw InvalidInput("'" + name + "' is used both as a role and as a concept");
      concepts.insert(name);
    } else if (arity == 2) {
      if (concepts.count(name)) throw InvalidInput("'" + name + "' is used both as a concept and as a role");
      roles.insert(name);
    } else {
      throw InvalidInput("'" + name + "' has arity " + std::to_string(arity) + "; only 1 and 2 are allowed");
    }
  }

  void merge(const Signature& other) {
    for (const auto& c : other.concepts) declare(c, 1);
    for (const auto& r : other.roles) declare(r, 2);
  }
};

struct TBox {
  std::vector<TBoxAxiom> axioms;  // canonical: sorted, unique
  Signature signature;

  TBox() = default;
  explicit TBox(std::vector<TBoxAxiom> ax, Signature extra = {}) : signature(std::move(extra)) {
    for (auto& a : ax) add(std::move(a));
  }

  void add(TBoxAxiom ax) {
    std::visit([this](const auto& a) { register_names(a); }, ax);
    auto it = std::lower_bound(axioms.begin(), axioms.end(), ax);
    if (it == axioms.end() || *it != ax) axioms.insert(it, std::move(ax));
  }

  bool empty() const { return axioms.empty(); }

  friend bool operator==(const TBox&, const TBox&) = default;

 private:
  void register_concept(const BasicConcept& b) { signature.declare(b.name, b.is_atomic() ? 1 : 2); }
  void register_names(const ConceptInclusion& ci) {
    register_concept(ci.lhs);
    register_concept(ci.rhs);
  }
  void register_names(const RoleInclusion& ri) {
    signature.declare(ri.lhs.name, 2);
    signature.declare(ri.rhs.name, 2);
  }
};

/// Sorts and deduplicates axioms. TBox keeps this form already; the function
/// exists for values assembled by hand.
inline TBox normalize(const TBox& tbox) {
  TBox out;
  out.signature = tbox.signature;
  for (const auto& ax : tbox.axioms) out.add(ax);
  return out;
}

// ---------------------------------------------------------------------------
// ABoxes

/// Finite set of ground atoms, iterated in canonical order.
class ABox {
 public:
  using const_iterator = std::set<Atom>::const_iterator;

  ABox() = default;
  ABox(std::initializer_list<Atom> atoms) {
    for (const auto& a : atoms) insert(a);
  }
  template <class It>
  ABox(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }

  bool insert(const Atom& a) {
    if (!a.is_ground()) throw InvalidInput("ABox atom " + a.predicate + "(...) is not ground");
    if (a.arity() != 1 && a.arity() != 2) throw InvalidInput("ABox atom " + a.predicate + " has invalid arity");
    return atoms_.insert(a).second;
  }
  bool erase(const Atom& a) { return atoms_.erase(a) > 0; }
  bool contains(const Atom& a) const { return atoms_.count(a) > 0; }

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }
  const std::set<Atom>& atoms() const { return atoms_; }

  std::vector<Atom> to_vector() const { return {atoms_.begin(), atoms_.end()}; }
  std::set<std::string> constants() const { return constants_of(atoms_); }

  Signature signature() const {
    Signature s;
    for (const auto& a : atoms_) s.declare(a.predicate, a.arity());
    return s;
  }

  bool is_subset_of(const ABox& other) const {
    return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
  }

  friend bool operator==(const ABox&, const ABox&) = default;
  friend auto operator<=>(const ABox& a, const ABox& b) { return a.atoms_ <=> b.atoms_; }

 private:
  std::set<Atom> atoms_;
};

// ---------------------------------------------------------------------------
// Queries and policies

/// Boolean CQ; every variable is existentially quantified.
struct ConjunctiveQuery {
  std::vector<Atom> atoms;  // sorted, unique

  ConjunctiveQuery() = default;
  explicit ConjunctiveQuery(std::vector<Atom> a) : atoms(std::move(a)) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  }
  ConjunctiveQuery(std::initializer_list<Atom> a) : ConjunctiveQuery(std::vector<Atom>(a)) {}

  std::size_t size() const { return atoms.size(); }
  std::set<std::string> variables() const { return variables_of(atoms); }

  friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
  friend auto operator<=>(const ConjunctiveQuery& a, const ConjunctiveQuery& b) { return a.atoms <=> b.atoms; }
};

/// ∀x⃗. body(x⃗) → ⊥
struct Denial {
  std::vector<Atom> body;  // sorted, unique, non-empty

  Denial() = default;
  explicit Denial(std::vector<Atom> b) : body(std::move(b)) {
    if (body.empty()) throw InvalidInput("denial with empty body");
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
  }
  Denial(std::initializer_list<Atom> b) : Denial(std::vector<Atom>(b)) {}

  std::set<std::string> variables() const { return variables_of(body); }
  ConjunctiveQuery as_query() const { return ConjunctiveQuery(body); }

  friend bool operator==(const Denial&, const Denial&) = default;
  friend auto operator<=>(const Denial& a, const Denial& b) { return a.body <=> b.body; }
};

struct Policy {
  std::vector<Denial> denials;  // sorted, unique

  Policy() = default;
  explicit Policy(std::vector<Denial> d) : denials(std::move(d)) {
    std::sort(denials.begin(), denials.end());
    denials.erase(std::unique(denials.begin(), denials.end()), denials.end());
  }
  Policy(std::initializer_list<Denial> d) : Policy(std::vector<Denial>(d)) {}

  bool empty() const { return denials.empty(); }
  std::size_t size() const { return denials.size(); }

  friend bool operator==(const Policy&, const Policy&) = default;
};

/// The CQ theory cl_CQ(representative) under the paired TBox.
struct CensorTheory {
  ABox representative;
  friend bool operator==(const CensorTheory&, const CensorTheory&) = default;
};

/// Minimal subsets of cl_GA(A) inconsistent with T ∪ P.
struct SecretSet {
  std::set<ABox> secrets;

  std::size_t size() const { return secrets.size(); }
  bool empty() const { return secrets.empty(); }
  bool contains(const ABox& s) const { return secrets.count(s) > 0; }

  /// Union of all secrets.
  ABox atoms() const {
    ABox out;
    for (const auto& s : secrets)
      for (const auto& a : s) out.insert(a);
    return out;
  }

  friend bool operator==(const SecretSet&, const SecretSet&) = default;
};

}  // namespace cqe
