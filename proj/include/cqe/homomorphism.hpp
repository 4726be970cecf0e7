#pragma once

// Backtracking homomorphism search from a set of (possibly non-ground)
// atoms into a set of ground atoms.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cqe/model.hpp"

namespace cqe {

/// Variable name -> ground term.
using Binding = std::map<std::string, Term>;

inline Term instantiate(const Binding& b, const Term& t) {
  if (t.is_variable()) {
    if (auto it = b.find(t.name); it != b.end()) return it->second;
  }
  return t;
}

inline Atom instantiate(const Binding& b, const Atom& a) {
  Atom out = a;
  for (auto& t : out.args) t = instantiate(b, t);
  return out;
}

/// Ground atoms grouped by predicate and arity.
class AtomIndex {
 public:
  AtomIndex() = default;
  template <class Range>
  explicit AtomIndex(const Range& atoms) {
    for (const Atom& a : atoms) add(a);
  }

  void add(const Atom& a) { by_pred_[key(a.predicate, a.arity())].push_back(a); }

  const std::vector<Atom>& with(const std::string& pred, std::size_t arity) const {
    static const std::vector<Atom> none;
    auto it = by_pred_.find(key(pred, arity));
    return it == by_pred_.end() ? none : it->second;
  }

 private:
  static std::string key(const std::string& pred, std::size_t arity) {
    return pred + '/' + static_cast<char>('0' + arity);
  }
  std::unordered_map<std::string, std::vector<Atom>> by_pred_;
};

namespace detail {

inline bool match_atom(const Atom& pattern, const Atom& fact, Binding& b, std::vector<std::string>& added) {
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& f = fact.args[i];
    if (p.is_constant()) {
      if (p != f) return false;
      continue;
    }
    auto it = b.find(p.name);
    if (it != b.end()) {
      if (it->second != f) return false;
    } else {
      b.emplace(p.name, f);
      added.push_back(p.name);
    }
  }
  return true;
}

/// Orders pattern atoms so that each one shares terms with earlier atoms
/// whenever possible; cheap and effective for the small patterns we search.
inline std::vector<Atom> join_order(std::vector<Atom> pattern, const Binding& initial) {
  std::vector<Atom> ordered;
  std::set<std::string> bound;
  for (const auto& [v, _] : initial) bound.insert(v);
  while (!pattern.empty()) {
    std::size_t best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      int score = 0;
      for (const auto& t : pattern[i].args)
        if (t.is_constant() || bound.count(t.name)) score += 2;
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    for (const auto& t : pattern[best].args)
      if (t.is_variable()) bound.insert(t.name);
    ordered.push_back(std::move(pattern[best]));
    pattern.erase(pattern.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return ordered;
}

inline bool search(const std::vector<Atom>& pattern, std::size_t i, const AtomIndex& target, Binding& b,
                   const std::function<bool(const Binding&)>& visit) {
  if (i == pattern.size()) return visit(b);
  const Atom& p = pattern[i];
  for (const Atom& f : target.with(p.predicate, p.arity())) {
    std::vector<std::string> added;
    if (match_atom(p, f, b, added)) {
      if (!search(pattern, i + 1, target, b, visit)) return false;
    }
    for (const auto& v : added) b.erase(v);
  }
  return true;
}

}  // namespace detail

/// Calls visit for every homomorphism extending `initial`; stops early when
/// visit returns false.
inline void for_each_homomorphism(const std::vector<Atom>& pattern, const AtomIndex& target,
                                  const std::function<bool(const Binding&)>& visit, Binding initial = {}) {
  auto ordered = detail::join_order(pattern, initial);
  detail::search(ordered, 0, target, initial, visit);
}

inline std::optional<Binding> find_homomorphism(const std::vector<Atom>& pattern, const AtomIndex& target,
                                                Binding initial = {}) {
  std::optional<Binding> found;
  for_each_homomorphism(
      pattern, target,
      [&](const Binding& b) {
        found = b;
        return false;
      },
      std::move(initial));
  return found;
}

inline bool has_homomorphism(const std::vector<Atom>& pattern, const AtomIndex& target) {
  return find_homomorphism(pattern, target).has_value();
}

}  // namespace cqe
