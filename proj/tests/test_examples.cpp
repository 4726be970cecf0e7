// Small worked examples across modules.

#include <gtest/gtest.h>

#include "cqe/cqe.hpp"

using namespace cqe;

namespace {
Term c(const char* n) { return Term::constant(n); }
Term v(const char* n) { return Term::variable(n); }

bool same_ucq(std::vector<ConjunctiveQuery> got, std::vector<ConjunctiveQuery> want) {
  auto equivalent = [](const ConjunctiveQuery& a, const ConjunctiveQuery& b) { return cq_contains(a, b) && cq_contains(b, a); };
  if (got.size() != want.size()) return false;
  return std::all_of(want.begin(), want.end(), [&](const auto& w) {
    return std::any_of(got.begin(), got.end(), [&](const auto& g) { return equivalent(g, w); });
  });
}
}  // namespace

TEST(Examples, SaturationReflexiveOverSignature) {
  Signature sig;
  sig.declare("A", 1);
  InclusionClosure cl = saturate_tbox(TBox{}, sig);
  EXPECT_TRUE(cl.subsumed(BasicConcept::atomic("A"), BasicConcept::atomic("A")));
  EXPECT_EQ(cl.subsumees(BasicConcept::atomic("A")).size(), 1u);
  InclusionClosure cl2 = saturate_tbox(parse_tbox("ProjA [= Supplier\n"));
  EXPECT_TRUE(cl2.subsumed(BasicConcept::atomic("ProjA"), BasicConcept::atomic("Supplier")));
  EXPECT_FALSE(cl2.subsumed(BasicConcept::atomic("Supplier"), BasicConcept::atomic("ProjA")));
}

TEST(Examples, PerfectRefSets) {
  TBox t = parse_tbox("ProjA [= Supplier\nProjB [= Supplier\n");
  EXPECT_TRUE(same_ucq(perfect_ref(parse_query("q :- Supplier(X)"), t),
                       {parse_query("q :- Supplier(X)"), parse_query("q :- ProjA(X)"), parse_query("q :- ProjB(X)")}));
  EXPECT_TRUE(same_ucq(perfect_ref(parse_query("q :- A(c)"), TBox{}), {parse_query("q :- A(c)")}));
  auto ucq = perfect_ref(parse_query("q :- R(X,Y)"), parse_tbox("A [= ex R\n"));
  EXPECT_TRUE(same_ucq(ucq, {parse_query("q :- R(X,Y)"), parse_query("q :- A(X)")}));
}

TEST(Examples, Entailment) {
  EXPECT_TRUE(cq_entailed(TBox{}, parse_abox("R(a,b)\nR(b,a)\n"), parse_query("q :- R(X,Y), R(Y,X)")));
  EXPECT_FALSE(cq_entailed(TBox{}, parse_abox("ProjA(c)\n"), parse_query("q :- ProjA(d)")));
  EXPECT_FALSE(cq_entailed(TBox{}, ABox{}, parse_query("q :- A(X)")));
  EXPECT_TRUE(cq_entailed(parse_tbox("A [= ex R\n"), parse_abox("A(c)\n"), parse_query("q :- R(X,Y)")));
}

TEST(Examples, DenialOnAnonymousEdge) {
  TBox t = parse_tbox("A [= ex R\n");
  Policy p = parse_policy("denial :- R(X,Y)\n");
  EXPECT_FALSE(is_policy_consistent(t, p, parse_abox("A(c)\n")));
  SecretSet s = secrets(t, p, parse_abox("A(c)\nR(d,e)\n"));
  EXPECT_EQ(s.secrets, (std::set<ABox>{parse_abox("A(c)\n"), parse_abox("R(d,e)\n")}));
  EXPECT_EQ(enumerate_optimal_ga_censors(TBox{}, parse_policy("denial :- A(X)\n"), parse_abox("A(c)\n")),
            std::set<ABox>{ABox{}});
}

TEST(Examples, ChaseDepths) {
  TBox t = parse_tbox("A [= ex R\nex R- [= A\n");
  ABox a = parse_abox("A(c)\n");
  const auto flat = chase_bounded(t, a, 0);
  EXPECT_EQ(ABox(flat.atoms.begin(), flat.atoms.end()), abox_closure(t, a));
  auto ch = chase_bounded(t, a, 2);
  EXPECT_TRUE(ch.contains(Atom::binary("R", c("c"), c("_n1"))));
  EXPECT_TRUE(ch.contains(Atom::unary("A", c("_n1"))));
  EXPECT_TRUE(ch.contains(Atom::binary("R", c("_n1"), c("_n2"))));
  EXPECT_EQ(ch.depth.at("_n2"), 2u);
}

TEST(Examples, CensorTheoryEntailment) {
  TBox t = parse_tbox("ProjA [= Supplier\nProjB [= Supplier\n");
  ConjunctiveQuery some_a = parse_query("q :- ProjA(X)");
  EXPECT_TRUE(censor_entails(t, CensorTheory{parse_abox("ProjA(c)\nSupplier(c)\n")}, some_a));
  EXPECT_FALSE(censor_entails(t, CensorTheory{parse_abox("ProjB(c)\nSupplier(c)\n")}, some_a));
}

TEST(Examples, IarRepairWithDisjointnessAsDenial) {
  ABox a = parse_abox("A(d)\nB(d)\nC(d)\n");
  EXPECT_EQ(iar_repair(TBox{}, parse_policy("denial :- A(X), B(X)\n"), a), parse_abox("C(d)\n"));
}

TEST(Examples, ConsistentInputsReduceToCertainAnswers) {
  TBox t = parse_tbox("ProjA [= Supplier\n");
  Policy p = parse_policy("denial :- ProjB(X), Audit(X)\n");
  ABox a = parse_abox("ProjA(c)\nProjB(d)\n");
  for (const char* text : {"q :- Supplier(c)", "q :- ProjB(X)", "q :- Audit(d)"}) {
    ConjunctiveQuery q = parse_query(text);
    const bool certain = cq_entailed(t, a, q);
    EXPECT_EQ(ib_entail(t, p, a, q), certain) << text;
    EXPECT_EQ(qib_entail(t, p, a, q), certain) << text;
    EXPECT_EQ(eval_fo(qib_rewrite(q, t, Policy{}), a), certain) << text;
  }
}

TEST(Examples, EvalActiveDomain) {
  EXPECT_TRUE(eval_fo(parse_fo("EXISTS X . (ProjA(X) OR ProjB(X))"), parse_abox("ProjB(c)\n")));
  EXPECT_TRUE(eval_fo(parse_fo("NOT EXISTS X . ProjA(X)"), ABox{}));
  EXPECT_TRUE(eval_fo(parse_fo("EXISTS X . (A(X) AND NOT B(X))"), parse_abox("A(a)\nB(a)\nA(b)\n")));
}

TEST(Examples, AtomRewrInverseExistential) {
  FOQuery r = atom_rewr(parse_fo("A(c)"), parse_tbox("ex R- [= A\n"));
  EXPECT_EQ(serialize(r), "A(c) OR EXISTS V_v1 . R(V_v1,c)");
  EXPECT_EQ(serialize(atom_rewr(parse_fo("EXISTS X . A(X)"), TBox{})), "EXISTS X . A(X)");
}

TEST(Examples, RewritingOnClosureAndExhaustiveOneConstant) {
  TBox t = parse_tbox("ProjA [= Supplier\nProjB [= Supplier\n");
  Policy p = parse_policy("denial :- ProjA(X), ProjB(X)\n");
  ABox cl = abox_closure(t, parse_abox("ProjA(c)\nProjB(c)\n"));
  EXPECT_FALSE(eval_fo(iar_rewrite(parse_query("q :- ProjA(c)"), t, p), cl));
  EXPECT_TRUE(eval_fo(iar_rewrite(parse_query("q :- Supplier(X)"), t, p), cl));

  // Every ABox over one constant and the three predicates.
  const std::vector<Atom> universe = {Atom::unary("ProjA", c("c")), Atom::unary("ProjB", c("c")),
                                      Atom::unary("Supplier", c("c"))};
  for (const char* text : {"q :- Supplier(X)", "q :- ProjA(X)", "q :- ProjB(c)", "q :- Supplier(c), ProjA(c)"}) {
    ConjunctiveQuery q = parse_query(text);
    FOQuery rw = qib_rewrite(q, t, p);
    for (unsigned mask = 0; mask < 8; ++mask) {
      ABox a;
      for (unsigned i = 0; i < 3; ++i)
        if (mask >> i & 1) a.insert(universe[i]);
      EXPECT_EQ(eval_fo(rw, a), qib_entail(t, p, a, q)) << text << " mask " << mask;
    }
  }
}

TEST(Examples, ParserSpecimens) {
  TBox t = parse_tbox("ex worksOn- [= Employee\nrole worksOn [= involvedIn");
  ASSERT_EQ(t.axioms.size(), 2u);
  EXPECT_EQ(serialize(t), "ex worksOn- [= Employee\nrole worksOn [= involvedIn\n");
  EXPECT_EQ(parse_abox("worksOn(a,b)\nworksOn(a,b)").size(), 1u);
  EXPECT_EQ(parse_policy("denial :- Supplier(X), ProjA(X), ProjB(X)").denials[0].body.size(), 3u);
  EXPECT_EQ(parse_query("q :- Supplier(c), ProjA(c)").size(), 2u);
  EXPECT_EQ(serialize(FOQuery::exists("X", FOQuery::disj({fo::atom(Atom::unary("A", v("X"))),
                                                          fo::atom(Atom::unary("B", v("X")))}))),
            "EXISTS X . (A(X) OR B(X))");
  EXPECT_TRUE(parse_tbox("").axioms.empty());
}
