#include <doctest.h>

#include <cmath>

#include "twistcert/cover.hpp"
#include "twistcert/error.hpp"
#include "twistcert/penner.hpp"
#include "twistcert/symplectic.hpp"
#include "twistcert/verdict.hpp"

using namespace twistcert;

namespace {

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

MappingClassProfile pa_profile(int genus, double lambda) {
  MappingClassProfile p;
  p.genus = genus;
  p.pseudo_anosov = PseudoAnosovFact{lambda, std::log(lambda), false, ""};
  return p;
}

}  // namespace

TEST_CASE("small stretch factor on a closed surface of genus at least 3") {
  const Verdict v = apply_rules(pa_profile(5, 1.30));
  CHECK(v.decision == Decision::NormalGenerator);
  CHECK(v.rule == "LM-pA");
  CHECK_FALSE(v.anchors.empty());
  CHECK(v.asserted_inputs == std::vector<std::string>{"pseudo_anosov"});
}

TEST_CASE("threshold is inclusive") {
  // sqrt 2 gives l_teich = (1/2) log 2 up to rounding in log
  CHECK(apply_rules(pa_profile(3, std::sqrt(2.0))).decision == Decision::NormalGenerator);
  MappingClassProfile exact = pa_profile(3, std::sqrt(2.0));
  exact.pseudo_anosov->l_teich = teichmuller_threshold();
  CHECK(apply_rules(exact).decision == Decision::NormalGenerator);
  CHECK(apply_rules(pa_profile(3, 1.4143)).decision == Decision::Inconclusive);
  CHECK(apply_rules(pa_profile(3, 2.0)).decision == Decision::Inconclusive);
  CHECK(teichmuller_threshold() == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-15));
}

TEST_CASE("genus two or punctures only give the commutator subgroup") {
  CHECK(apply_rules(pa_profile(2, 1.2)).decision == Decision::ContainsCommutatorSubgroup);
  MappingClassProfile p = pa_profile(4, 1.2);
  p.closed = false;
  p.punctures = 2;
  CHECK(apply_rules(p).decision == Decision::ContainsCommutatorSubgroup);
}

TEST_CASE("Torelli obstruction") {
  MappingClassProfile p;
  p.genus = 3;
  p.homology_matrix = IntMatrix::identity(6);
  Verdict v = apply_rules(p);
  CHECK(v.decision == Decision::NotNormalGenerator);
  CHECK(v.rule == "OBS-Torelli");
  CHECK(v.asserted_inputs.empty());

  MappingClassProfile q;
  q.genus = 4;
  q.torelli = true;
  v = apply_rules(q);
  CHECK(v.decision == Decision::NotNormalGenerator);
  CHECK(v.asserted_inputs == std::vector<std::string>{"torelli"});
}

TEST_CASE("level obstruction for the cover construction") {
  const Verdict v = apply_rules(profile_from_certificate(build_certificate(577)));
  CHECK(v.decision == Decision::NotNormalGenerator);
  CHECK(v.rule == "OBS-level");

  // a level-trivial matrix supports the rule, a non-trivial one contradicts it
  const SymplecticSpace s(3);
  MappingClassProfile p;
  p.genus = 3;
  p.level_trivial_moduli = {5};
  p.homology_matrix = transvection_matrix(s.b(2), 5, s);
  CHECK(apply_rules(p).rule == "OBS-level");
  CHECK(apply_rules(p).asserted_inputs.empty());
  p.homology_matrix = transvection_matrix(s.b(2), 4, s);
  CHECK(code_of([&] { apply_rules(p); }) == ErrorCode::InconsistentProfile);
}

TEST_CASE("partly pseudo-Anosov rule and its opt-in weak form") {
  MappingClassProfile p;
  p.genus = 5;
  p.partly_pseudo_anosov = PartlyPseudoAnosovFact{3, true, true, 0.3};
  CHECK(apply_rules(p).decision == Decision::NormalGenerator);
  CHECK(apply_rules(p).rule == "BKW");

  p.partly_pseudo_anosov->subsurface_genus = 1;
  CHECK(apply_rules(p).decision == Decision::Inconclusive);
  VerdictOptions weak;
  weak.bkw_weak = true;
  CHECK(apply_rules(p, weak).decision == Decision::NormalGenerator);
  CHECK(apply_rules(p, weak).rule == "BKW-weak");

  p.partly_pseudo_anosov->l_teich = 0.4;
  CHECK(apply_rules(p, weak).decision == Decision::Inconclusive);
  p.partly_pseudo_anosov->l_teich = 0.3;
  p.partly_pseudo_anosov->invariant = false;
  CHECK(apply_rules(p, weak).decision == Decision::Inconclusive);
}

TEST_CASE("finite order rule") {
  MappingClassProfile p;
  p.genus = 3;
  p.finite_order = FiniteOrderFact{7, false};
  CHECK(apply_rules(p).decision == Decision::NormalGenerator);
  CHECK(apply_rules(p).rule == "LM-finite");
  p.finite_order = FiniteOrderFact{2, true};
  CHECK(apply_rules(p).decision == Decision::Inconclusive);
  p.genus = 2;
  p.finite_order = FiniteOrderFact{3, false};
  CHECK(apply_rules(p).decision == Decision::Inconclusive);
}

TEST_CASE("inconsistent profiles") {
  auto inconsistent = [](MappingClassProfile p) {
    return code_of([&] { apply_rules(p); }) == ErrorCode::InconsistentProfile;
  };
  const SymplecticSpace s(3);
  MappingClassProfile p;
  p.genus = 3;

  MappingClassProfile a = p;
  a.torelli = true;
  a.homology_matrix = transvection_matrix(s.a(1), 1, s);
  CHECK(inconsistent(a));

  MappingClassProfile b = p;
  b.torelli = false;
  b.homology_matrix = IntMatrix::identity(6);
  CHECK(inconsistent(b));

  MappingClassProfile c = pa_profile(3, 1.2);
  c.finite_order = FiniteOrderFact{3, false};
  CHECK(inconsistent(c));

  MappingClassProfile d = pa_profile(3, 1.2);
  d.pseudo_anosov->l_teich = 0.1;
  CHECK(inconsistent(d));
  CHECK(inconsistent(pa_profile(3, 0.9)));

  MappingClassProfile e = p;
  e.genus = 1;
  CHECK(inconsistent(e));

  MappingClassProfile f = p;
  f.punctures = 1;
  CHECK(inconsistent(f));

  MappingClassProfile g = p;
  g.homology_matrix = IntMatrix::identity(4);
  CHECK(inconsistent(g));

  MappingClassProfile h = p;
  IntMatrix bad = IntMatrix::identity(6);
  bad(0, 0) = 2;
  h.homology_matrix = bad;
  CHECK(inconsistent(h));

  MappingClassProfile i = p;
  i.finite_order = FiniteOrderFact{3, false};
  i.homology_matrix = transvection_matrix(s.a(1), 1, s);
  CHECK(inconsistent(i));

  MappingClassProfile j = p;
  j.level_trivial_moduli = {1};
  CHECK(inconsistent(j));
}

TEST_CASE("obstructions are never overturned by positive facts") {
  std::vector<MappingClassProfile> positives;
  positives.push_back(pa_profile(4, 1.2));
  MappingClassProfile fo;
  fo.genus = 4;
  fo.finite_order = FiniteOrderFact{5, false};
  positives.push_back(fo);
  MappingClassProfile pp;
  pp.genus = 4;
  pp.partly_pseudo_anosov = PartlyPseudoAnosovFact{3, true, true, 0.2};
  positives.push_back(pp);

  for (auto p : positives) {
    REQUIRE(apply_rules(p).decision == Decision::NormalGenerator);
    MappingClassProfile t = p;
    t.torelli = true;
    CHECK(apply_rules(t).decision == Decision::NotNormalGenerator);
    MappingClassProfile l = p;
    l.level_trivial_moduli = {3};
    CHECK(apply_rules(l).decision == Decision::NotNormalGenerator);
    l.torelli = true;
    CHECK(apply_rules(l).decision == Decision::NotNormalGenerator);
  }
}

TEST_CASE("verdicts are deterministic and cite a rule when decisive") {
  const MappingClassProfile p = pa_profile(6, 1.25);
  CHECK(apply_rules(p) == apply_rules(p));
  for (double lambda : {1.1, 1.3, 1.41, 1.5, 3.0}) {
    const Verdict v = apply_rules(pa_profile(3, lambda));
    if (v.decision != Decision::Inconclusive) CHECK_FALSE(v.rule.empty());
  }
}

TEST_CASE("certified stretch factors feed the engine") {
  RibbonConfig r = RibbonConfig::parse(
      "genus 1\nc-curves c\nd-curves d\nv1: c+ d+ c- d-\ne1: v1.0 v1.2 c\ne2: v1.1 v1.3 d\n");
  const StretchCertificate cert = certify_penner_word(TwistWord::parse("c d^-1"), r, 1);
  MappingClassProfile p;
  p.genus = 3;
  p.pseudo_anosov = pseudo_anosov_fact(cert);
  CHECK(p.pseudo_anosov->certified);
  // (3 + sqrt 5) / 2 is far above sqrt 2
  CHECK(apply_rules(p).decision == Decision::Inconclusive);
}

TEST_CASE("decision names") {
  for (Decision d : {Decision::NormalGenerator, Decision::NotNormalGenerator, Decision::ContainsCommutatorSubgroup,
                     Decision::Inconclusive})
    CHECK(decision_from_string(to_string(d)) == d);
  CHECK(code_of([] { decision_from_string("Maybe"); }) == ErrorCode::ParseError);
}
