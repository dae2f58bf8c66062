#include <doctest.h>

#include "oracles.hpp"
#include "twistcert/error.hpp"
#include "twistcert/ledger.hpp"

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

}  // namespace

TEST_CASE("register curves") {
  const SymplecticSpace s(2);
  IntersectionLedger l(s);
  CHECK(l.register_curve("beta", s.zero()).separating() == true);
  CHECK(l.register_curve("alpha", s.a(2)).separating() == false);
  CHECK(l.register_curve("eta", s.b(2)).separating() == false);
  CHECK_FALSE(l.register_curve("xi", std::nullopt).separating().has_value());
  CHECK(code_of([&] { l.register_curve("alpha", s.a(1)); }) == ErrorCode::DuplicateCurve);
  // eta meets alpha once algebraically, which the witness relies on
  CHECK(abs(intersection_pairing(*l.curve("eta").h1_class, *l.curve("alpha").h1_class, s)) == 1);
}

TEST_CASE("set geometric") {
  IntersectionLedger l = base_construction_ledger();
  CHECK(l.geometric("xi", "beta") == 6);
  CHECK(l.geometric("beta", "xi") == 6);
  CHECK(l.geometric("xi", "alpha") == 2);
  CHECK(l.geometric("alpha", "beta") == 0);
  CHECK(l.geometric("alpha", "alpha") == 0);
  CHECK_FALSE(l.geometric("xi", "eta").has_value());
  CHECK(l.entry("xi", "beta")->provenance == Provenance::Asserted);

  l.set_geometric("xi", "beta", 6);  // same value again is fine
  CHECK(code_of([&] { l.set_geometric("xi", "beta", 5); }) == ErrorCode::InconsistentLedger);
  CHECK(code_of([&] { l.set_geometric("xi", "eta", -1); }) == ErrorCode::InconsistentLedger);
  CHECK(code_of([&] { l.set_geometric("xi", "nope", 1); }) == ErrorCode::UnknownCurve);
  CHECK(code_of([&] { l.require_geometric("xi", "eta"); }) == ErrorCode::UnknownIntersection);
}

TEST_CASE("the construction table") {
  // hand oracle: squares and products of the base numbers
  const std::int64_t i_xi_beta = 6, i_xi_alpha = 2;
  const std::int64_t i_lambda_beta = i_xi_beta * i_xi_beta;
  const std::int64_t i_lambda_alpha = i_xi_beta * i_xi_alpha;
  const std::int64_t i_phia_alpha = i_lambda_alpha * i_lambda_alpha;
  const std::int64_t i_phib_alpha = i_lambda_beta * i_lambda_alpha;
  CHECK(i_lambda_beta == 36);
  CHECK(i_phia_alpha == 144);
  CHECK(i_phib_alpha == 432);

  const IntersectionLedger d = derive_construction_ledger(base_construction_ledger());
  CHECK(d.geometric("lambda", "beta") == i_lambda_beta);
  CHECK(d.geometric("lambda", "alpha") == i_lambda_alpha);
  CHECK(d.geometric("phi_alpha", "alpha") == i_phia_alpha);
  CHECK(d.geometric("phi_beta", "alpha") == i_phib_alpha);
  CHECK(d.entry("phi_beta", "alpha")->provenance == Provenance::Derived);
  CHECK_FALSE(d.entry("phi_beta", "alpha")->rule.empty());

  // lambda and phi(beta) are separating, phi(alpha) keeps alpha's class
  const SymplecticSpace s(2);
  CHECK(d.curve("lambda").h1_class == s.zero());
  CHECK(d.curve("phi_beta").h1_class == s.zero());
  CHECK(d.curve("phi_alpha").h1_class == s.a(2));

  const TableReport report = reproduce_intersection_table(base_construction_ledger());
  CHECK(report.all_match());
  CHECK(report.rows.size() == 5);
}

TEST_CASE("derived classes agree with the transvection") {
  const SymplecticSpace s(2);
  IntersectionLedger l(s);
  l.register_curve("c", s.a(1) + s.b(2));
  l.register_curve("x", s.b(1));
  l.set_geometric("c", "x", 1);
  for (long long n : {-3LL, -1LL, 1LL, 4LL}) {
    const std::string id = l.derive_twist_image("c", n, "x");
    CHECK(l.curve(id).h1_class == oracle::transvect(s.a(1) + s.b(2), n, s.b(1)));
    CHECK(l.geometric(id, "x") == std::abs(n));
  }
  CHECK(code_of([&] { l.derive_twist_image("c", 0, "x"); }) == ErrorCode::InvalidWord);
}

TEST_CASE("twist sign does not change geometric intersection") {
  IntersectionLedger plus = base_construction_ledger();
  IntersectionLedger minus = base_construction_ledger();
  plus.derive_twist_image("xi", 1, "beta", "img");
  minus.derive_twist_image("xi", -1, "beta", "img");
  CHECK(plus.geometric("img", "beta") == 36);
  CHECK(minus.geometric("img", "beta") == 36);
  CHECK(plus.geometric("img", "alpha") == minus.geometric("img", "alpha"));
  IntersectionLedger twice = base_construction_ledger();
  twice.derive_twist_image("xi", 2, "beta", "img");
  CHECK(twice.geometric("img", "beta") == 72);
}

TEST_CASE("rule paths must agree") {
  IntersectionLedger l = base_construction_ledger();
  l.derive_twist_image("xi", 1, "beta", "lambda");
  CHECK(code_of([&] { l.set_geometric("lambda", "beta", 35); }) == ErrorCode::InconsistentLedger);
  l.set_geometric("lambda", "beta", 36);
}

TEST_CASE("missing source data") {
  const SymplecticSpace s(2);
  IntersectionLedger l(s);
  l.register_curve("c", s.a(1));
  l.register_curve("x", s.b(1));
  CHECK(code_of([&] { l.derive_twist_image("c", 1, "x"); }) == ErrorCode::UnknownIntersection);

  IntersectionLedger no_beta_alpha(s);
  no_beta_alpha.register_curve("alpha", s.a(2));
  no_beta_alpha.register_curve("beta", s.zero());
  no_beta_alpha.register_curve("xi", std::nullopt);
  no_beta_alpha.set_geometric("xi", "beta", 6);
  no_beta_alpha.set_geometric("xi", "alpha", 2);
  CHECK(code_of([&] { reproduce_intersection_table(no_beta_alpha); }) == ErrorCode::UnknownIntersection);
}

TEST_CASE("perturbed base data is reported") {
  const SymplecticSpace s(2);
  IntersectionLedger l(s);
  l.register_curve("alpha", s.a(2));
  l.register_curve("beta", s.zero());
  l.register_curve("xi", std::nullopt);
  l.set_geometric("xi", "beta", 5);
  l.set_geometric("xi", "alpha", 2);
  l.set_geometric("alpha", "beta", 0);
  const TableReport r = reproduce_intersection_table(l);
  CHECK_FALSE(r.all_match());
  for (const auto& row : r.rows)
    if (row.curve == "phi_beta") CHECK(row.derived == 25 * 10);
}

TEST_CASE("frozen ledgers") {
  IntersectionLedger l = base_construction_ledger();
  l.freeze();
  CHECK(code_of([&] { l.set_geometric("xi", "eta", 1); }) == ErrorCode::LedgerFrozen);
  CHECK(code_of([&] { l.register_curve("z", std::nullopt); }) == ErrorCode::LedgerFrozen);
  const IntersectionLedger next = l.with_twist_image("xi", 1, "beta", "lambda");
  CHECK(next.frozen());
  CHECK(next.geometric("lambda", "beta") == 36);
  CHECK_FALSE(l.has_curve("lambda"));
}

TEST_CASE("bounding pairs") {
  const SymplecticSpace s(2);
  IntersectionLedger l(s);
  l.register_curve("c", s.a(1));
  l.register_curve("c2", s.a(1));
  l.register_curve("c3", -s.a(1));
  l.register_curve("alpha", s.a(2));
  l.register_curve("beta", s.zero());
  l.set_geometric("c", "c2", 0);
  l.set_geometric("c", "c3", 0);
  l.set_geometric("alpha", "c", 0);
  l.set_geometric("alpha", "beta", 0);
  l.set_geometric("c", "beta", 3);
  CHECK(l.is_bounding_pair("c", "c2"));
  CHECK(l.is_bounding_pair("c", "c3"));
  CHECK_FALSE(l.is_bounding_pair("alpha", "c"));
  CHECK_FALSE(l.is_bounding_pair("alpha", "beta"));
  CHECK_FALSE(l.is_bounding_pair("c", "beta"));  // not disjoint
  CHECK(code_of([&] { l.is_bounding_pair("c2", "alpha"); }) == ErrorCode::UnknownIntersection);
}

TEST_CASE("curve sequences") {
  const SymplecticSpace s(2);
  IntersectionLedger l(s);
  l.register_curve("alpha", s.a(2));
  l.register_curve("x", s.a(1));
  l.register_curve("y", s.a(2) + s.b(1));
  l.register_curve("c", s.a(1));
  l.register_curve("c2", s.a(1));
  l.set_geometric("alpha", "x", 0);
  l.set_geometric("x", "y", 0);
  l.set_geometric("c", "c2", 0);

  CHECK(l.check_curve_sequence({"alpha"}, "alpha", "alpha").pass);

  const SequenceReport bp = l.check_curve_sequence({"c", "c2"}, "c", "c2");
  CHECK_FALSE(bp.pass);
  REQUIRE(bp.steps.size() == 1);
  CHECK(bp.steps[0].disjoint);
  CHECK_FALSE(bp.steps[0].not_bounding_pair);

  // x is disjoint from both neighbours, nonseparating, and homologous to neither
  const SequenceReport ok = l.check_curve_sequence({"alpha", "x", "y"}, "alpha", "y");
  CHECK(ok.pass);
  CHECK(ok.steps.size() == 2);
  for (const auto& st : ok.steps) CHECK(st.ok());

  CHECK_FALSE(l.check_curve_sequence({"alpha", "x", "y"}, "alpha", "x").pass);
  CHECK(code_of([&] { l.check_curve_sequence({"alpha", "y"}, "alpha", "y"); }) == ErrorCode::UnknownIntersection);
}

TEST_CASE("separating flag matches the class for every derived curve") {
  const IntersectionLedger d = derive_construction_ledger(base_construction_ledger());
  for (const auto& id : d.curve_order()) {
    const auto& c = d.curve(id);
    if (!c.h1_class) continue;
    CHECK(*c.separating() == c.h1_class->is_zero());
  }
}

TEST_CASE("restore entries") {
  const IntersectionLedger d = derive_construction_ledger(base_construction_ledger());
  IntersectionLedger copy = base_construction_ledger();
  for (const char* id : {"lambda", "phi_alpha", "phi_beta"}) copy.register_curve(id, d.curve(id).h1_class);
  for (const auto& e : d.entries()) copy.restore_entry(e);
  CHECK(copy.entries() == d.entries());
  LedgerEntry bad{"xi", "eta", 3, Provenance::Derived, ""};
  CHECK(code_of([&] { copy.restore_entry(bad); }) == ErrorCode::InconsistentLedger);
}
