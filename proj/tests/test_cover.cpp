#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "twistcert/cover.hpp"
#include "twistcert/error.hpp"

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

// Winding about alpha computed from the letters alone: only b2 crosses a2,
// and <b2, a2> = -1.
long long oracle_winding(const std::vector<Step>& path) {
  long long w = 0;
  for (const auto& s : path)
    if (s.edge == kB2) w += s.forward ? -1 : 1;
  return w;
}

std::vector<Step> random_loop(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<std::size_t> e(0, kBaseEdgeCount - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Step> p;
  for (int i = 0; i < length; ++i) p.push_back({e(rng), coin(rng) == 1});
  return p;
}

}  // namespace

TEST_CASE("build cover examples") {
  const CyclicCover c2 = build_cover(2);
  CHECK(c2.genus() == 3);
  CHECK(c2.complex().euler_characteristic() == -4);
  const CyclicCover c5 = build_cover(5);
  CHECK(c5.genus() == 6);
  CHECK(SurfaceHomology::compute(c5.complex()).rank() == 12);
  CHECK(code_of([] { build_cover(1); }) == ErrorCode::InvalidDegree);
  CHECK(code_of([] { build_cover(0); }) == ErrorCode::InvalidDegree);
}

TEST_CASE("homology ranks and forms") {
  for (int n : {2, 3, 4, 7}) {
    const HomologyReport r = homology_basis(build_cover(n));
    CHECK(r.rank == static_cast<std::size_t>(2 * (n + 1)));
    CHECK(r.unimodular);
    CHECK(r.form.determinant() == 1);
    CHECK(r.form.transpose() == IntMatrix(r.form.rows(), r.form.cols()) - r.form);
  }
}

TEST_CASE("voltages measure intersection with alpha mod n") {
  for (int n : {2, 5, 12}) {
    const CyclicCover c = build_cover(n);
    const SymplecticSpace s(2);
    for (std::size_t e = 0; e < kBaseEdgeCount; ++e) {
      const Integer w = intersection_pairing(base_class({{e, true}}), s.a(2), s);
      CHECK(Integer(c.voltages()[e]) == floor_mod(w, n));
    }
  }
}

TEST_CASE("lifts of alpha, beta and eta") {
  for (int n : {2, 3, 5}) {
    const CyclicCover cover = build_cover(n);
    const SurfaceHomology h = SurfaceHomology::compute(cover.complex());

    const LiftedCurve a = lift_curve(alpha_curve(), cover, &h);
    CHECK(a.winding == 0);
    CHECK(a.components.size() == static_cast<std::size_t>(n));
    for (const auto& c : a.classes) CHECK(c == a.classes.front());
    CHECK_FALSE(a.classes.front().is_zero());
    CHECK(a.deck_permutes);
    CHECK(a.pushforward_ok);

    const LiftedCurve b = lift_curve(beta_curve(), cover, &h);
    CHECK(b.components.size() == static_cast<std::size_t>(n));
    for (const auto& c : b.classes) CHECK(c.is_zero());

    const LiftedCurve e = lift_curve(eta_curve(), cover, &h);
    CHECK(std::abs(e.winding) == 1);
    CHECK(e.components.size() == 1);
    CHECK(e.pushforward_ok);
    // p_*[eta~] = n [eta]
    Chain expected = base_surface().chain_of(eta_curve().path);
    for (auto& x : expected) x *= n;
    CHECK(cover.pushforward(e.components.front()) == expected);
  }
}

TEST_CASE("component count follows the gcd law") {
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int> len(1, 14);
  for (int n = 2; n <= 12; ++n) {
    const CyclicCover cover = build_cover(n);
    for (int t = 0; t < 12; ++t) {
      const BaseCurve c{"x", random_loop(rng, len(rng))};
      const LiftedCurve l = lift_curve(c, cover);
      const long long k = oracle_winding(c.path);
      CHECK(l.winding == k);
      CHECK(l.components.size() == static_cast<std::size_t>(std::gcd<long long, long long>(n, std::abs(k))));
      CHECK(l.pushforward_ok);
      CHECK(l.deck_permutes);
    }
  }
}

TEST_CASE("deck shift permutes lift components") {
  const CyclicCover cover = build_cover(6);
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const LiftedCurve l = lift_curve({"x", random_loop(rng, 8)}, cover);
    for (const auto& comp : l.components) {
      const Chain moved = cover.deck_shift(comp, 1);
      bool found = false;
      for (const auto& other : l.components) found = found || other == moved;
      CHECK(found);
      CHECK(cover.deck_shift(comp, 6) == comp);
      CHECK(cover.pushforward(moved) == cover.pushforward(comp));
    }
  }
}

TEST_CASE("lifted multitwists") {
  for (int n : {2, 4, 5}) {
    const CyclicCover cover = build_cover(n);
    const SurfaceHomology h = SurfaceHomology::compute(cover.complex());
    const SymplecticSpace sp = h.space();
    const IntMatrix tb = lifted_multitwist_matrix(lift_curve(beta_curve(), cover, &h), sp);
    CHECK(tb.is_identity());
    const LiftedCurve a = lift_curve(alpha_curve(), cover, &h);
    const IntMatrix ta = lifted_multitwist_matrix(a, sp);
    CHECK(ta == transvection_matrix(a.classes.front(), n, sp));
    CHECK(is_level_trivial(ta, n));
    CHECK_FALSE(ta.is_identity());
  }
  LiftedCurve zero;
  zero.base_id = "z";
  zero.components = {Chain(1)};
  zero.classes = {SymplecticSpace(2).zero()};
  CHECK(lifted_multitwist_matrix(zero, SymplecticSpace(2)).is_identity());
  LiftedCurve empty;
  CHECK(code_of([&] { lifted_multitwist_matrix(empty, SymplecticSpace(2)); }) == ErrorCode::LiftError);
}

TEST_CASE("non-Torelli witness") {
  const IntersectionLedger ledger = derive_construction_ledger(base_construction_ledger());
  const SymplecticSpace s(2);
  for (int n : {2, 3, 10, 577, 1152, 1153}) {
    // by hand: T_{a2}^{-1}(b2) - b2 = -<a2, b2> a2 = -a2
    CHECK(non_torelli_witness(n, ledger) == Integer(-n) * s.a(2));
  }

  IntersectionLedger bad(s);
  bad.register_curve("alpha", s.a(2));
  bad.register_curve("beta", s.zero());
  bad.register_curve("xi", std::nullopt);
  bad.register_curve("eta", s.a(1));
  bad.set_geometric("xi", "beta", 6);
  bad.set_geometric("xi", "alpha", 2);
  bad.set_geometric("alpha", "beta", 0);
  bad.set_geometric("eta", "alpha", 0);
  CHECK(code_of([&] { non_torelli_witness(5, derive_construction_ledger(bad)); }) == ErrorCode::WitnessFailure);

  IntersectionLedger no_eta(s);
  no_eta.register_curve("alpha", s.a(2));
  no_eta.register_curve("beta", s.zero());
  no_eta.register_curve("xi", std::nullopt);
  no_eta.set_geometric("xi", "beta", 6);
  no_eta.set_geometric("xi", "alpha", 2);
  no_eta.set_geometric("alpha", "beta", 0);
  CHECK(code_of([&] { non_torelli_witness(5, derive_construction_ledger(no_eta)); }) == ErrorCode::UnknownClass);
}

TEST_CASE("spreading constant from the ledger") {
  const IntersectionLedger ledger = derive_construction_ledger(base_construction_ledger());
  CHECK(spreading_constant(ledger) == 432 + 144);
}

TEST_CASE("spreading bound examples") {
  const SpreadingBound b577 = spreading_bound(577, 576);
  CHECK(b577.m_max == 1);
  CHECK(b577.bound_exact == 2.0);
  CHECK(b577.bound_paper == 1152.0);
  CHECK(b577.equality_case);

  const SpreadingBound b1152 = spreading_bound(1152, 576);
  CHECK(b1152.m_max == 1);
  CHECK(b1152.bound_exact == 2.0);
  CHECK(b1152.bound_paper == 2.0);

  const SpreadingBound b1153 = spreading_bound(1153, 576);
  CHECK(b1153.m_max == 2);
  CHECK(b1153.bound_exact == 1.0);
  CHECK(b1153.bound_paper == doctest::Approx(1152.0 / 577.0));
  CHECK(b1153.equality_case);

  CHECK(code_of([] { spreading_bound(576, 576); }) == ErrorCode::DegreeTooSmall);
  CHECK(code_of([] { spreading_bound(10, 576); }) == ErrorCode::DegreeTooSmall);
}

TEST_CASE("spreading bound is monotone and below the closed form") {
  double prev = 1e300;
  for (std::int64_t n = 577; n <= 6000; ++n) {
    const SpreadingBound b = spreading_bound(n, 576);
    CHECK(b.m_max == (n - 1) / 576);
    CHECK(b.bound_exact <= prev);
    CHECK(b.bound_exact <= b.bound_paper);
    // at cover genus h = n + 1 the same bound reads 1152 / (h - 577)
    CHECK(b.bound_genus_form == doctest::Approx(1152.0 / static_cast<double>((n + 1) - 577)));
    CHECK(b.bound_genus_form == doctest::Approx(b.bound_paper));
    prev = b.bound_exact;
  }
}

TEST_CASE("arithmetic certificates") {
  for (int n : {577, 1152, 1153}) {
    const CoverCertificate c = build_certificate(n);
    CHECK(c.degree == n);
    CHECK(c.cover_genus == n + 1);
    CHECK(c.spreading == 576);
    REQUIRE(c.bound.has_value());
    CHECK(c.bound->m_max == (n == 1153 ? 2 : 1));
    CHECK(c.witness == Integer(-n) * SymplecticSpace(2).a(2));
    for (const char* id : {"non_torelli", "phi_torelli", "f_lifts", "word_identity", "conjugation_invariance",
                           "beta_lift_separating", "alpha_lift_level", "properness", "not_normal_generator"})
      CHECK_MESSAGE(c.find(id) != nullptr, id);
    CHECK(c.find("properness")->status == FactStatus::Verified);
    CHECK(c.find("distance")->status == FactStatus::Cited);
    CHECK(c.find("cover_complex") == nullptr);
  }
  CHECK(code_of([] { build_certificate(576); }) == ErrorCode::DegreeTooSmall);
  CHECK(code_of([] { build_certificate(1); }) == ErrorCode::InvalidDegree);
}

TEST_CASE("homology-verified certificates") {
  CertificateOptions o;
  o.mode = CertificateMode::HomologyVerified;
  const CoverCertificate c = build_certificate(10, o);
  CHECK_FALSE(c.bound.has_value());
  CHECK_FALSE(c.bound_omitted.empty());
  CHECK(c.witness == Integer(-10) * SymplecticSpace(2).a(2));
  for (const char* id : {"cover_complex", "beta_lift_separating", "alpha_lift_level", "eta_lift", "properness"}) {
    REQUIRE_MESSAGE(c.find(id) != nullptr, id);
    CHECK(c.find(id)->status == FactStatus::Verified);
  }
  o.homology_cap = 8;
  CHECK(code_of([&] { build_certificate(10, o); }) == ErrorCode::InvalidDegree);
}

TEST_CASE("certificates are deterministic") {
  CertificateOptions o;
  o.seed = 99;
  const CoverCertificate a = build_certificate(700, o), b = build_certificate(700, o);
  CHECK(a.facts == b.facts);
  CHECK(a.witness == b.witness);
}
