#include "twistcert/cover.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "twistcert/error.hpp"

namespace twistcert {

namespace {

const char* const kBaseEdgeNames[kBaseEdgeCount] = {"a1", "b1", "a2", "b2", "beta"};

std::vector<std::vector<Step>> base_faces() {
  return {
      {{kBeta, true}, {kB1, true}, {kA1, true}, {kB1, false}, {kA1, false}},
      {{kB2, true}, {kA2, true}, {kB2, false}, {kA2, false}, {kBeta, false}},
  };
}

SymplecticSpace base_space() { return SymplecticSpace(2); }

std::string format_vector(const H1Vector& v) { return v.to_string(); }

void require(bool ok, ErrorCode code, const std::string& clause) {
  if (!ok) throw Error(code, "certificate clause failed: " + clause);
}

}  // namespace

const SurfaceComplex& base_surface() {
  static const SurfaceComplex complex(1, std::vector<SurfaceComplex::Edge>(kBaseEdgeCount, {0, 0}), base_faces());
  return complex;
}

H1Vector base_class(const std::vector<Step>& path) {
  H1Vector v = base_space().zero();
  for (const auto& s : path) {
    if (s.edge >= kBaseEdgeCount) throw Error(ErrorCode::LiftError, "unknown base edge");
    if (s.edge == kBeta) continue;  // null-homologous
    v[s.edge] += s.forward ? 1 : -1;
  }
  return v;
}

std::vector<Step> parse_base_path(const std::string& text) {
  const TwistWord word = TwistWord::parse(text);
  std::vector<Step> path;
  for (const auto& letter : word.letters()) {
    const auto* it = std::find(std::begin(kBaseEdgeNames), std::end(kBaseEdgeNames), letter.curve);
    if (it == std::end(kBaseEdgeNames)) throw Error(ErrorCode::UnknownCurve, "no base edge '" + letter.curve + "'");
    const auto edge = static_cast<std::size_t>(it - std::begin(kBaseEdgeNames));
    const long long reps = letter.exponent < 0 ? -letter.exponent : letter.exponent;
    for (long long r = 0; r < reps; ++r) path.push_back({edge, letter.exponent > 0});
  }
  return path;
}

BaseCurve alpha_curve() { return {"alpha", {{kA2, true}}}; }
BaseCurve beta_curve() { return {"beta", {{kBeta, true}}}; }
BaseCurve eta_curve() { return {"eta", {{kB2, true}}}; }

std::size_t CyclicCover::lifted_edge(std::size_t base_edge, long long sheet) const {
  const long long n = degree_;
  return base_edge * static_cast<std::size_t>(n) + static_cast<std::size_t>(((sheet % n) + n) % n);
}

Chain CyclicCover::deck_shift(const Chain& chain, long long shift) const {
  Chain out(chain.size());
  for (std::size_t e = 0; e < kBaseEdgeCount; ++e)
    for (long long j = 0; j < degree_; ++j) out[lifted_edge(e, j + shift)] = chain[lifted_edge(e, j)];
  return out;
}

Chain CyclicCover::pushforward(const Chain& chain) const {
  Chain base(kBaseEdgeCount);
  for (std::size_t e = 0; e < kBaseEdgeCount; ++e)
    for (long long j = 0; j < degree_; ++j) base[e] += chain[lifted_edge(e, j)];
  return base;
}

CyclicCover voltage_cover(int degree) {
  if (degree < 1) throw Error(ErrorCode::InvalidDegree, "degree must be positive");
  const long long n = degree;
  const H1Vector alpha = base_class(alpha_curve().path);
  std::vector<long long> voltages(kBaseEdgeCount);
  for (std::size_t e = 0; e < kBaseEdgeCount; ++e) {
    const Integer w = intersection_pairing(base_class({{e, true}}), alpha, base_space());
    voltages[e] = floor_mod(w, n).convert_to<long long>();
  }

  std::vector<SurfaceComplex::Edge> edges(kBaseEdgeCount * static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < kBaseEdgeCount; ++e)
    for (long long j = 0; j < n; ++j)
      edges[e * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = {
          static_cast<std::size_t>(j), static_cast<std::size_t>((j + voltages[e]) % n)};

  std::vector<std::vector<Step>> faces;
  for (const auto& face : base_faces()) {
    for (long long j = 0; j < n; ++j) {
      std::vector<Step> lifted;
      long long sheet = j;
      for (const auto& s : face) {
        if (s.forward) {
          lifted.push_back({s.edge * static_cast<std::size_t>(n) + static_cast<std::size_t>(sheet), true});
          sheet = (sheet + voltages[s.edge]) % n;
        } else {
          sheet = ((sheet - voltages[s.edge]) % n + n) % n;
          lifted.push_back({s.edge * static_cast<std::size_t>(n) + static_cast<std::size_t>(sheet), false});
        }
      }
      if (sheet != j) throw Error(ErrorCode::HomologyRankError, "face voltage is not zero");
      faces.push_back(std::move(lifted));
    }
  }
  return CyclicCover(degree, SurfaceComplex(static_cast<std::size_t>(n), std::move(edges), std::move(faces)),
                     std::move(voltages));
}

CyclicCover build_cover(int degree) {
  if (degree < 2) throw Error(ErrorCode::InvalidDegree, "cover degree must be at least 2, got " + std::to_string(degree));
  CyclicCover cover = voltage_cover(degree);
  const auto& c = cover.complex();
  if (!c.is_surface()) throw Error(ErrorCode::HomologyRankError, "cover complex is not a closed surface");
  if (!c.connected()) throw Error(ErrorCode::HomologyRankError, "cover complex is disconnected");
  if (c.euler_characteristic() != 2 - 2 * static_cast<long long>(cover.genus()))
    throw Error(ErrorCode::HomologyRankError, "cover Euler characteristic " + std::to_string(c.euler_characteristic()));
  return cover;
}

HomologyReport homology_basis(const CyclicCover& cover) {
  const SurfaceHomology h = SurfaceHomology::compute(cover.complex());
  if (h.rank() != 2 * static_cast<std::size_t>(cover.genus()))
    throw Error(ErrorCode::HomologyRankError, "cover homology rank " + std::to_string(h.rank()));
  return HomologyReport{h.rank(), h.raw_form(), h.raw_form().determinant() == 1};
}

LiftedCurve lift_curve(const BaseCurve& curve, const CyclicCover& cover, const SurfaceHomology* homology) {
  if (curve.path.empty()) throw Error(ErrorCode::LiftError, "empty path for '" + curve.id + "'");
  const Chain base_chain = base_surface().chain_of(curve.path);
  if (!base_surface().is_cycle(base_chain)) throw Error(ErrorCode::LiftError, "path of '" + curve.id + "' is not closed");

  const long long n = cover.degree();
  LiftedCurve lift;
  lift.base_id = curve.id;
  lift.winding = intersection_pairing(base_class(curve.path), base_class(alpha_curve().path), base_space())
                     .convert_to<long long>();

  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  for (long long start = 0; start < n; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    Chain chain(cover.complex().edge_count());
    long long sheet = start;
    long long rounds = 0;
    do {
      if (visited[static_cast<std::size_t>(sheet)] || ++rounds > n)
        throw Error(ErrorCode::LiftError, "lift of '" + curve.id + "' does not close up");
      visited[static_cast<std::size_t>(sheet)] = true;
      for (const auto& s : curve.path) {
        const long long v = cover.voltages()[s.edge];
        if (s.forward) {
          chain[cover.lifted_edge(s.edge, sheet)] += 1;
          sheet = (sheet + v) % n;
        } else {
          sheet = ((sheet - v) % n + n) % n;
          chain[cover.lifted_edge(s.edge, sheet)] -= 1;
        }
      }
    } while (sheet != start);
    if (!cover.complex().is_cycle(chain)) throw Error(ErrorCode::LiftError, "traced lift is not a cycle");
    lift.components.push_back(std::move(chain));
  }

  const auto expected = static_cast<std::size_t>(std::gcd(n, lift.winding));
  if (lift.components.size() != expected)
    throw Error(ErrorCode::LiftError, "lift of '" + curve.id + "' has " + std::to_string(lift.components.size()) +
                                          " components, expected gcd = " + std::to_string(expected));

  const Integer sheets_per_component = n / static_cast<long long>(lift.components.size());
  lift.pushforward_ok = true;
  for (const auto& comp : lift.components) {
    const Chain down = cover.pushforward(comp);
    for (std::size_t e = 0; e < kBaseEdgeCount; ++e)
      if (down[e] != sheets_per_component * base_chain[e]) lift.pushforward_ok = false;
  }
  lift.deck_permutes = true;
  for (const auto& comp : lift.components) {
    const Chain moved = cover.deck_shift(comp, 1);
    if (std::find(lift.components.begin(), lift.components.end(), moved) == lift.components.end())
      lift.deck_permutes = false;
  }
  if (homology)
    for (const auto& comp : lift.components) lift.classes.push_back(homology->class_of(comp));
  return lift;
}

IntMatrix lifted_multitwist_matrix(const LiftedCurve& lift, const SymplecticSpace& space) {
  if (lift.classes.empty()) throw Error(ErrorCode::LiftError, "lift of '" + lift.base_id + "' has no classes");
  const IntMatrix identity = IntMatrix::identity(space.dimension());
  IntMatrix product = identity;
  IntMatrix sum = identity;
  for (const auto& c : lift.classes) {
    const IntMatrix t = transvection_matrix(c, 1, space);
    product = product * t;
    sum = sum + (t - identity);
  }
  if (product != sum)
    throw Error(ErrorCode::LiftError, "components of the lift of '" + lift.base_id + "' are not pairwise disjoint in homology");
  return product;
}

H1Vector non_torelli_witness(int degree, const IntersectionLedger& ledger) {
  if (degree < 2) throw Error(ErrorCode::InvalidDegree, "cover degree must be at least 2");
  ClassTable classes;
  for (const auto& id : ledger.curve_order())
    if (const auto& c = ledger.curve(id).h1_class) classes.emplace(id, *c);
  const auto eta = classes.find("eta");
  if (eta == classes.end()) throw Error(ErrorCode::UnknownClass, "homology class of 'eta' is unset");
  const IntMatrix m = word_action(TwistWord::parse(kConstructionWord), classes, ledger.space());
  const H1Vector image(m.apply(eta->second.coords()));
  const H1Vector w = Integer(degree) * (image - eta->second);
  if (w.is_zero()) throw Error(ErrorCode::WitnessFailure, "n([f(eta)] - [eta]) vanishes; f~ may be Torelli");
  return w;
}

std::int64_t spreading_constant(const IntersectionLedger& ledger) {
  return ledger.require_geometric("phi_beta", "alpha") + ledger.require_geometric("phi_alpha", "alpha");
}

SpreadingBound spreading_bound(std::int64_t degree, std::int64_t spreading) {
  if (spreading < 1) throw Error(ErrorCode::InvalidDegree, "spreading constant must be positive");
  if (degree <= spreading)
    throw Error(ErrorCode::DegreeTooSmall, "degree " + std::to_string(degree) + " admits no m >= 1 with " +
                                               std::to_string(spreading) + " m + 1 <= n");
  SpreadingBound b;
  b.degree = degree;
  b.spreading = spreading;
  b.m_max = (degree - 1) / spreading;
  b.bound_exact = 2.0 / static_cast<double>(b.m_max);
  b.bound_paper = 2.0 * static_cast<double>(spreading) / static_cast<double>(degree - spreading);
  const std::int64_t genus = degree + 1;
  b.bound_genus_form = 2.0 * static_cast<double>(spreading) / static_cast<double>(genus - spreading - 1);
  b.equality_case = spreading * b.m_max + 1 == degree;
  b.middle_vertex = b.equality_case ? "a component of the preimage of alpha"
                                    : "a boundary curve of a piece X_j disjoint from both curves";
  // 2/m <= 2s/(n-s)  <=>  n <= s(m+1), exact in integers.
  if (degree > spreading * (b.m_max + 1))
    throw Error(ErrorCode::DegreeTooSmall, "bound comparison failed at degree " + std::to_string(degree));
  return b;
}

std::string to_string(CertificateMode mode) {
  return mode == CertificateMode::Arithmetic ? "arithmetic" : "homology-verified";
}

CertificateMode certificate_mode_from_string(const std::string& text) {
  if (text == "arithmetic") return CertificateMode::Arithmetic;
  if (text == "homology-verified") return CertificateMode::HomologyVerified;
  throw Error(ErrorCode::ParseError, "unknown certificate mode '" + text + "'");
}

std::string to_string(FactStatus status) {
  switch (status) {
    case FactStatus::Verified: return "verified";
    case FactStatus::Asserted: return "asserted";
    case FactStatus::Cited: return "cited";
  }
  return "verified";
}

FactStatus fact_status_from_string(const std::string& text) {
  if (text == "verified") return FactStatus::Verified;
  if (text == "asserted") return FactStatus::Asserted;
  if (text == "cited") return FactStatus::Cited;
  throw Error(ErrorCode::ParseError, "unknown fact status '" + text + "'");
}

const Fact* CoverCertificate::find(const std::string& id) const {
  for (const auto& f : facts)
    if (f.id == id) return &f;
  return nullptr;
}

namespace {

// Random element of Sp(2g, Z) as a product of transvections along small vectors.
IntMatrix random_symplectic(std::mt19937_64& rng, const SymplecticSpace& space) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> power(-3, 3);
  IntMatrix m = IntMatrix::identity(space.dimension());
  for (int k = 0; k < 6; ++k) {
    H1Vector c = space.zero();
    for (std::size_t i = 0; i < space.dimension(); ++i) c[i] = coeff(rng);
    m = m * transvection_matrix(c, power(rng), space);
  }
  return m;
}

struct LevelSample {
  int samples = 0;
  bool ok = true;
};

// M (I + nX) M^{-1} stays congruent to I mod n, and so do products.
LevelSample check_conjugation_invariance(std::int64_t n, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> genus(1, 3);
  std::uniform_int_distribution<int> entry(-3, 3);
  LevelSample result;
  for (int k = 0; k < samples; ++k) {
    const SymplecticSpace space(genus(rng));
    const std::size_t d = space.dimension();
    IntMatrix x(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) x(i, j) = entry(rng);
    IntMatrix level = IntMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) level(i, j) += Integer(n) * x(i, j);
    const IntMatrix m = random_symplectic(rng, space);
    const IntMatrix conj = m * level * symplectic_inverse(m, space);
    if (!is_level_trivial(conj, n) || !is_level_trivial(conj * level, n)) result.ok = false;
    ++result.samples;
  }
  return result;
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }

}  // namespace

CoverCertificate build_certificate(int degree, const CertificateOptions& options) {
  if (degree < 2) throw Error(ErrorCode::InvalidDegree, "cover degree must be at least 2, got " + std::to_string(degree));
  const bool homology_mode = options.mode == CertificateMode::HomologyVerified;
  if (homology_mode && degree > options.homology_cap)
    throw Error(ErrorCode::InvalidDegree, "homology-verified mode is capped at degree " +
                                              std::to_string(options.homology_cap) + ", got " + std::to_string(degree));

  const IntersectionLedger ledger = derive_construction_ledger(base_construction_ledger());
  const SymplecticSpace space = ledger.space();
  const std::int64_t n = degree;

  CoverCertificate cert;
  cert.degree = n;
  cert.cover_genus = n + 1;
  cert.mode = options.mode;
  cert.seed = options.seed;
  cert.ledger = ledger.entries();
  cert.spreading = spreading_constant(ledger);

  const std::int64_t i_beta = ledger.require_geometric("phi_beta", "alpha");
  const std::int64_t i_alpha = ledger.require_geometric("phi_alpha", "alpha");
  cert.facts.push_back({"spreading",
                        "s = i(phi_beta, alpha) + i(phi_alpha, alpha) = " + fmt_int(i_beta) + " + " + fmt_int(i_alpha) +
                            " = " + fmt_int(cert.spreading),
                        FactStatus::Verified, "m (i(phi beta, alpha) + i(phi alpha, alpha)) + 1 <= g"});

  if (n > cert.spreading) {
    cert.bound = spreading_bound(n, cert.spreading);
    const auto& b = *cert.bound;
    cert.facts.push_back({"m_max",
                          "m_max = floor((n - 1) / s) = " + fmt_int(b.m_max) + " satisfies " + fmt_int(b.spreading) +
                              " m + 1 <= " + fmt_int(n) + (b.equality_case ? " with equality" : " strictly"),
                          FactStatus::Verified, "576 m + 1 <= g"});
    cert.facts.push_back({"distance",
                          "d_C(alpha~, f~^m alpha~) <= 2 for m = m_max, middle vertex: " + b.middle_vertex,
                          FactStatus::Cited, "d_C(alpha~, f~^m alpha~) <= 2"});
    cert.facts.push_back({"bound",
                          "ell_C(f~) <= 2 / m_max <= 2s / (n - s); in cover genus h = n + 1 this is 2s / (h - s - 1)",
                          FactStatus::Verified, "ell_C(f_g) <= 1152 / (g - 577)"});
  } else if (homology_mode) {
    cert.bound_omitted = "degree " + fmt_int(n) + " <= s = " + fmt_int(cert.spreading) + ": no m >= 1 exists";
  } else {
    spreading_bound(n, cert.spreading);  // throws DegreeTooSmall
  }

  ClassTable classes;
  for (const auto& id : ledger.curve_order())
    if (const auto& c = ledger.curve(id).h1_class) classes.emplace(id, *c);
  const H1Vector alpha = classes.at("alpha");

  const IntMatrix phi = word_action(TwistWord::parse("lambda beta^-1"), classes, space);
  require(is_torelli(phi), ErrorCode::WitnessFailure, "phi = T_lambda T_beta^-1 is Torelli");
  cert.facts.push_back({"phi_torelli", "phi = T_lambda T_beta^-1 is Torelli since [lambda] = [beta] = 0",
                        FactStatus::Verified, "phi is Torelli"});

  const IntMatrix f = word_action(TwistWord::parse(kConstructionWord), classes, space);
  require(H1Vector(symplectic_inverse(f, space).apply(alpha.coords())) == alpha, ErrorCode::WitnessFailure,
          "[f^-1(alpha)] = [alpha]");
  cert.facts.push_back({"f_lifts", "[f^-1(alpha)] = [alpha], so f preserves the kernel of <., alpha> mod n and lifts",
                        FactStatus::Verified, "[f^-1(alpha)] = [alpha]"});

  cert.witness = non_torelli_witness(degree, ledger);
  cert.facts.push_back({"non_torelli",
                        "w = n([f(eta)] - [eta]) = " + format_vector(cert.witness) +
                            " is nonzero; p_*[f~ eta~] = n[f(eta)] and p_*[eta~] = n[eta], so f~ is not Torelli",
                        FactStatus::Verified, "[f(eta)] = [T_alpha^-1 eta] != [eta]"});

  // Homology shadow of f~ = T_B (phi~ T_B^-1 phi~^-1)(phi~ T_A^-1 phi~^-1) on the base.
  cert.word_identity =
      "f~ = T_{p^-1(beta)} (phi~ T_{p^-1(beta)}^-1 phi~^-1) (phi~ T_{p^-1(alpha)}^-1 phi~^-1)";
  const IntMatrix expanded = word_action(
      TwistWord::parse("beta lambda beta^-1 beta^-1 beta lambda^-1 lambda beta^-1 alpha^-1 beta lambda^-1"), classes,
      space);
  require(expanded == f, ErrorCode::WitnessFailure, "word identity on H_1(S_2)");
  cert.facts.push_back({"word_identity",
                        "f = T_beta (phi T_beta^-1 phi^-1)(phi T_alpha^-1 phi^-1) holds on H_1(S_2); lifting gives " +
                            cert.word_identity,
                        FactStatus::Verified, "<<f~>> <= <<T_{p^-1(beta)}, T_{p^-1(alpha)}>>"});

  const LevelSample level = check_conjugation_invariance(n, options.seed, options.conjugation_samples);
  require(level.ok, ErrorCode::WitnessFailure, "conjugation invariance of the level-n kernel");
  cert.facts.push_back({"conjugation_invariance",
                        "M (I + nX) M^-1 = I mod n on " + std::to_string(level.samples) +
                            " random symplectic conjugators (seed " + std::to_string(options.seed) + ")",
                        FactStatus::Verified, "kernel of a canonical homomorphism"});

  if (homology_mode) {
    const CyclicCover cover = build_cover(degree);
    const SurfaceHomology h = SurfaceHomology::compute(cover.complex());
    const SymplecticSpace cover_space = h.space();
    require(h.rank() == 2 * static_cast<std::size_t>(cover.genus()), ErrorCode::HomologyRankError, "H_1 rank 2(n+1)");
    cert.facts.push_back({"cover_complex",
                          "cover complex: chi = " + std::to_string(cover.complex().euler_characteristic()) +
                              ", H_1 free of rank " + std::to_string(h.rank()) + ", unimodular intersection form",
                          FactStatus::Verified, "gluing g copies of the resulting surface"});

    const LiftedCurve beta_lift = lift_curve(beta_curve(), cover, &h);
    require(beta_lift.components.size() == static_cast<std::size_t>(n) && beta_lift.pushforward_ok &&
                beta_lift.deck_permutes,
            ErrorCode::LiftError, "lift of beta has n deck-permuted components");
    for (const auto& c : beta_lift.classes)
      require(c.is_zero(), ErrorCode::LiftError, "each component of the preimage of beta is separating");
    require(lifted_multitwist_matrix(beta_lift, cover_space).is_identity(), ErrorCode::LiftError,
            "T_{p^-1(beta)} is Torelli");
    cert.facts.push_back({"beta_lift_separating",
                          "each of the " + fmt_int(n) +
                              " components of the preimage of beta is null-homologous, so T_{p^-1(beta)} is Torelli",
                          FactStatus::Verified, "each component of p^{-1}(beta) is separating"});

    const LiftedCurve alpha_lift = lift_curve(alpha_curve(), cover, &h);
    require(alpha_lift.components.size() == static_cast<std::size_t>(n) && alpha_lift.pushforward_ok &&
                alpha_lift.deck_permutes,
            ErrorCode::LiftError, "lift of alpha has n deck-permuted components");
    for (const auto& c : alpha_lift.classes)
      require(c == alpha_lift.classes.front(), ErrorCode::LiftError, "components of the preimage of alpha are homologous");
    const IntMatrix ta = lifted_multitwist_matrix(alpha_lift, cover_space);
    require(ta == transvection_matrix(alpha_lift.classes.front(), n, cover_space), ErrorCode::LiftError,
            "T_{p^-1(alpha)} acts as T_{alpha~}^n");
    require(is_level_trivial(ta, n), ErrorCode::LiftError, "T_{p^-1(alpha)} = I mod n");
    require(!ta.is_identity(), ErrorCode::LiftError, "alpha~ is nonseparating");
    cert.facts.push_back({"alpha_lift_level",
                          "the " + fmt_int(n) + " components of the preimage of alpha share the class " +
                              alpha_lift.classes.front().to_string() +
                              ", so T_{p^-1(alpha)} = T_{alpha~}^n = I mod n on H_1(S_{n+1})",
                          FactStatus::Verified, "acts trivially on H_1(S_{g+1}; Z/gZ)"});

    const LiftedCurve eta_lift = lift_curve(eta_curve(), cover, &h);
    require(eta_lift.components.size() == 1 && eta_lift.pushforward_ok, ErrorCode::LiftError,
            "eta lifts to one curve with p_*[eta~] = n[eta]");
    cert.facts.push_back({"eta_lift", "eta (winding " + std::to_string(eta_lift.winding) +
                                          ") lifts to a single curve eta~ with p_*[eta~] = n[eta] on chains",
                          FactStatus::Verified, "[p(eta~)] = g[eta]"});

    H1Vector e1 = cover_space.a(1);
    require(!is_level_trivial(transvection_matrix(e1, 1, cover_space), n), ErrorCode::WitnessFailure,
            "T_{e_1} is not level-n trivial");
    cert.facts.push_back({"properness",
                          "the twist along the first symplectic basis curve of the cover is not = I mod n",
                          FactStatus::Verified, "non-trivial and proper subgroup"});
  } else {
    cert.facts.push_back({"beta_lift_separating",
                          "each component of the preimage of beta is separating, so T_{p^-1(beta)} is Torelli",
                          FactStatus::Asserted, "each component of p^{-1}(beta) is separating"});
    const SymplecticSpace small(2);
    const H1Vector v = small.a(2);
    require(is_level_trivial(transvection_matrix(v, n, small), n), ErrorCode::LiftError, "T_v^n = I mod n");
    cert.facts.push_back({"alpha_lift_level",
                          "components of the preimage of alpha are pairwise homologous, so T_{p^-1(alpha)} = "
                          "T_{alpha~}^n = I + n <alpha~, .> alpha~ = I mod n",
                          FactStatus::Asserted, "acts trivially on H_1(S_{g+1}; Z/gZ)"});
    // T_{a_1} on H_1(S_{n+1}) is this block plus the identity.
    const SymplecticSpace block(1);
    require(!is_level_trivial(transvection_matrix(block.a(1), 1, block), n), ErrorCode::WitnessFailure,
            "T_{a_1} is not level-n trivial");
    cert.facts.push_back({"properness", "T_{a_1} is not = I mod n (its a_1/b_1 block is [[1, 1], [0, 1]])",
                          FactStatus::Verified, "non-trivial and proper subgroup"});
  }

  cert.facts.push_back({"pseudo_anosov",
                        "f~ = T_{p^-1(beta)} T_{p^-1(phi beta)}^-1 T_{p^-1(phi alpha)}^-1 has Penner shape on a "
                        "filling pair, hence is pseudo-Anosov",
                        FactStatus::Cited, "f~ is pseudo-Anosov"});
  cert.facts.push_back({"not_normal_generator",
                        "<<f~>> lies in the level-" + fmt_int(n) +
                            " kernel, which misses T_{a_1}; f~ is a non-Torelli pseudo-Anosov and not a normal generator",
                        FactStatus::Verified, "f_g is not a normal generator"});

  cert.conventions = {
      "basis a_1, b_1, ..., a_g, b_g with <a_i, b_i> = +1",
      "twist words compose like functions: the leftmost letter acts last",
      "[alpha] = a_2, [beta] = 0, [eta] = b_2, [xi] unset; <eta, alpha> = -1, which fixes only the sign of the witness",
      "edge voltage <[e], alpha> mod n; cover sheets are indexed 0..n-1 and the deck shift is j -> j + 1",
      "the homology action of phi~ is never computed",
  };
  return cert;
}

}  // namespace twistcert
