// Acceptance gate: one PASS/FAIL line per criterion, with every tolerance
// and time limit pinned here. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ribbon_gen.hpp"
#include "twistcert/cover.hpp"
#include "twistcert/error.hpp"
#include "twistcert/ledger.hpp"
#include "twistcert/penner.hpp"
#include "twistcert/symplectic.hpp"
#include "twistcert/verdict.hpp"

using namespace twistcert;

namespace {

constexpr double kTableSeconds = 0.1;
constexpr double kCertificateSeconds = 0.1;  // per certificate, arithmetic mode
constexpr double kWitnessSeconds = 0.1;
constexpr double kLevelSeconds = 10.0;
constexpr double kSymplecticSeconds = 5.0;
constexpr double kStretchSeconds = 2.0;
constexpr double kVerdictSeconds = 0.1;
constexpr double kFillingSeconds = 1.0;

constexpr double kLambdaAbsTolerance = 1e-9;
constexpr double kOracleRelTolerance = 1e-6;
constexpr double kBoundTolerance = 1e-12;

constexpr int kConjugators = 1000;
constexpr int kRandomWords = 1000;
constexpr int kStretchWords = 100;
constexpr int kRandomRibbons = 100;
constexpr int kMaxGenus = 5;
constexpr int kMaxWordLength = 50;
constexpr int kMaxPennerWordLength = 8;
constexpr int kMaxHomologyDegree = 12;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TwistWord random_twist_word(std::mt19937_64& rng, int length, ClassTable& classes, std::size_t dim) {
  std::uniform_int_distribution<int> pick(1, 8), pw(-3, 3);
  for (int i = 1; i <= 8; ++i) classes["c" + std::to_string(i)] = oracle::random_vector(rng, dim, 2);
  TwistWord w;
  for (int i = 0; i < length; ++i) {
    int p = 0;
    while (p == 0) p = pw(rng);
    w.append("c" + std::to_string(pick(rng)), p);
  }
  return w;
}

// 1. intersection table
Outcome table() {
  Outcome o;
  const IntersectionLedger base = base_construction_ledger();
  o.require(base.geometric("xi", "beta") == 6 && base.geometric("xi", "alpha") == 2 &&
                base.geometric("alpha", "beta") == 0,
            "base data");
  const IntersectionLedger d = derive_construction_ledger(base);
  o.require(d.geometric("lambda", "beta") == 36, "i(lambda, beta) != 36");
  o.require(d.geometric("lambda", "alpha") == 12, "i(lambda, alpha) != 12");
  o.require(d.geometric("phi_alpha", "alpha") == 144, "i(phi alpha, alpha) != 144");
  o.require(d.geometric("phi_beta", "alpha") == 432, "i(phi beta, alpha) != 432");
  o.require(reproduce_intersection_table(base).all_match(), "table report mismatch");
  return o;
}

// 2. cover certificates
Outcome certificates() {
  Outcome o;
  struct Row {
    int n;
    std::int64_t m_max;
    double exact;
  };
  for (const Row& r : {Row{577, 1, 2.0}, Row{1152, 1, 2.0}, Row{1153, 2, 1.0}}) {
    const auto t0 = Clock::now();
    const CoverCertificate c = build_certificate(r.n);
    const double dt = seconds_since(t0);
    const std::string tag = "n=" + std::to_string(r.n) + ": ";
    o.require(dt < kCertificateSeconds, tag + "took " + std::to_string(dt) + " s");
    if (!c.bound) {
      o.require(false, tag + "bound missing");
      continue;
    }
    const double paper = 1152.0 / static_cast<double>(r.n - 576);
    o.require(c.bound->m_max == r.m_max, tag + "m_max");
    o.require(c.bound->bound_exact == r.exact, tag + "bound_exact");
    o.require(std::abs(c.bound->bound_paper - paper) < kBoundTolerance, tag + "bound_paper");
    o.require(c.bound->bound_exact <= c.bound->bound_paper, tag + "bound_exact > bound_paper");
    o.require(c.cover_genus == r.n + 1, tag + "cover genus");
    if (r.n == 577) {
      // genus g = 578 form: 1152 / (g - 577)
      const double genus_form = 1152.0 / static_cast<double>(c.cover_genus - 577);
      o.require(c.cover_genus == 578, tag + "cover genus 578");
      o.require(std::abs(c.bound->bound_genus_form - genus_form) < kBoundTolerance, tag + "genus form");
    }
  }
  return o;
}

// 3. non-Torelli witness
Outcome witness() {
  Outcome o;
  const IntersectionLedger ledger = derive_construction_ledger(base_construction_ledger());
  const SymplecticSpace s(2);
  for (int n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 100, 577, 1152, 1153, 5000}) {
    const H1Vector w = non_torelli_witness(n, ledger);
    o.require(w == Integer(-n) * s.a(2) && !w.is_zero(), "witness at n=" + std::to_string(n));
  }
  return o;
}

// 4. proper normal closure
Outcome level_facts() {
  Outcome o;
  for (int n = 2; n <= kMaxHomologyDegree; ++n) {
    CertificateOptions opt;
    opt.mode = CertificateMode::HomologyVerified;
    const CoverCertificate c = build_certificate(n, opt);
    for (const char* id : {"beta_lift_separating", "alpha_lift_level", "properness", "not_normal_generator"})
      o.require(c.find(id) != nullptr, "n=" + std::to_string(n) + " lacks " + id);

    // recheck the two lifted twists directly
    const CyclicCover cover = build_cover(n);
    const SurfaceHomology h = SurfaceHomology::compute(cover.complex());
    const IntMatrix tb = lifted_multitwist_matrix(lift_curve(beta_curve(), cover, &h), h.space());
    const IntMatrix ta = lifted_multitwist_matrix(lift_curve(alpha_curve(), cover, &h), h.space());
    o.require(tb.is_identity(), "T of beta lift not identity at n=" + std::to_string(n));
    o.require(oracle::congruent_identity(ta, n) && !ta.is_identity(), "T of alpha lift at n=" + std::to_string(n));
    const SymplecticSpace cs = h.space();
    o.require(!oracle::congruent_identity(transvection_matrix(cs.a(1), 1, cs), n), "T_a1 level trivial");
  }

  // M (I + nX) M^-1 = I mod n on random symplectic M
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> genus(1, kMaxGenus), len(1, 12), mod(2, 50), entry(-5, 5);
  for (int t = 0; t < kConjugators; ++t) {
    const int g = genus(rng);
    const SymplecticSpace s(g);
    ClassTable classes;
    const IntMatrix m = word_action(random_twist_word(rng, len(rng), classes, s.dimension()), classes, s);
    const long long n = mod(rng);
    IntMatrix x = IntMatrix::identity(s.dimension());
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) += Integer(n) * entry(rng);
    const IntMatrix conj = m * x * symplectic_inverse(m, s);
    o.require(is_symplectic(m, s), "conjugator not symplectic");
    o.require(oracle::congruent_identity(conj, n), "conjugate leaves the level-n kernel");
  }
  return o;
}

// 5. symplectic suite
Outcome symplectic_suite() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> genus(1, kMaxGenus), len(0, kMaxWordLength);
  for (int t = 0; t < kRandomWords; ++t) {
    const SymplecticSpace s(genus(rng));
    ClassTable classes;
    const TwistWord w = random_twist_word(rng, len(rng), classes, s.dimension());
    const IntMatrix m = word_action(w, classes, s);
    // M^T J M = J computed without the library's check
    const IntMatrix j = s.pairing_matrix();
    o.require(m.transpose() * j * m == j, "M^T J M != J for " + w.to_string());
  }
  for (int g = 2; g <= kMaxGenus; ++g) {
    const SymplecticSpace s(g);
    ClassTable classes{{"sep", s.zero()}, {"c", s.b(1) + s.a(2)}, {"c2", s.b(1) + s.a(2)}};
    o.require(is_torelli(word_action(TwistWord::parse("sep^3"), classes, s)), "separating twist");
    o.require(is_torelli(word_action(TwistWord::parse("c c2^-1"), classes, s)), "bounding pair map");
    o.require(is_torelli(word_action(TwistWord::parse("c^4 sep c2^-4"), classes, s)), "bounding pair power");
  }
  return o;
}

// 6. stretch factors
double trace_lambda(const TwistWord& w, double n) {
  double a = 1, b = 0, c = 0, d = 1;
  for (const auto& l : w.letters()) {
    const double p = static_cast<double>(l.exponent);
    // right-multiply by the letter's 2x2 image
    if (l.curve == "c") {
      b += a * p * n;
      d += c * p * n;
    } else {
      a += b * (-p) * n;
      c += d * (-p) * n;
    }
  }
  return oracle::quadratic_root(std::abs(a + d));
}

Outcome stretch() {
  Outcome o;
  for (long long n = 1; n <= 5; ++n) {
    const StretchResult r = stretch_factor(transition_matrix(TwistWord::parse("c d^-1"), PennerConfig::single_pair(n)));
    const double t = static_cast<double>(n * n + 2);
    const double expected = (t + std::sqrt(t * t - 4.0)) / 2.0;
    o.require(std::abs(r.lambda - expected) < kLambdaAbsTolerance, "lambda at n=" + std::to_string(n));
  }
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> len(2, kMaxPennerWordLength), coin(0, 1), pw(1, 3), cross(1, 5);
  for (int t = 0; t < kStretchWords; ++t) {
    const int l = len(rng);
    TwistWord w;
    for (int i = 0; i < l; ++i) {
      const bool is_c = i == 0 || (i > 1 && coin(rng));
      w.append(is_c ? "c" : "d", is_c ? pw(rng) : -pw(rng));
    }
    const long long n = cross(rng);
    const double expected = trace_lambda(w, static_cast<double>(n));
    const double lambda = stretch_factor(transition_matrix(w, PennerConfig::single_pair(n))).lambda;
    o.require(std::abs(lambda - expected) <= kOracleRelTolerance * expected, "oracle disagrees on " + w.to_string());
  }
  return o;
}

// 7. verdict thresholds
Outcome verdicts() {
  Outcome o;
  auto pa = [](double lambda) {
    MappingClassProfile p;
    p.genus = 3;
    p.closed = true;
    p.pseudo_anosov = PseudoAnosovFact{lambda, std::log(lambda), false, ""};
    return p;
  };
  o.require(apply_rules(pa(std::sqrt(2.0))).decision == Decision::NormalGenerator, "lambda = sqrt 2");
  o.require(apply_rules(pa(1.4143)).decision == Decision::Inconclusive, "lambda = 1.4143");
  MappingClassProfile torelli;
  torelli.genus = 3;
  torelli.homology_matrix = IntMatrix::identity(6);
  o.require(apply_rules(torelli).decision == Decision::NotNormalGenerator, "Torelli profile");
  const Verdict v = apply_rules(profile_from_certificate(build_certificate(577)));
  o.require(v.decision == Decision::NotNormalGenerator && v.rule == "OBS-level", "cover profile");
  return o;
}

// 8. filling checker
Outcome filling() {
  Outcome o;
  const RibbonConfig fig = RibbonConfig::parse(read_file(std::string(TWISTCERT_DATA_DIR) + "/fig_penner.rib"));
  const FillingReport f = verify_filling(fig, 2);
  o.require(f.filling && f.inferred_genus == 2, "sample ribbon does not fill genus 2");
  o.require(!verify_filling(fig.without_curve("d1"), 2).filling, "sample ribbon without d1 still fills");
  std::mt19937_64 rng(17);
  for (int t = 0; t < kRandomRibbons; ++t) {
    const FillingReport r = verify_filling(oracle::random_ribbon(rng), 2);
    const std::size_t total = std::accumulate(r.face_lengths.begin(), r.face_lengths.end(), std::size_t{0});
    o.require(total == 4 * r.vertices, "face lengths do not sum to 4V");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "intersection table 6/36/12/144/432", kTableSeconds, table},
      {2, "cover certificates at 577, 1152, 1153", 3 * kCertificateSeconds, certificates},
      {3, "non-Torelli witness -n a2", kWitnessSeconds, witness},
      {4, "proper normal closure facts", kLevelSeconds, level_facts},
      {5, "random twist words are symplectic", kSymplecticSeconds, symplectic_suite},
      {6, "stretch factors against oracles", kStretchSeconds, stretch},
      {7, "verdict thresholds", kVerdictSeconds, verdicts},
      {8, "filling checker", kFillingSeconds, filling},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double dt = seconds_since(t0);
    if (dt >= c.limit) {
      out.ok = false;
      if (out.detail.empty()) out.detail = "over the time limit";
    }
    std::printf("criterion %d %s: %s (%.3f s, limit %.1f s)%s%s\n", c.id, out.ok ? "PASS" : "FAIL", c.name, dt, c.limit,
                out.detail.empty() ? "" : " ", out.detail.c_str());
    if (!out.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
