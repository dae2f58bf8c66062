#pragma once

// Degree-n cyclic cover of the genus-2 surface defined by the homomorphism
// c -> <c, alpha> mod n, together with the non-Torelli / small curve-graph
// translation length certificate built on it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistcert/int_matrix.hpp"
#include "twistcert/ledger.hpp"
#include "twistcert/surface_complex.hpp"
#include "twistcert/symplectic.hpp"

namespace twistcert {

inline constexpr const char* kToolVersion = "twistcert 0.1.0";

// Edges of the one-vertex genus-2 base complex. Faces, positively oriented:
//   beta b1 a1 b1^-1 a1^-1   and   b2 a2 b2^-1 a2^-1 beta^-1
// so beta separates the a1/b1 handle from the a2/b2 handle and the edge
// loops satisfy <a_i, b_i> = +1.
enum BaseEdge : std::size_t { kA1 = 0, kB1 = 1, kA2 = 2, kB2 = 3, kBeta = 4, kBaseEdgeCount = 5 };

const SurfaceComplex& base_surface();
// Class of a base edge path in H_1(S_2) with the edge loops a1, b1, a2, b2
// as the standard basis.
H1Vector base_class(const std::vector<Step>& path);
std::vector<Step> parse_base_path(const std::string& text);  // e.g. "a2 b2^-1 beta"

struct BaseCurve {
  std::string id;
  std::vector<Step> path;
};
BaseCurve alpha_curve();
BaseCurve beta_curve();
BaseCurve eta_curve();

class CyclicCover {
 public:
  int degree() const { return degree_; }
  int genus() const { return degree_ + 1; }
  const SurfaceComplex& complex() const { return complex_; }
  // Voltage of each base edge: <[e], alpha> reduced mod n into [0, n).
  const std::vector<long long>& voltages() const { return voltages_; }

  std::size_t lifted_edge(std::size_t base_edge, long long sheet) const;
  // The deck transformation j -> j + shift on edge chains.
  Chain deck_shift(const Chain& chain, long long shift) const;
  // Projection of a cover chain to the base.
  Chain pushforward(const Chain& chain) const;

 private:
  friend CyclicCover voltage_cover(int degree);
  CyclicCover(int degree, SurfaceComplex complex, std::vector<long long> voltages)
      : degree_(degree), complex_(std::move(complex)), voltages_(std::move(voltages)) {}

  int degree_;
  SurfaceComplex complex_;
  std::vector<long long> voltages_;
};

// Any degree >= 1 (degree 1 is the base itself).
CyclicCover voltage_cover(int degree);
// Throws InvalidDegree for n < 2; verifies chi and connectivity.
CyclicCover build_cover(int degree);

struct HomologyReport {
  std::size_t rank = 0;
  IntMatrix form;  // raw intersection form, unimodular and skew
  bool unimodular = false;
};
HomologyReport homology_basis(const CyclicCover& cover);

struct LiftedCurve {
  std::string base_id;
  long long winding = 0;  // <base, alpha>
  std::vector<Chain> components;
  std::vector<H1Vector> classes;  // filled when a homology is supplied
  bool pushforward_ok = false;
  bool deck_permutes = false;
};

// Traces every lift of the base path sheet by sheet. Throws LiftError when
// the path is not closed or a traced lift fails to close up.
LiftedCurve lift_curve(const BaseCurve& curve, const CyclicCover& cover,
                       const SurfaceHomology* homology = nullptr);

// Product of the transvections along the component classes; checked
// against I + sum_j (T_j - I), which it must equal for disjoint components.
IntMatrix lifted_multitwist_matrix(const LiftedCurve& lift, const SymplecticSpace& space);

// w = n ([f(eta)] - [eta]) in H_1(S_2) for f = beta phi_beta^-1 phi_alpha^-1,
// classes read from the ledger. Throws WitnessFailure when w = 0.
H1Vector non_torelli_witness(int degree, const IntersectionLedger& ledger);
inline constexpr const char* kConstructionWord = "beta phi_beta^-1 phi_alpha^-1";

// s = i(phi_beta, alpha) + i(phi_alpha, alpha) from the ledger.
std::int64_t spreading_constant(const IntersectionLedger& ledger);

struct SpreadingBound {
  std::int64_t degree = 0;
  std::int64_t spreading = 0;
  std::int64_t m_max = 0;
  double bound_exact = 0.0;        // 2 / m_max
  double bound_paper = 0.0;        // 2s / (n - s)
  double bound_genus_form = 0.0;   // the same bound written in the cover genus h = n + 1
  bool equality_case = false;      // s * m_max + 1 == n
  std::string middle_vertex;       // the curve disjoint from both ends
  friend bool operator==(const SpreadingBound&, const SpreadingBound&) = default;
};

// Throws DegreeTooSmall when n <= s.
SpreadingBound spreading_bound(std::int64_t degree, std::int64_t spreading);

enum class CertificateMode { Arithmetic, HomologyVerified };
std::string to_string(CertificateMode mode);
CertificateMode certificate_mode_from_string(const std::string& text);

enum class FactStatus { Verified, Asserted, Cited };
std::string to_string(FactStatus status);
FactStatus fact_status_from_string(const std::string& text);

struct Fact {
  std::string id;
  std::string claim;
  FactStatus status = FactStatus::Verified;
  std::string anchor;
  friend bool operator==(const Fact&, const Fact&) = default;
};

struct CertificateOptions {
  CertificateMode mode = CertificateMode::Arithmetic;
  std::uint64_t seed = 1;
  int homology_cap = 64;
  int conjugation_samples = 32;
};

struct CoverCertificate {
  std::int64_t degree = 0;
  std::int64_t cover_genus = 0;
  CertificateMode mode = CertificateMode::Arithmetic;
  std::int64_t spreading = 0;
  std::optional<SpreadingBound> bound;
  std::string bound_omitted;  // reason, when bound is empty
  H1Vector witness;
  std::vector<Fact> facts;
  std::string word_identity;
  std::vector<LedgerEntry> ledger;
  std::vector<std::string> conventions;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;

  const Fact* find(const std::string& id) const;
  friend bool operator==(const CoverCertificate&, const CoverCertificate&) = default;
};

// Arithmetic mode throws DegreeTooSmall for n <= s. Homology-verified mode
// builds the cover (n <= homology_cap), re-proves the lift facts and omits
// the bound when n <= s. Any failed clause throws with the clause named.
CoverCertificate build_certificate(int degree, const CertificateOptions& options = {});

}  // namespace twistcert
