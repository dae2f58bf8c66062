#pragma once

// Pseudo-Anosov certification for products of positive twists on one
// multicurve and negative twists on another (Penner's construction).
//
// Filling is not computed from curves; the caller supplies the crossing
// pattern of c and d as a ribbon graph and verify_filling checks it.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistcert/int_matrix.hpp"
#include "twistcert/symplectic.hpp"

namespace twistcert {

enum class Family { C, D };

struct RibbonSlot {
  std::string curve;
  bool outgoing = true;  // the curve leaves the crossing through this slot
};

struct RibbonVertex {
  std::string id;
  std::array<RibbonSlot, 4> slots;  // counterclockwise
};

struct SlotRef {
  std::size_t vertex = 0;
  int slot = 0;
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct RibbonEdge {
  std::string id;
  SlotRef from;  // an outgoing slot
  SlotRef to;    // an incoming slot of the same curve
  std::string curve;
};

// Text format, one item per line ('#' starts a comment):
//   genus 2
//   c-curves c1 c2 c3
//   d-curves d1
//   v1: c1+ d1- c1- d1+        four slots in counterclockwise order
//   e1: v1.0 v1.2 c1           from an outgoing slot to an incoming slot
class RibbonConfig {
 public:
  static RibbonConfig parse(std::string_view text);

  std::vector<std::string> c_curves;
  std::vector<std::string> d_curves;
  std::optional<int> genus;
  std::vector<RibbonVertex> vertices;
  std::vector<RibbonEdge> edges;

  // Throws MalformedRibbon when a structural invariant fails.
  void validate() const;

  std::optional<Family> family_of(std::string_view curve) const;
  // N[i][j] = number of crossings of c_i with d_j.
  IntMatrix intersection_matrix() const;

  // Drop a curve and splice the strands of the curves it crossed.
  RibbonConfig without_curve(const std::string& curve) const;

  std::string to_text() const;
};

struct FillingReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  std::vector<std::size_t> face_lengths;
  bool connected = false;
  long long euler_characteristic = 0;
  std::optional<long long> inferred_genus;
  std::vector<std::string> uncrossed_curves;
  bool filling = false;
  std::string reason;
};

FillingReport verify_filling(const RibbonConfig& ribbon, int target_genus);

struct PennerConfig {
  std::vector<std::string> c_curves;
  std::vector<std::string> d_curves;
  IntMatrix intersections;  // rows c_i, columns d_j
  std::optional<RibbonConfig> ribbon;
  int target_genus = 2;

  static PennerConfig from_ribbon(const RibbonConfig& ribbon, int target_genus);
  static PennerConfig single_pair(long long crossings, std::string c = "c", std::string d = "d");
  void validate() const;
  std::optional<std::size_t> c_index(std::string_view id) const;
  std::optional<std::size_t> d_index(std::string_view id) const;
};

// Positive powers of c-twists, negative powers of d-twists, every curve used.
bool validate_penner_word(const TwistWord& word, const PennerConfig& config);

// Coordinates c_1..c_k, d_1..d_m. Letter c_i^p is I + p E_i, with E_i adding
// sum_j N[i][j] v_{d_j} into coordinate c_i; letter d_j^{-q} is I + q F_j.
// The product follows the word, leftmost factor first.
IntMatrix transition_matrix(const TwistWord& word, const PennerConfig& config);

struct StretchResult {
  double lambda = 0.0;
  double l_teich = 0.0;
  long iterations = 0;
  double residual = 0.0;
  std::optional<double> charpoly_lambda;
};

inline constexpr double kRayleighTolerance = 1e-13;
inline constexpr long kMaxPowerIterations = 100000;
inline constexpr double kCharpolyTolerance = 1e-9;

bool is_primitive(const IntMatrix& m);

// Perron-Frobenius eigenvalue by power iteration; sizes <= 4 are cross
// checked against the greatest real root of the characteristic polynomial.
StretchResult stretch_factor(const IntMatrix& m);

// Integer coefficients, lowest degree first, of det(xI - M).
std::vector<Integer> characteristic_polynomial(const IntMatrix& m);

// Two-by-two representation of the full multitwists T_c, T_d:
// T_c^p -> [[1, p sqrt(mu)], [0, 1]], T_d^q -> [[1, 0], [-q sqrt(mu), 1]],
// mu the top eigenvalue of N N^T. Throws NotHyperbolic when |trace| <= 2.
double thurston_oracle(const TwistWord& word, const IntMatrix& intersections, std::string_view c_name = "c",
                       std::string_view d_name = "d");

enum class StretchMethod { PennerTransition, ThurstonTrace };
std::string to_string(StretchMethod m);

struct StretchCertificate {
  TwistWord word;
  double lambda = 0.0;
  double l_teich = 0.0;
  IntMatrix matrix;
  StretchMethod method = StretchMethod::PennerTransition;
  long iterations = 0;
  double residual = 0.0;
  FillingReport filling;
  std::string scope_note;
};

// Filling check, word shape check, transition matrix and stretch factor.
StretchCertificate certify_penner_word(const TwistWord& word, const RibbonConfig& ribbon, int target_genus);

}  // namespace twistcert
