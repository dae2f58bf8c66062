#pragma once

// Normal-generation verdicts from certified or asserted facts about a
// mapping class. The engine combines facts; it never classifies.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistcert/int_matrix.hpp"

namespace twistcert {

struct CoverCertificate;
struct StretchCertificate;

struct PseudoAnosovFact {
  double lambda = 0.0;
  double l_teich = 0.0;
  bool certified = false;  // produced by the Penner pipeline rather than asserted
  std::string word;
  friend bool operator==(const PseudoAnosovFact&, const PseudoAnosovFact&) = default;
};

struct PartlyPseudoAnosovFact {
  int subsurface_genus = 0;
  bool invariant = false;
  bool restriction_pa = false;
  double l_teich = 0.0;
  friend bool operator==(const PartlyPseudoAnosovFact&, const PartlyPseudoAnosovFact&) = default;
};

struct FiniteOrderFact {
  long long order = 0;
  bool hyperelliptic_involution = false;
  friend bool operator==(const FiniteOrderFact&, const FiniteOrderFact&) = default;
};

struct MappingClassProfile {
  int genus = 2;
  bool closed = true;
  int punctures = 0;
  std::optional<PseudoAnosovFact> pseudo_anosov;
  std::optional<PartlyPseudoAnosovFact> partly_pseudo_anosov;
  std::optional<FiniteOrderFact> finite_order;
  std::optional<bool> torelli;  // asserted
  std::optional<IntMatrix> homology_matrix;
  std::vector<std::int64_t> level_trivial_moduli;
  std::string label;

  friend bool operator==(const MappingClassProfile&, const MappingClassProfile&) = default;
};

enum class Decision { NormalGenerator, NotNormalGenerator, ContainsCommutatorSubgroup, Inconclusive };
std::string to_string(Decision d);
Decision decision_from_string(const std::string& text);

struct Verdict {
  Decision decision = Decision::Inconclusive;
  std::string rule;
  std::vector<std::string> anchors;
  std::vector<std::string> inputs_used;
  std::vector<std::string> asserted_inputs;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct VerdictOptions {
  // Also accept an invariant subsurface of genus >= 1 when the whole
  // surface has genus >= 3 (a weaker variant of the partly pA rule).
  bool bkw_weak = false;
};

// (1/2) log 2; comparisons allow kThresholdSlack for rounding in log.
double teichmuller_threshold();
inline constexpr double kThresholdSlack = 1e-12;
inline constexpr double kLogConsistency = 1e-9;

// Throws InconsistentProfile for contradictory input.
Verdict apply_rules(const MappingClassProfile& profile, const VerdictOptions& options = {});

MappingClassProfile profile_from_certificate(const CoverCertificate& cert);
PseudoAnosovFact pseudo_anosov_fact(const StretchCertificate& cert);

}  // namespace twistcert
