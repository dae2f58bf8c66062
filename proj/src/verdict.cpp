#include "twistcert/verdict.hpp"

#include <cmath>

#include "twistcert/cover.hpp"
#include "twistcert/error.hpp"
#include "twistcert/penner.hpp"
#include "twistcert/symplectic.hpp"

namespace twistcert {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::NormalGenerator: return "NormalGenerator";
    case Decision::NotNormalGenerator: return "NotNormalGenerator";
    case Decision::ContainsCommutatorSubgroup: return "ContainsCommutatorSubgroup";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Decision decision_from_string(const std::string& text) {
  for (Decision d : {Decision::NormalGenerator, Decision::NotNormalGenerator, Decision::ContainsCommutatorSubgroup,
                     Decision::Inconclusive})
    if (to_string(d) == text) return d;
  throw Error(ErrorCode::ParseError, "unknown decision '" + text + "'");
}

double teichmuller_threshold() { return 0.5 * std::log(2.0); }

namespace {

bool below_threshold(double l_teich) { return l_teich <= teichmuller_threshold() + kThresholdSlack; }

void inconsistent(const std::string& why) { throw Error(ErrorCode::InconsistentProfile, why); }

void check_profile(const MappingClassProfile& p) {
  if (p.genus < 2) inconsistent("genus must be at least 2");
  if (p.punctures < 0) inconsistent("negative puncture count");
  if (p.closed && p.punctures > 0) inconsistent("a closed surface has no punctures");
  if (p.pseudo_anosov && p.finite_order) inconsistent("pseudo-Anosov and finite order are exclusive");
  if (p.pseudo_anosov) {
    const auto& pa = *p.pseudo_anosov;
    if (!(pa.lambda > 1.0)) inconsistent("stretch factor must exceed 1");
    if (std::abs(pa.l_teich - std::log(pa.lambda)) > kLogConsistency * std::max(1.0, std::abs(pa.l_teich)))
      inconsistent("l_teich differs from log(lambda)");
  }
  if (p.finite_order && p.finite_order->order < 1) inconsistent("finite order must be positive");
  if (p.finite_order && p.finite_order->hyperelliptic_involution && p.finite_order->order != 2)
    inconsistent("a hyperelliptic involution has order 2");
  if (p.partly_pseudo_anosov) {
    const auto& pp = *p.partly_pseudo_anosov;
    if (pp.subsurface_genus < 0 || pp.subsurface_genus > p.genus) inconsistent("subsurface genus out of range");
    if (pp.l_teich < 0) inconsistent("negative translation length");
  }
  if (p.homology_matrix) {
    const SymplecticSpace space(p.genus);
    const auto& m = *p.homology_matrix;
    if (m.rows() != space.dimension() || m.cols() != space.dimension())
      inconsistent("homology matrix must be " + std::to_string(space.dimension()) + " x " +
                   std::to_string(space.dimension()));
    if (!is_symplectic(m, space)) inconsistent("homology matrix is not symplectic");
    if (p.torelli && *p.torelli != m.is_identity())
      inconsistent(*p.torelli ? "Torelli asserted with a nonidentity homology matrix"
                              : "non-Torelli asserted with the identity homology matrix");
    if (p.finite_order && !power(m, static_cast<unsigned long long>(p.finite_order->order)).is_identity())
      inconsistent("homology matrix does not have the asserted finite order");
  }
  for (auto m : p.level_trivial_moduli)
    if (m < 2) inconsistent("level modulus must be at least 2");
}

}  // namespace

Verdict apply_rules(const MappingClassProfile& p, const VerdictOptions& options) {
  check_profile(p);
  Verdict v;
  auto asserted = [&](const std::string& what) { v.asserted_inputs.push_back(what); };

  // OBS-Torelli
  const bool torelli_matrix = p.homology_matrix && p.homology_matrix->is_identity();
  if (torelli_matrix || (p.torelli && *p.torelli)) {
    v.decision = Decision::NotNormalGenerator;
    v.rule = "OBS-Torelli";
    v.anchors = {"the Torelli group is a non-trivial and proper normal subgroup"};
    if (torelli_matrix) {
      v.inputs_used.push_back("homology_matrix = I");
    } else {
      v.inputs_used.push_back("torelli");
      asserted("torelli");
    }
    return v;
  }

  // OBS-level: the level-m kernel is proper because T_{a_1} is not in it.
  // T_{a_1} is the identity outside its a_1/b_1 block, so the block decides.
  for (auto m : p.level_trivial_moduli) {
    const SymplecticSpace block(1);
    if (is_level_trivial(transvection_matrix(block.a(1), 1, block), m)) continue;
    if (p.homology_matrix && !is_level_trivial(*p.homology_matrix, m))
      inconsistent("homology matrix is not level-" + std::to_string(m) + " trivial");
    v.decision = Decision::NotNormalGenerator;
    v.rule = "OBS-level";
    v.anchors = {"kernel of a canonical homomorphism Mod(S) -> Aut(H_1(S; Z/mZ))",
                 "T_{a_1} is not trivial mod " + std::to_string(m)};
    v.inputs_used.push_back("level_trivial_moduli: " + std::to_string(m));
    if (p.homology_matrix)
      v.inputs_used.push_back("homology_matrix = I mod " + std::to_string(m));
    else
      asserted("level_trivial_moduli");
    return v;
  }

  // LM-pA
  if (p.pseudo_anosov && below_threshold(p.pseudo_anosov->l_teich)) {
    v.rule = "LM-pA";
    v.inputs_used.push_back("pseudo_anosov");
    v.inputs_used.push_back("l_teich <= (1/2) log 2");
    if (!p.pseudo_anosov->certified) asserted("pseudo_anosov");
    if (p.closed && p.genus >= 3) {
      v.decision = Decision::NormalGenerator;
      v.anchors = {"l_T(f) <= (1/2) log 2", "closed and of genus at least three: <<f>> = Mod(S)"};
    } else {
      v.decision = Decision::ContainsCommutatorSubgroup;
      v.anchors = {"l_T(f) <= (1/2) log 2", "[PMod(S), PMod(S)] <= <<f>>"};
    }
    return v;
  }

  // BKW
  if (p.partly_pseudo_anosov && p.closed) {
    const auto& pp = *p.partly_pseudo_anosov;
    const bool shape = pp.invariant && pp.restriction_pa && below_threshold(pp.l_teich);
    const bool strong = pp.subsurface_genus >= 3;
    const bool weak = options.bkw_weak && pp.subsurface_genus >= 1 && p.genus >= 3;
    if (shape && (strong || weak)) {
      v.decision = Decision::NormalGenerator;
      v.rule = strong ? "BKW" : "BKW-weak";
      v.anchors = {"f|_A is pseudo-Anosov", strong ? "A has genus at least three"
                                                   : "A has at least one genus and S is of genus at least three"};
      v.inputs_used = {"partly_pseudo_anosov", "l_teich <= (1/2) log 2"};
      asserted("partly_pseudo_anosov");
      return v;
    }
  }

  // LM-finite
  if (p.finite_order && !p.finite_order->hyperelliptic_involution && p.closed && p.genus >= 3 &&
      p.finite_order->order > 1) {
    v.decision = Decision::NormalGenerator;
    v.rule = "LM-finite";
    v.anchors = {"f is of finite order and is not a hyperelliptic involution"};
    v.inputs_used = {"finite_order"};
    asserted("finite_order");
    return v;
  }

  v.decision = Decision::Inconclusive;
  v.rule = "";
  return v;
}

MappingClassProfile profile_from_certificate(const CoverCertificate& cert) {
  MappingClassProfile p;
  p.genus = static_cast<int>(cert.cover_genus);
  p.closed = true;
  p.torelli = false;
  p.level_trivial_moduli = {cert.degree};
  p.label = "cyclic cover construction, degree " + std::to_string(cert.degree);
  return p;
}

PseudoAnosovFact pseudo_anosov_fact(const StretchCertificate& cert) {
  return PseudoAnosovFact{cert.lambda, cert.l_teich, true, cert.word.to_string()};
}

}  // namespace twistcert
