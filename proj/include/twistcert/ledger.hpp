#pragma once

// Bookkeeping of geometric intersection numbers between named curves.
//
// Values are either asserted (base data) or derived by a twist-image rule.
// An intersection that was never recorded is Unknown, never zero: zero is a
// geometric claim (the curves are disjoint).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistcert/symplectic.hpp"

namespace twistcert {

enum class Provenance { Asserted, Derived };

std::string to_string(Provenance p);

struct LedgerCurve {
  std::string id;
  std::optional<H1Vector> h1_class;  // unset when no computation needs it
  // Null-homologous iff separating; unknown while the class is unset.
  std::optional<bool> separating() const;
};

struct LedgerEntry {
  std::string a;
  std::string b;
  std::int64_t value = 0;
  Provenance provenance = Provenance::Asserted;
  std::string rule;  // empty for asserted entries
  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

struct SequenceStep {
  std::string from;
  std::string to;
  bool disjoint = false;
  bool from_nonseparating = false;
  bool to_nonseparating = false;
  bool not_bounding_pair = false;
  bool ok() const { return disjoint && from_nonseparating && to_nonseparating && not_bounding_pair; }
};

struct SequenceReport {
  bool endpoints_ok = false;
  std::vector<SequenceStep> steps;
  bool pass = false;
};

class IntersectionLedger {
 public:
  explicit IntersectionLedger(SymplecticSpace space) : space_(space) {}

  const SymplecticSpace& space() const { return space_; }

  const LedgerCurve& register_curve(const std::string& id, std::optional<H1Vector> h1_class);
  void set_geometric(const std::string& a, const std::string& b, std::int64_t value);
  // Re-inserts an exported entry with its provenance (used on import).
  void restore_entry(const LedgerEntry& entry);

  // Registers T_c^n(x) under `name` (or "T_<c>^<n>(<x>)") and records every
  // intersection number the twist rules determine. Returns the new id.
  std::string derive_twist_image(const std::string& c, long long n, const std::string& x,
                                 std::optional<std::string> name = std::nullopt);

  bool has_curve(const std::string& id) const { return curves_.count(id) != 0; }
  const LedgerCurve& curve(const std::string& id) const;
  std::optional<std::int64_t> geometric(const std::string& a, const std::string& b) const;
  std::int64_t require_geometric(const std::string& a, const std::string& b) const;
  const LedgerEntry* entry(const std::string& a, const std::string& b) const;

  bool is_bounding_pair(const std::string& a, const std::string& b) const;
  SequenceReport check_curve_sequence(const std::vector<std::string>& seq, const std::string& start,
                                      const std::string& end) const;

  // Registration order; entries sorted by (a, b) in registration order.
  const std::vector<std::string>& curve_order() const { return order_; }
  std::vector<LedgerEntry> entries() const;

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  IntersectionLedger unfrozen_copy() const;
  // Derivation on a frozen ledger: copy, derive, freeze the copy.
  IntersectionLedger with_twist_image(const std::string& c, long long n, const std::string& x,
                                      std::optional<std::string> name = std::nullopt) const;

  friend bool operator==(const IntersectionLedger& l, const IntersectionLedger& r);

 private:
  using Key = std::pair<std::string, std::string>;
  Key key(const std::string& a, const std::string& b) const;
  void require_mutable() const;
  void require_curve(const std::string& id) const;
  void record(const std::string& a, const std::string& b, std::int64_t value, Provenance provenance,
              const std::string& rule);

  SymplecticSpace space_;
  std::map<std::string, LedgerCurve> curves_;
  std::map<std::string, std::size_t> rank_;
  std::vector<std::string> order_;
  std::map<Key, LedgerEntry> entries_;
  bool frozen_ = false;
};

// Genus-2 base data: alpha (class a_2), beta (separating), xi (class unset),
// eta (class b_2); i(xi,beta)=6, i(xi,alpha)=2, i(alpha,beta)=0, i(eta,alpha)=1.
IntersectionLedger base_construction_ledger();

struct TableRow {
  std::string label;
  std::string curve;
  std::string other;
  std::int64_t expected = 0;
  std::optional<std::int64_t> derived;
  bool match() const { return derived && *derived == expected; }
};

struct TableReport {
  std::vector<TableRow> rows;
  bool all_match() const;
};

// Runs lambda = T_xi(beta), phi(alpha) = T_lambda(alpha), phi(beta) = T_lambda(beta)
// on `base` and compares against {i(lambda,beta), i(lambda,alpha), i(phi alpha, alpha),
// i(phi beta, alpha)} = {36, 12, 144, 432}.
TableReport reproduce_intersection_table(const IntersectionLedger& base);

// The derived ledger holding alpha, beta, xi, eta, lambda, phi_alpha, phi_beta.
IntersectionLedger derive_construction_ledger(const IntersectionLedger& base);

}  // namespace twistcert
