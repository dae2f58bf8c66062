#include "twistcert/ledger.hpp"

#include <algorithm>
#include <cstdlib>

#include "twistcert/error.hpp"

namespace twistcert {

std::string to_string(Provenance p) { return p == Provenance::Asserted ? "asserted" : "derived"; }

std::optional<bool> LedgerCurve::separating() const {
  if (!h1_class) return std::nullopt;
  return h1_class->is_zero();
}

IntersectionLedger::Key IntersectionLedger::key(const std::string& a, const std::string& b) const {
  return rank_.at(a) <= rank_.at(b) ? Key{a, b} : Key{b, a};
}

void IntersectionLedger::require_mutable() const {
  if (frozen_) throw Error(ErrorCode::LedgerFrozen, "ledger is frozen; derive on a copy");
}

void IntersectionLedger::require_curve(const std::string& id) const {
  if (!has_curve(id)) throw Error(ErrorCode::UnknownCurve, "curve '" + id + "' is not registered");
}

const LedgerCurve& IntersectionLedger::register_curve(const std::string& id, std::optional<H1Vector> h1_class) {
  require_mutable();
  if (id.empty()) throw Error(ErrorCode::UnknownCurve, "empty curve id");
  if (has_curve(id)) throw Error(ErrorCode::DuplicateCurve, "curve '" + id + "' already registered");
  if (h1_class) space_.require(*h1_class);
  rank_[id] = order_.size();
  order_.push_back(id);
  auto [it, _] = curves_.emplace(id, LedgerCurve{id, std::move(h1_class)});
  return it->second;
}

const LedgerCurve& IntersectionLedger::curve(const std::string& id) const {
  require_curve(id);
  return curves_.at(id);
}

void IntersectionLedger::record(const std::string& a, const std::string& b, std::int64_t value,
                                Provenance provenance, const std::string& rule) {
  if (value < 0) throw Error(ErrorCode::InconsistentLedger, "negative intersection number for (" + a + ", " + b + ")");
  if (a == b) {
    if (value != 0) throw Error(ErrorCode::InconsistentLedger, "i(" + a + ", " + a + ") must be 0");
    return;
  }
  const Key k = key(a, b);
  if (const auto it = entries_.find(k); it != entries_.end()) {
    if (it->second.value != value) {
      throw Error(ErrorCode::InconsistentLedger,
                  "i(" + a + ", " + b + ") recorded as " + std::to_string(it->second.value) + " (" +
                      (it->second.rule.empty() ? to_string(it->second.provenance) : it->second.rule) +
                      ") but " + (rule.empty() ? to_string(provenance) : rule) + " gives " + std::to_string(value));
    }
    return;
  }
  entries_.emplace(k, LedgerEntry{k.first, k.second, value, provenance, rule});
}

void IntersectionLedger::set_geometric(const std::string& a, const std::string& b, std::int64_t value) {
  require_mutable();
  require_curve(a);
  require_curve(b);
  record(a, b, value, Provenance::Asserted, "");
}

void IntersectionLedger::restore_entry(const LedgerEntry& entry) {
  require_mutable();
  require_curve(entry.a);
  require_curve(entry.b);
  if (entry.provenance == Provenance::Derived && entry.rule.empty())
    throw Error(ErrorCode::InconsistentLedger, "derived entry (" + entry.a + ", " + entry.b + ") names no rule");
  record(entry.a, entry.b, entry.value, entry.provenance, entry.rule);
}

std::optional<std::int64_t> IntersectionLedger::geometric(const std::string& a, const std::string& b) const {
  require_curve(a);
  require_curve(b);
  if (a == b) return 0;
  const auto it = entries_.find(key(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::int64_t IntersectionLedger::require_geometric(const std::string& a, const std::string& b) const {
  const auto v = geometric(a, b);
  if (!v) throw Error(ErrorCode::UnknownIntersection, "i(" + a + ", " + b + ") is unknown");
  return *v;
}

const LedgerEntry* IntersectionLedger::entry(const std::string& a, const std::string& b) const {
  require_curve(a);
  require_curve(b);
  const auto it = entries_.find(key(a, b));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string IntersectionLedger::derive_twist_image(const std::string& c, long long n, const std::string& x,
                                                   std::optional<std::string> name) {
  require_mutable();
  require_curve(c);
  require_curve(x);
  if (n == 0) throw Error(ErrorCode::InvalidWord, "twist exponent must be nonzero");
  const std::int64_t icx = require_geometric(c, x);
  const std::int64_t abs_n = std::llabs(n);

  const std::string id = name.value_or("T_" + c + "^" + std::to_string(n) + "(" + x + ")");
  if (has_curve(id)) throw Error(ErrorCode::DuplicateCurve, "curve '" + id + "' already registered");

  // [T_c^n x] = [x] + n <c, x> [c]
  std::optional<H1Vector> image_class;
  const auto& cls_x = curves_.at(x).h1_class;
  const auto& cls_c = curves_.at(c).h1_class;
  if (cls_x && cls_x->is_zero()) {
    image_class = *cls_x;
  } else if (cls_x && cls_c) {
    image_class = *cls_x + Integer(n) * intersection_pairing(*cls_c, *cls_x, space_) * *cls_c;
  }

  const std::vector<std::string> others = order_;
  register_curve(id, image_class);

  record(id, x, abs_n * icx * icx, Provenance::Derived, "i(T_c^n x, x) = |n| i(c,x)^2");
  record(id, c, icx, Provenance::Derived, "i(T_c^n x, c) = i(x, c)");

  for (const auto& y : others) {
    if (y == x || y == c) continue;
    const auto icy = geometric(c, y);
    const auto ixy = geometric(x, y);
    if (!icy || !ixy) continue;
    // Both rules are exact equalities under their hypotheses; when both
    // apply they must agree, which record() enforces.
    if (*icy == 0) {
      record(id, y, *ixy, Provenance::Derived, "i(T_c^n x, y) = i(x, y) when i(c, y) = 0");
    }
    if (*ixy == 0) {
      record(id, y, abs_n * icx * *icy, Provenance::Derived, "i(T_c^n x, y) = |n| i(c,x) i(c,y) when i(x, y) = 0");
    }
  }
  return id;
}

IntersectionLedger IntersectionLedger::with_twist_image(const std::string& c, long long n, const std::string& x,
                                                        std::optional<std::string> name) const {
  IntersectionLedger copy = unfrozen_copy();
  copy.derive_twist_image(c, n, x, std::move(name));
  copy.freeze();
  return copy;
}

IntersectionLedger IntersectionLedger::unfrozen_copy() const {
  IntersectionLedger copy = *this;
  copy.frozen_ = false;
  return copy;
}

bool IntersectionLedger::is_bounding_pair(const std::string& a, const std::string& b) const {
  const std::int64_t i = require_geometric(a, b);
  const auto& ca = curve(a).h1_class;
  const auto& cb = curve(b).h1_class;
  if (!ca) throw Error(ErrorCode::UnknownClass, "homology class of '" + a + "' is unset");
  if (!cb) throw Error(ErrorCode::UnknownClass, "homology class of '" + b + "' is unset");
  if (a == b || i != 0) return false;
  if (ca->is_zero() || cb->is_zero()) return false;
  return *ca == *cb || *ca == -*cb;
}

SequenceReport IntersectionLedger::check_curve_sequence(const std::vector<std::string>& seq, const std::string& start,
                                                        const std::string& end) const {
  SequenceReport report;
  report.endpoints_ok = !seq.empty() && seq.front() == start && seq.back() == end;
  bool all_nonseparating = true;
  for (const auto& id : seq) {
    const auto sep = curve(id).separating();
    if (!sep) throw Error(ErrorCode::UnknownClass, "homology class of '" + id + "' is unset");
    all_nonseparating = all_nonseparating && !*sep;
  }
  for (std::size_t k = 1; k < seq.size(); ++k) {
    SequenceStep step;
    step.from = seq[k - 1];
    step.to = seq[k];
    step.disjoint = require_geometric(step.from, step.to) == 0 && step.from != step.to;
    step.from_nonseparating = !*curve(step.from).separating();
    step.to_nonseparating = !*curve(step.to).separating();
    step.not_bounding_pair = !is_bounding_pair(step.from, step.to);
    report.steps.push_back(step);
  }
  report.pass = report.endpoints_ok && all_nonseparating &&
                std::all_of(report.steps.begin(), report.steps.end(), [](const auto& s) { return s.ok(); });
  return report;
}

std::vector<LedgerEntry> IntersectionLedger::entries() const {
  std::vector<LedgerEntry> out;
  out.reserve(entries_.size());
  for (const auto& [k, e] : entries_) out.push_back(e);
  std::sort(out.begin(), out.end(), [this](const LedgerEntry& l, const LedgerEntry& r) {
    return std::pair(rank_.at(l.a), rank_.at(l.b)) < std::pair(rank_.at(r.a), rank_.at(r.b));
  });
  return out;
}

bool operator==(const IntersectionLedger& l, const IntersectionLedger& r) {
  if (!(l.space_ == r.space_) || l.order_ != r.order_) return false;
  for (const auto& id : l.order_) {
    if (l.curves_.at(id).h1_class != r.curves_.at(id).h1_class) return false;
  }
  const auto le = l.entries();
  const auto re = r.entries();
  if (le.size() != re.size()) return false;
  for (std::size_t i = 0; i < le.size(); ++i) {
    if (le[i].a != re[i].a || le[i].b != re[i].b || le[i].value != re[i].value ||
        le[i].provenance != re[i].provenance || le[i].rule != re[i].rule)
      return false;
  }
  return true;
}

IntersectionLedger base_construction_ledger() {
  const SymplecticSpace s2(2);
  IntersectionLedger ledger(s2);
  ledger.register_curve("alpha", s2.a(2));
  ledger.register_curve("beta", s2.zero());
  ledger.register_curve("xi", std::nullopt);
  ledger.register_curve("eta", s2.b(2));
  ledger.set_geometric("xi", "beta", 6);
  ledger.set_geometric("xi", "alpha", 2);
  ledger.set_geometric("alpha", "beta", 0);
  ledger.set_geometric("eta", "alpha", 1);
  return ledger;
}

IntersectionLedger derive_construction_ledger(const IntersectionLedger& base) {
  IntersectionLedger ledger = base.unfrozen_copy();
  for (const char* id : {"alpha", "beta", "xi"}) {
    if (!ledger.has_curve(id)) throw Error(ErrorCode::UnknownCurve, std::string("base data lacks curve '") + id + "'");
  }
  // phi = T_lambda T_beta^{-1}; phi(alpha) and phi(beta) reduce to T_lambda(.)
  // only when beta is disjoint from alpha.
  if (ledger.require_geometric("alpha", "beta") != 0) {
    throw Error(ErrorCode::InconsistentLedger, "construction needs i(alpha, beta) = 0");
  }
  ledger.derive_twist_image("xi", 1, "beta", "lambda");
  ledger.derive_twist_image("lambda", 1, "alpha", "phi_alpha");
  ledger.derive_twist_image("lambda", 1, "beta", "phi_beta");
  return ledger;
}

bool TableReport::all_match() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.match(); });
}

TableReport reproduce_intersection_table(const IntersectionLedger& base) {
  const IntersectionLedger derived = derive_construction_ledger(base);
  TableReport report;
  const auto row = [&](std::string label, std::string a, std::string b, std::int64_t expected) {
    report.rows.push_back({std::move(label), a, b, expected, derived.geometric(a, b)});
  };
  row("i(xi, beta)", "xi", "beta", 6);
  row("i(lambda, beta)", "lambda", "beta", 36);
  row("i(lambda, alpha)", "lambda", "alpha", 12);
  row("i(phi alpha, alpha)", "phi_alpha", "alpha", 144);
  row("i(phi beta, alpha)", "phi_beta", "alpha", 432);
  return report;
}

}  // namespace twistcert
