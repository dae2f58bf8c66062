#include "twistcert/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "twistcert/error.hpp"

namespace twistcert {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected an object holding '" + std::string(key) + "'");
  const auto it = j.find(key);
  if (it == j.end()) bad("missing field '" + std::string(key) + "'");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad("field '" + std::string(key) + "': " + e.what());
  }
}

std::optional<double> optional_real(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return parse_real(*it);
}

Json string_array(const std::vector<std::string>& items) {
  Json a = Json::array();
  for (const auto& s : items) a.push_back(s);
  return a;
}

std::vector<std::string> strings_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) bad("expected an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

Json entry_json(const LedgerEntry& e) {
  Json j;
  j["a"] = e.a;
  j["b"] = e.b;
  j["value"] = e.value;
  j["provenance"] = to_string(e.provenance);
  j["rule"] = e.rule;
  return j;
}

LedgerEntry entry_from_json(const Json& j) {
  LedgerEntry e;
  e.a = get<std::string>(j, "a");
  e.b = get<std::string>(j, "b");
  e.value = get<std::int64_t>(j, "value");
  const auto p = get<std::string>(j, "provenance");
  if (p == "asserted")
    e.provenance = Provenance::Asserted;
  else if (p == "derived")
    e.provenance = Provenance::Derived;
  else
    bad("unknown provenance '" + p + "'");
  e.rule = get<std::string>(j, "rule");
  return e;
}

}  // namespace

std::string format_real(double value) {
  if (!std::isfinite(value)) bad("non-finite real");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

double parse_real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) bad("expected a real as a decimal string or number");
  const auto s = j.get<std::string>();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad("malformed real '" + s + "'");
  }
  if (used != s.size()) bad("malformed real '" + s + "'");
  return v;
}

Json to_json(const Integer& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max())
    return value.convert_to<std::int64_t>();
  return value.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
      bad("malformed integer '" + j.get<std::string>() + "'");
    }
  }
  bad("expected an integer");
}

Json to_json(const H1Vector& v) {
  Json a = Json::array();
  for (const auto& c : v.coords()) a.push_back(to_json(c));
  return a;
}

H1Vector h1_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a coordinate array");
  std::vector<Integer> coords;
  for (const auto& c : j) coords.push_back(integer_from_json(c));
  return H1Vector(std::move(coords));
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from_json(j[r][c]);
  }
  return m;
}

Json to_json(const IntersectionLedger& ledger) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["genus"] = ledger.space().genus();
  Json curves = Json::array();
  for (const auto& id : ledger.curve_order()) {
    const auto& c = ledger.curve(id);
    Json cj;
    cj["id"] = id;
    cj["class"] = c.h1_class ? to_json(*c.h1_class) : Json(nullptr);
    const auto sep = c.separating();
    cj["separating"] = sep ? Json(*sep) : Json(nullptr);
    curves.push_back(std::move(cj));
  }
  j["curves"] = std::move(curves);
  Json entries = Json::array();
  for (const auto& e : ledger.entries()) entries.push_back(entry_json(e));
  j["entries"] = std::move(entries);
  return j;
}

IntersectionLedger ledger_from_json(const Json& j) {
  IntersectionLedger ledger(SymplecticSpace(get<int>(j, "genus")));
  const Json& curves = field(j, "curves");
  if (!curves.is_array()) bad("'curves' must be an array");
  for (const auto& c : curves) {
    const auto id = get<std::string>(c, "id");
    const Json& cls = field(c, "class");
    std::optional<H1Vector> h1;
    if (!cls.is_null()) h1 = h1_from_json(cls);
    const auto& curve = ledger.register_curve(id, h1);
    const Json& sep = field(c, "separating");
    if (!sep.is_null() && (!curve.separating() || *curve.separating() != sep.get<bool>()))
      throw Error(ErrorCode::InconsistentLedger, "separating flag of '" + id + "' disagrees with its class");
  }
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) bad("'entries' must be an array");
  for (const auto& e : entries) ledger.restore_entry(entry_from_json(e));
  return ledger;
}

Json to_json(const TableReport& report) {
  Json j;
  j["tool_version"] = kToolVersion;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["quantity"] = r.label;
    row["expected"] = r.expected;
    row["derived"] = r.derived ? Json(*r.derived) : Json(nullptr);
    row["match"] = r.match();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["all_match"] = report.all_match();
  return j;
}

Json to_json(const FillingReport& r) {
  Json j;
  j["vertices"] = r.vertices;
  j["edges"] = r.edges;
  j["faces"] = r.faces;
  Json lengths = Json::array();
  for (auto l : r.face_lengths) lengths.push_back(l);
  j["face_lengths"] = std::move(lengths);
  j["connected"] = r.connected;
  j["euler_characteristic"] = r.euler_characteristic;
  j["inferred_genus"] = r.inferred_genus ? Json(*r.inferred_genus) : Json(nullptr);
  j["uncrossed_curves"] = string_array(r.uncrossed_curves);
  j["filling"] = r.filling;
  j["reason"] = r.reason;
  return j;
}

Json to_json(const StretchCertificate& c) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["word"] = c.word.to_string();
  j["pseudo_anosov"] = true;
  j["lambda"] = format_real(c.lambda);
  j["l_teich"] = format_real(c.l_teich);
  j["method"] = to_string(c.method);
  j["iterations"] = c.iterations;
  j["residual"] = format_real(c.residual);
  j["matrix"] = to_json(c.matrix);
  j["filling"] = to_json(c.filling);
  j["scope_note"] = c.scope_note;
  return j;
}

Json to_json(const SpreadingBound& b) {
  Json j;
  j["degree"] = b.degree;
  j["spreading"] = b.spreading;
  j["m_max"] = b.m_max;
  j["bound_exact"] = format_real(b.bound_exact);
  j["bound_paper"] = format_real(b.bound_paper);
  j["bound_genus_form"] = format_real(b.bound_genus_form);
  j["equality_case"] = b.equality_case;
  j["middle_vertex"] = b.middle_vertex;
  return j;
}

Json to_json(const CoverCertificate& c) {
  Json j;
  j["tool_version"] = c.tool_version;
  j["degree"] = c.degree;
  j["cover_genus"] = c.cover_genus;
  j["mode"] = to_string(c.mode);
  j["spreading"] = c.spreading;
  if (c.bound) {
    j["m_max"] = c.bound->m_max;
    j["bound_exact"] = format_real(c.bound->bound_exact);
    j["bound_paper"] = format_real(c.bound->bound_paper);
    j["bound_genus_form"] = format_real(c.bound->bound_genus_form);
    j["equality_case"] = c.bound->equality_case;
    j["middle_vertex"] = c.bound->middle_vertex;
  } else {
    j["m_max"] = nullptr;
    j["bound_exact"] = nullptr;
    j["bound_paper"] = nullptr;
    j["bound_omitted"] = c.bound_omitted;
  }
  j["witness"] = to_json(c.witness);
  Json facts = Json::array();
  for (const auto& f : c.facts) {
    Json fj;
    fj["id"] = f.id;
    fj["claim"] = f.claim;
    fj["status"] = to_string(f.status);
    fj["paper_anchor"] = f.anchor;
    facts.push_back(std::move(fj));
  }
  j["facts"] = std::move(facts);
  j["normal_closure_word_identity"] = c.word_identity;
  Json ledger = Json::array();
  for (const auto& e : c.ledger) ledger.push_back(entry_json(e));
  j["ledger"] = std::move(ledger);
  j["conventions"] = string_array(c.conventions);
  j["seed"] = c.seed;
  return j;
}

CoverCertificate certificate_from_json(const Json& j) {
  CoverCertificate c;
  c.tool_version = get<std::string>(j, "tool_version");
  c.degree = get<std::int64_t>(j, "degree");
  c.cover_genus = get<std::int64_t>(j, "cover_genus");
  c.mode = certificate_mode_from_string(get<std::string>(j, "mode"));
  c.spreading = get<std::int64_t>(j, "spreading");
  if (!field(j, "m_max").is_null()) {
    SpreadingBound b;
    b.degree = c.degree;
    b.spreading = c.spreading;
    b.m_max = get<std::int64_t>(j, "m_max");
    b.bound_exact = parse_real(field(j, "bound_exact"));
    b.bound_paper = parse_real(field(j, "bound_paper"));
    b.bound_genus_form = parse_real(field(j, "bound_genus_form"));
    b.equality_case = get<bool>(j, "equality_case");
    b.middle_vertex = get<std::string>(j, "middle_vertex");
    c.bound = b;
  } else {
    c.bound_omitted = get<std::string>(j, "bound_omitted");
  }
  c.witness = h1_from_json(field(j, "witness"));
  for (const auto& f : field(j, "facts"))
    c.facts.push_back({get<std::string>(f, "id"), get<std::string>(f, "claim"),
                       fact_status_from_string(get<std::string>(f, "status")), get<std::string>(f, "paper_anchor")});
  c.word_identity = get<std::string>(j, "normal_closure_word_identity");
  for (const auto& e : field(j, "ledger")) c.ledger.push_back(entry_from_json(e));
  c.conventions = strings_from(field(j, "conventions"));
  c.seed = get<std::uint64_t>(j, "seed");
  return c;
}

Json to_json(const MappingClassProfile& p) {
  Json j;
  j["label"] = p.label;
  j["genus"] = p.genus;
  j["closed"] = p.closed;
  j["punctures"] = p.punctures;
  if (p.pseudo_anosov) {
    Json pa;
    pa["lambda"] = format_real(p.pseudo_anosov->lambda);
    pa["l_teich"] = format_real(p.pseudo_anosov->l_teich);
    pa["certified"] = p.pseudo_anosov->certified;
    pa["word"] = p.pseudo_anosov->word;
    j["pseudo_anosov"] = std::move(pa);
  }
  if (p.partly_pseudo_anosov) {
    Json pp;
    pp["subsurface_genus"] = p.partly_pseudo_anosov->subsurface_genus;
    pp["invariant"] = p.partly_pseudo_anosov->invariant;
    pp["restriction_pa"] = p.partly_pseudo_anosov->restriction_pa;
    pp["l_teich"] = format_real(p.partly_pseudo_anosov->l_teich);
    j["partly_pseudo_anosov"] = std::move(pp);
  }
  if (p.finite_order) {
    Json fo;
    fo["order"] = p.finite_order->order;
    fo["hyperelliptic_involution"] = p.finite_order->hyperelliptic_involution;
    j["finite_order"] = std::move(fo);
  }
  if (p.torelli) j["torelli"] = *p.torelli;
  if (p.homology_matrix) j["homology_matrix"] = to_json(*p.homology_matrix);
  Json moduli = Json::array();
  for (auto m : p.level_trivial_moduli) moduli.push_back(m);
  j["level_trivial_moduli"] = std::move(moduli);
  return j;
}

MappingClassProfile profile_from_json(const Json& j) {
  if (!j.is_object()) bad("profile must be a JSON object");
  static const char* const known[] = {"label",          "genus",   "closed",          "punctures",
                                      "pseudo_anosov",  "partly_pseudo_anosov", "finite_order",
                                      "torelli",        "homology_matrix",      "level_trivial_moduli"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) bad("unknown profile field '" + key + "'");
  }
  MappingClassProfile p;
  p.label = j.value("label", std::string());
  p.genus = get<int>(j, "genus");
  p.closed = j.value("closed", true);
  p.punctures = j.value("punctures", 0);
  if (const auto it = j.find("pseudo_anosov"); it != j.end() && !it->is_null()) {
    PseudoAnosovFact pa;
    pa.lambda = parse_real(field(*it, "lambda"));
    pa.l_teich = optional_real(*it, "l_teich").value_or(std::log(pa.lambda));
    pa.certified = false;  // facts read from a file are assertions
    pa.word = it->value("word", std::string());
    p.pseudo_anosov = pa;
  }
  if (const auto it = j.find("partly_pseudo_anosov"); it != j.end() && !it->is_null()) {
    PartlyPseudoAnosovFact pp;
    pp.subsurface_genus = get<int>(*it, "subsurface_genus");
    pp.invariant = get<bool>(*it, "invariant");
    pp.restriction_pa = get<bool>(*it, "restriction_pa");
    pp.l_teich = parse_real(field(*it, "l_teich"));
    p.partly_pseudo_anosov = pp;
  }
  if (const auto it = j.find("finite_order"); it != j.end() && !it->is_null()) {
    FiniteOrderFact fo;
    fo.order = get<long long>(*it, "order");
    fo.hyperelliptic_involution = get<bool>(*it, "hyperelliptic_involution");
    p.finite_order = fo;
  }
  if (const auto it = j.find("torelli"); it != j.end() && !it->is_null()) p.torelli = it->get<bool>();
  if (const auto it = j.find("homology_matrix"); it != j.end() && !it->is_null())
    p.homology_matrix = matrix_from_json(*it);
  if (const auto it = j.find("level_trivial_moduli"); it != j.end())
    for (const auto& m : *it) p.level_trivial_moduli.push_back(m.get<std::int64_t>());
  return p;
}

Json to_json(const Verdict& v) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["decision"] = to_string(v.decision);
  j["rule"] = v.rule;
  j["anchors"] = string_array(v.anchors);
  j["inputs_used"] = string_array(v.inputs_used);
  j["asserted_inputs"] = string_array(v.asserted_inputs);
  return j;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.decision = decision_from_string(get<std::string>(j, "decision"));
  v.rule = get<std::string>(j, "rule");
  v.anchors = strings_from(field(j, "anchors"));
  v.inputs_used = strings_from(field(j, "inputs_used"));
  v.asserted_inputs = strings_from(field(j, "asserted_inputs"));
  return v;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, source + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace twistcert
