#include "twistcert/penner.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "twistcert/error.hpp"

namespace twistcert {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::MalformedRibbon, where.empty() ? what : where + ": " + what);
}

struct Locations {
  std::vector<int> vertex_lines;
  std::vector<int> edge_lines;
};

std::string vertex_where(const RibbonConfig& r, std::size_t v, const Locations* loc) {
  if (loc) return "line " + std::to_string(loc->vertex_lines[v]);
  return "vertex " + r.vertices[v].id;
}

std::string edge_where(const RibbonConfig& r, std::size_t e, const Locations* loc) {
  if (loc) return "line " + std::to_string(loc->edge_lines[e]);
  return "edge " + r.edges[e].id;
}

void validate_impl(const RibbonConfig& r, const Locations* loc) {
  std::set<std::string> declared;
  for (const auto* family : {&r.c_curves, &r.d_curves}) {
    for (const auto& id : *family) {
      if (!declared.insert(id).second) malformed("", "curve '" + id + "' declared twice");
    }
  }

  std::set<std::string> vertex_ids;
  for (std::size_t v = 0; v < r.vertices.size(); ++v) {
    const auto& vx = r.vertices[v];
    const std::string where = vertex_where(r, v, loc);
    if (!vertex_ids.insert(vx.id).second) malformed(where, "duplicate vertex id '" + vx.id + "'");
    std::array<Family, 4> fam{};
    for (int s = 0; s < 4; ++s) {
      const auto f = r.family_of(vx.slots[s].curve);
      if (!f) malformed(where, "undeclared curve '" + vx.slots[s].curve + "'");
      fam[s] = *f;
    }
    if (fam[0] != fam[2] || fam[1] != fam[3] || fam[0] == fam[1]) {
      malformed(where, "slots must alternate c-strand and d-strand");
    }
    for (int s = 0; s < 2; ++s) {
      const auto& a = vx.slots[s];
      const auto& b = vx.slots[s + 2];
      if (a.curve != b.curve || a.outgoing == b.outgoing) {
        malformed(where, "opposite slots " + std::to_string(s) + " and " + std::to_string(s + 2) +
                             " must be the two ends of one curve strand");
      }
    }
  }

  const std::size_t darts = 4 * r.vertices.size();
  std::vector<int> used(darts, -1);
  std::set<std::string> edge_ids;
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    const auto& ed = r.edges[e];
    const std::string where = edge_where(r, e, loc);
    if (!edge_ids.insert(ed.id).second) malformed(where, "duplicate edge id '" + ed.id + "'");
    for (const SlotRef* ref : {&ed.from, &ed.to}) {
      if (ref->vertex >= r.vertices.size() || ref->slot < 0 || ref->slot > 3) malformed(where, "slot out of range");
    }
    const auto& from = r.vertices[ed.from.vertex].slots[ed.from.slot];
    const auto& to = r.vertices[ed.to.vertex].slots[ed.to.slot];
    if (!from.outgoing) malformed(where, "edge must start at an outgoing slot");
    if (to.outgoing) malformed(where, "edge must end at an incoming slot");
    if (from.curve != ed.curve || to.curve != ed.curve) {
      malformed(where, "edge annotated '" + ed.curve + "' joins slots of '" + from.curve + "' and '" + to.curve + "'");
    }
    for (const SlotRef* ref : {&ed.from, &ed.to}) {
      const std::size_t d = ref->vertex * 4 + static_cast<std::size_t>(ref->slot);
      if (used[d] >= 0) {
        malformed(where, "slot " + r.vertices[ref->vertex].id + "." + std::to_string(ref->slot) +
                             " already matched by " + edge_where(r, static_cast<std::size_t>(used[d]), loc));
      }
      used[d] = static_cast<int>(e);
    }
  }
  for (std::size_t d = 0; d < darts; ++d) {
    if (used[d] < 0) {
      malformed(vertex_where(r, d / 4, loc), "slot " + std::to_string(d % 4) + " is not matched by any edge");
    }
  }

  // Each curve's strand must close into a single cycle.
  std::map<std::string, int> cycles;
  std::vector<bool> seen(darts, false);
  std::vector<std::size_t> out_edge(darts, 0);
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    out_edge[r.edges[e].from.vertex * 4 + static_cast<std::size_t>(r.edges[e].from.slot)] = e;
  }
  for (std::size_t d = 0; d < darts; ++d) {
    const auto& slot = r.vertices[d / 4].slots[d % 4];
    if (!slot.outgoing || seen[d]) continue;
    ++cycles[slot.curve];
    std::size_t cur = d;
    while (!seen[cur]) {
      seen[cur] = true;
      const auto& ed = r.edges[out_edge[cur]];
      // pass through the crossing to the opposite slot
      cur = ed.to.vertex * 4 + static_cast<std::size_t>((ed.to.slot + 2) % 4);
    }
  }
  for (const auto& [curve, count] : cycles) {
    if (count > 1) malformed("", "curve '" + curve + "' splits into " + std::to_string(count) + " closed strands");
  }
}

std::size_t find_set(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::optional<Family> RibbonConfig::family_of(std::string_view curve) const {
  if (std::find(c_curves.begin(), c_curves.end(), curve) != c_curves.end()) return Family::C;
  if (std::find(d_curves.begin(), d_curves.end(), curve) != d_curves.end()) return Family::D;
  return std::nullopt;
}

void RibbonConfig::validate() const { validate_impl(*this, nullptr); }

RibbonConfig RibbonConfig::parse(std::string_view text) {
  RibbonConfig r;
  Locations loc;
  struct PendingEdge {
    std::string id;
    std::string from;
    std::string to;
    std::string curve;
    int line;
  };
  std::vector<PendingEdge> pending;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      auto toks = split_ws(line);
      if (toks[0] == "genus") {
        int g = 0;
        if (toks.size() != 2) malformed(where, "expected 'genus <n>'");
        const auto [p, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), g);
        if (ec != std::errc() || p != toks[1].data() + toks[1].size()) malformed(where, "bad genus '" + toks[1] + "'");
        r.genus = g;
      } else if (toks[0] == "c-curves" || toks[0] == "d-curves") {
        auto& family = toks[0][0] == 'c' ? r.c_curves : r.d_curves;
        family.insert(family.end(), toks.begin() + 1, toks.end());
      } else {
        malformed(where, "unrecognized directive '" + toks[0] + "'");
      }
    } else {
      const std::string id(trim(line.substr(0, colon)));
      auto toks = split_ws(line.substr(colon + 1));
      if (id.size() < 2 || (id[0] != 'v' && id[0] != 'e')) malformed(where, "expected a v<id> or e<id> label");
      if (id[0] == 'v') {
        if (toks.size() != 4) malformed(where, "a vertex needs exactly 4 slots, got " + std::to_string(toks.size()));
        RibbonVertex v;
        v.id = id;
        for (int s = 0; s < 4; ++s) {
          const std::string& t = toks[s];
          if (t.size() < 2 || (t.back() != '+' && t.back() != '-')) {
            malformed(where, "slot '" + t + "' must be <curve>+ or <curve>-");
          }
          v.slots[s] = {t.substr(0, t.size() - 1), t.back() == '+'};
        }
        r.vertices.push_back(std::move(v));
        loc.vertex_lines.push_back(line_no);
      } else {
        if (toks.size() != 3) malformed(where, "expected 'e<id>: v<i>.<slot> v<j>.<slot> <curve>'");
        pending.push_back({id, toks[0], toks[1], toks[2], line_no});
      }
    }
    if (nl == text.size()) break;
  }

  std::map<std::string, std::size_t> vertex_index;
  for (std::size_t v = 0; v < r.vertices.size(); ++v) vertex_index.emplace(r.vertices[v].id, v);
  const auto resolve = [&](const std::string& ref, int line) {
    const std::string where = "line " + std::to_string(line);
    const auto dot = ref.rfind('.');
    if (dot == std::string::npos || dot + 2 != ref.size() || ref[dot + 1] < '0' || ref[dot + 1] > '3') {
      malformed(where, "bad slot reference '" + ref + "'");
    }
    const auto it = vertex_index.find(ref.substr(0, dot));
    if (it == vertex_index.end()) malformed(where, "unknown vertex in '" + ref + "'");
    return SlotRef{it->second, ref[dot + 1] - '0'};
  };
  for (const auto& p : pending) {
    r.edges.push_back({p.id, resolve(p.from, p.line), resolve(p.to, p.line), p.curve});
    loc.edge_lines.push_back(p.line);
  }
  validate_impl(r, &loc);
  return r;
}

IntMatrix RibbonConfig::intersection_matrix() const {
  IntMatrix n(c_curves.size(), d_curves.size());
  for (const auto& v : vertices) {
    const bool c_first = family_of(v.slots[0].curve) == Family::C;
    const std::string& c = v.slots[c_first ? 0 : 1].curve;
    const std::string& d = v.slots[c_first ? 1 : 0].curve;
    const auto ci = std::find(c_curves.begin(), c_curves.end(), c) - c_curves.begin();
    const auto dj = std::find(d_curves.begin(), d_curves.end(), d) - d_curves.begin();
    n(static_cast<std::size_t>(ci), static_cast<std::size_t>(dj)) += 1;
  }
  return n;
}

RibbonConfig RibbonConfig::without_curve(const std::string& curve) const {
  validate();
  if (!family_of(curve)) throw Error(ErrorCode::UnknownCurve, "ribbon has no curve '" + curve + "'");

  std::vector<RibbonEdge> edges_left = edges;
  std::vector<bool> removed(vertices.size(), false);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& vx = vertices[v];
    const bool on_curve = vx.slots[0].curve == curve || vx.slots[1].curve == curve;
    if (!on_curve) continue;
    removed[v] = true;
    const int other = vx.slots[0].curve == curve ? 1 : 0;
    const int in_slot = vx.slots[other].outgoing ? other + 2 : other;
    const int out_slot = (in_slot + 2) % 4;
    const auto in_it = std::find_if(edges_left.begin(), edges_left.end(),
                                    [&](const RibbonEdge& e) { return e.to == SlotRef{v, in_slot}; });
    const auto out_it = std::find_if(edges_left.begin(), edges_left.end(),
                                     [&](const RibbonEdge& e) { return e.from == SlotRef{v, out_slot}; });
    if (in_it == out_it) {
      edges_left.erase(in_it);  // the strand had no other crossing
    } else {
      in_it->to = out_it->to;
      edges_left.erase(out_it);
    }
  }

  RibbonConfig out;
  out.genus = genus;
  for (const auto& c : c_curves)
    if (c != curve) out.c_curves.push_back(c);
  for (const auto& d : d_curves)
    if (d != curve) out.d_curves.push_back(d);
  std::vector<std::size_t> new_index(vertices.size(), 0);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (removed[v]) continue;
    new_index[v] = out.vertices.size();
    out.vertices.push_back(vertices[v]);
  }
  for (auto e : edges_left) {
    if (e.curve == curve) continue;
    e.from.vertex = new_index[e.from.vertex];
    e.to.vertex = new_index[e.to.vertex];
    out.edges.push_back(std::move(e));
  }
  out.validate();
  return out;
}

std::string RibbonConfig::to_text() const {
  std::ostringstream os;
  if (genus) os << "genus " << *genus << '\n';
  os << "c-curves";
  for (const auto& c : c_curves) os << ' ' << c;
  os << "\nd-curves";
  for (const auto& d : d_curves) os << ' ' << d;
  os << '\n';
  for (const auto& v : vertices) {
    os << v.id << ':';
    for (const auto& s : v.slots) os << ' ' << s.curve << (s.outgoing ? '+' : '-');
    os << '\n';
  }
  for (const auto& e : edges) {
    os << e.id << ": " << vertices[e.from.vertex].id << '.' << e.from.slot << ' ' << vertices[e.to.vertex].id << '.'
       << e.to.slot << ' ' << e.curve << '\n';
  }
  return os.str();
}

FillingReport verify_filling(const RibbonConfig& ribbon, int target_genus) {
  ribbon.validate();
  FillingReport rep;
  rep.vertices = ribbon.vertices.size();
  rep.edges = ribbon.edges.size();

  for (const auto* family : {&ribbon.c_curves, &ribbon.d_curves}) {
    for (const auto& id : *family) {
      const bool crossed = std::any_of(ribbon.vertices.begin(), ribbon.vertices.end(), [&](const RibbonVertex& v) {
        return v.slots[0].curve == id || v.slots[1].curve == id;
      });
      if (!crossed) rep.uncrossed_curves.push_back(id);
    }
  }

  const std::size_t darts = 4 * rep.vertices;
  std::vector<std::size_t> partner(darts);
  std::vector<std::size_t> parent(rep.vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& e : ribbon.edges) {
    const std::size_t a = e.from.vertex * 4 + static_cast<std::size_t>(e.from.slot);
    const std::size_t b = e.to.vertex * 4 + static_cast<std::size_t>(e.to.slot);
    partner[a] = b;
    partner[b] = a;
    parent[find_set(parent, e.from.vertex)] = find_set(parent, e.to.vertex);
  }

  // Faces are the cycles of (next slot counterclockwise) o (other end of edge).
  std::vector<bool> seen(darts, false);
  for (std::size_t d = 0; d < darts; ++d) {
    if (seen[d]) continue;
    std::size_t len = 0;
    for (std::size_t cur = d; !seen[cur];) {
      seen[cur] = true;
      ++len;
      const std::size_t across = partner[cur];
      cur = (across / 4) * 4 + (across % 4 + 1) % 4;
    }
    rep.face_lengths.push_back(len);
  }
  rep.faces = rep.face_lengths.size();

  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < rep.vertices; ++v) roots.insert(find_set(parent, v));
  rep.connected = roots.size() == 1;

  rep.euler_characteristic = static_cast<long long>(rep.vertices) - static_cast<long long>(rep.edges) +
                             static_cast<long long>(rep.faces);
  if (rep.vertices > 0 && (2 - rep.euler_characteristic) % 2 == 0) {
    rep.inferred_genus = (2 - rep.euler_characteristic) / 2;
  }

  if (rep.vertices == 0) {
    rep.reason = "no crossings: the complement is not a union of disks";
  } else if (!rep.uncrossed_curves.empty()) {
    rep.reason = "curve '" + rep.uncrossed_curves.front() + "' crosses nothing";
  } else if (!rep.connected) {
    rep.reason = "c and d do not form a connected graph (" + std::to_string(roots.size()) + " components)";
  } else if (!rep.inferred_genus || *rep.inferred_genus != target_genus) {
    rep.reason = "faces fill a surface of genus " +
                 (rep.inferred_genus ? std::to_string(*rep.inferred_genus) : std::string("?")) + ", expected " +
                 std::to_string(target_genus);
  } else {
    rep.filling = true;
    rep.reason = "every complementary region is a disk";
  }
  return rep;
}

PennerConfig PennerConfig::from_ribbon(const RibbonConfig& ribbon, int target_genus) {
  ribbon.validate();
  PennerConfig cfg;
  cfg.c_curves = ribbon.c_curves;
  cfg.d_curves = ribbon.d_curves;
  cfg.intersections = ribbon.intersection_matrix();
  cfg.ribbon = ribbon;
  cfg.target_genus = target_genus;
  return cfg;
}

PennerConfig PennerConfig::single_pair(long long crossings, std::string c, std::string d) {
  PennerConfig cfg;
  cfg.c_curves = {std::move(c)};
  cfg.d_curves = {std::move(d)};
  cfg.intersections = IntMatrix::from_rows({{crossings}});
  cfg.validate();
  return cfg;
}

void PennerConfig::validate() const {
  if (intersections.rows() != c_curves.size() || intersections.cols() != d_curves.size()) {
    throw Error(ErrorCode::InvalidDimension, "intersection matrix must be |c| x |d|");
  }
  if (!intersections.all_nonnegative()) throw Error(ErrorCode::InvalidPennerWord, "negative intersection number");
}

std::optional<std::size_t> PennerConfig::c_index(std::string_view id) const {
  const auto it = std::find(c_curves.begin(), c_curves.end(), id);
  if (it == c_curves.end()) return std::nullopt;
  return static_cast<std::size_t>(it - c_curves.begin());
}

std::optional<std::size_t> PennerConfig::d_index(std::string_view id) const {
  const auto it = std::find(d_curves.begin(), d_curves.end(), id);
  if (it == d_curves.end()) return std::nullopt;
  return static_cast<std::size_t>(it - d_curves.begin());
}

bool validate_penner_word(const TwistWord& word, const PennerConfig& config) {
  std::vector<bool> c_seen(config.c_curves.size(), false);
  std::vector<bool> d_seen(config.d_curves.size(), false);
  bool signs_ok = true;
  for (const auto& letter : word.letters()) {
    if (const auto ci = config.c_index(letter.curve)) {
      c_seen[*ci] = true;
      signs_ok = signs_ok && letter.exponent > 0;
    } else if (const auto dj = config.d_index(letter.curve)) {
      d_seen[*dj] = true;
      signs_ok = signs_ok && letter.exponent < 0;
    } else {
      throw Error(ErrorCode::UnknownCurve, "'" + letter.curve + "' is in neither multicurve");
    }
  }
  const auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return !word.empty() && signs_ok && all(c_seen) && all(d_seen);
}

IntMatrix transition_matrix(const TwistWord& word, const PennerConfig& config) {
  config.validate();
  if (!validate_penner_word(word, config)) {
    throw Error(ErrorCode::InvalidPennerWord, "'" + word.to_string() +
                                                  "' needs positive c-twists, negative d-twists and every curve once");
  }
  const std::size_t k = config.c_curves.size();
  const std::size_t m = config.d_curves.size();
  const IntMatrix& n = config.intersections;
  IntMatrix t = IntMatrix::identity(k + m);
  for (const auto& letter : word.letters()) {
    // t <- t * (I + p G), with G nonzero only in one row.
    IntMatrix g(k + m, k + m);
    std::size_t row = 0;
    Integer p;
    if (const auto ci = config.c_index(letter.curve)) {
      row = *ci;
      p = letter.exponent;
      for (std::size_t j = 0; j < m; ++j) g(row, k + j) = n(*ci, j);
    } else {
      const std::size_t dj = *config.d_index(letter.curve);
      row = k + dj;
      p = -Integer(letter.exponent);
      for (std::size_t i = 0; i < k; ++i) g(row, i) = n(i, dj);
    }
    for (std::size_t r = 0; r < k + m; ++r) {
      const Integer coeff = p * t(r, row);
      if (coeff.is_zero()) continue;
      for (std::size_t c = 0; c < k + m; ++c) {
        if (!g(row, c).is_zero()) t(r, c) += coeff * g(row, c);
      }
    }
  }
  return t;
}

bool is_primitive(const IntMatrix& m) {
  if (!m.is_square() || m.rows() == 0 || !m.all_nonnegative()) return false;
  const std::size_t n = m.rows();
  using Pattern = std::vector<std::vector<bool>>;
  Pattern base(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = !m(i, j).is_zero();
  const auto mul = [n](const Pattern& a, const Pattern& b) {
    Pattern c(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k])
          for (std::size_t j = 0; j < n; ++j) c[i][j] = c[i][j] || b[k][j];
    return c;
  };
  // Wielandt: primitive iff the (n-1)^2 + 1 power is positive.
  unsigned long long e = (n - 1) * (n - 1) + 1;
  Pattern result(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = true;
  Pattern b = base;
  while (e > 0) {
    if (e & 1ULL) result = mul(result, b);
    e >>= 1U;
    if (e) b = mul(b, b);
  }
  for (const auto& row : result)
    for (bool x : row)
      if (!x) return false;
  return true;
}

std::vector<Integer> characteristic_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidDimension, "characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Integer> coeffs(n + 1);
  coeffs[n] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += coeffs[n - k + 1];
    const IntMatrix amk = a * mk;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk(i, i);
    coeffs[n - k] = -trace / Integer(k);  // exact for integer matrices
  }
  return coeffs;
}

namespace {

double greatest_real_root(const std::vector<Integer>& coeffs) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) c(static_cast<Eigen::Index>(i)) = coeffs[i].convert_to<double>();
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(c);
  bool has_real = false;
  double root = solver.greatestRealRoot(has_real, 1e-6);
  if (!has_real) throw Error(ErrorCode::NotPrimitive, "characteristic polynomial has no real root");
  for (int it = 0; it < 50; ++it) {
    long double p = 0;
    long double dp = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      dp = dp * root + p;
      p = p * root + coeffs[i].convert_to<long double>();
    }
    if (dp == 0) break;
    const long double next = root - p / dp;
    if (std::fabs(static_cast<double>(next) - root) <= 1e-16 * std::fabs(root)) {
      root = static_cast<double>(next);
      break;
    }
    root = static_cast<double>(next);
  }
  return root;
}

}  // namespace

StretchResult stretch_factor(const IntMatrix& m) {
  if (!m.is_square() || m.rows() == 0) throw Error(ErrorCode::NotPrimitive, "matrix must be square and nonempty");
  if (!m.all_nonnegative()) throw Error(ErrorCode::NotPrimitive, "matrix has a negative entry");
  if (!is_primitive(m)) throw Error(ErrorCode::NotPrimitive, "no power of the matrix is strictly positive");

  const std::size_t n = m.rows();
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).convert_to<double>();
    }
  if (!a.allFinite()) throw Error(ErrorCode::IterationLimit, "matrix entries exceed double range");

  StretchResult res;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)).normalized();
  double prev = 0.0;
  bool converged = false;
  for (long it = 1; it <= kMaxPowerIterations; ++it) {
    const Eigen::VectorXd y = a * x;
    const double rq = x.dot(y);
    res.iterations = it;
    x = y.normalized();
    if (it > 1 && std::fabs(rq - prev) < kRayleighTolerance * std::fabs(rq)) {
      prev = rq;
      converged = true;
      break;
    }
    prev = rq;
  }
  if (!converged) {
    throw Error(ErrorCode::IterationLimit, "power iteration did not settle within " +
                                               std::to_string(kMaxPowerIterations) + " steps");
  }
  res.lambda = prev;
  res.residual = (a * x - res.lambda * x).norm();
  res.l_teich = std::log(res.lambda);

  if (n <= 4) {
    const double root = greatest_real_root(characteristic_polynomial(m));
    res.charpoly_lambda = root;
    if (std::fabs(root - res.lambda) > kCharpolyTolerance * std::max(1.0, std::fabs(root))) {
      throw Error(ErrorCode::IterationLimit, "power iteration gives " + std::to_string(res.lambda) +
                                                 " but the characteristic polynomial gives " + std::to_string(root));
    }
  }
  return res;
}

double thurston_oracle(const TwistWord& word, const IntMatrix& intersections, std::string_view c_name,
                       std::string_view d_name) {
  if (intersections.rows() == 0 || intersections.cols() == 0 || !intersections.all_nonnegative()) {
    throw Error(ErrorCode::InvalidDimension, "intersection matrix must be nonempty and nonnegative");
  }
  Eigen::MatrixXd nm(intersections.rows(), intersections.cols());
  for (std::size_t i = 0; i < intersections.rows(); ++i)
    for (std::size_t j = 0; j < intersections.cols(); ++j) {
      nm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = intersections(i, j).convert_to<double>();
    }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(nm * nm.transpose());
  const double mu = eig.eigenvalues().maxCoeff();
  const double s = std::sqrt(mu);

  Eigen::Matrix2d prod = Eigen::Matrix2d::Identity();
  for (const auto& letter : word.letters()) {
    Eigen::Matrix2d f = Eigen::Matrix2d::Identity();
    const double p = static_cast<double>(letter.exponent);
    if (letter.curve == c_name) {
      f(0, 1) = p * s;
    } else if (letter.curve == d_name) {
      f(1, 0) = -p * s;
    } else {
      throw Error(ErrorCode::UnknownCurve, "oracle words use only '" + std::string(c_name) + "' and '" +
                                               std::string(d_name) + "', got '" + letter.curve + "'");
    }
    prod = prod * f;
  }
  const double t = std::fabs(prod.trace());
  if (t <= 2.0) throw Error(ErrorCode::NotHyperbolic, "|trace| = " + std::to_string(t) + " <= 2");
  return (t + std::sqrt(t * t - 4.0)) / 2.0;
}

std::string to_string(StretchMethod m) {
  return m == StretchMethod::PennerTransition ? "penner-transition" : "thurston-trace";
}

StretchCertificate certify_penner_word(const TwistWord& word, const RibbonConfig& ribbon, int target_genus) {
  StretchCertificate cert;
  cert.filling = verify_filling(ribbon, target_genus);
  if (!cert.filling.filling) {
    throw Error(ErrorCode::InvalidPennerWord, "c and d do not fill: " + cert.filling.reason);
  }
  const PennerConfig config = PennerConfig::from_ribbon(ribbon, target_genus);
  cert.word = word;
  cert.matrix = transition_matrix(word, config);
  const StretchResult sr = stretch_factor(cert.matrix);
  cert.lambda = sr.lambda;
  cert.l_teich = sr.l_teich;
  cert.iterations = sr.iterations;
  cert.residual = sr.residual;
  cert.method = StretchMethod::PennerTransition;
  cert.scope_note =
      "transition-matrix stretch factors are cross-validated against the 2x2 multitwist oracle and "
      "brute-force single-pair cases; for several curves per family only full-multitwist words are checked";
  return cert;
}

}  // namespace twistcert
