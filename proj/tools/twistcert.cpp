// Command-line front end: homology, ledger, penner, cover, verdict.
// Exit status: 0 success, 2 certified refusal, 1 error.

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "twistcert/cover.hpp"
#include "twistcert/error.hpp"
#include "twistcert/ledger.hpp"
#include "twistcert/penner.hpp"
#include "twistcert/serialize.hpp"
#include "twistcert/verdict.hpp"

namespace fs = std::filesystem;
using namespace twistcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefusal = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temporary and rename, so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::IoError, "cannot move into place '" + path.string() + "': " + ec.message());
  }
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << dump(j);
  else
    write_atomic(out, dump(j));
}

// "name=1,0,-2,0"
std::pair<std::string, H1Vector> parse_class(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::ParseError, "class must look like name=1,0,0,0: " + spec);
  std::vector<Integer> coords;
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      coords.emplace_back(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad coordinate '" + item + "' in " + spec);
    }
  }
  return {spec.substr(0, eq), H1Vector(std::move(coords))};
}

struct HomologyArgs {
  int genus = 2;
  std::string word;
  std::vector<std::string> classes;
  std::string ledger;
  bool construction = false;
  std::vector<long long> moduli;
  std::string out;
};

int run_homology(const HomologyArgs& a) {
  ClassTable table;
  std::optional<SymplecticSpace> space;
  if (a.construction || !a.ledger.empty()) {
    const IntersectionLedger ledger =
        a.construction ? derive_construction_ledger(base_construction_ledger())
                       : ledger_from_json(parse_json(read_file(a.ledger), a.ledger));
    space = ledger.space();
    for (const auto& id : ledger.curve_order())
      if (const auto& c = ledger.curve(id).h1_class) table.emplace(id, *c);
  } else {
    space = SymplecticSpace(a.genus);
  }
  for (const auto& spec : a.classes) {
    auto [name, v] = parse_class(spec);
    space->require(v);
    table.insert_or_assign(name, v);
  }
  const IntMatrix m = word_action(TwistWord::parse(a.word), table, *space);
  Json j;
  j["tool_version"] = kToolVersion;
  j["genus"] = space->genus();
  j["word"] = TwistWord::parse(a.word).to_string();
  j["matrix"] = to_json(m);
  j["symplectic"] = is_symplectic(m, *space);
  j["torelli"] = is_torelli(m);
  Json level = Json::array();
  for (auto mod : a.moduli) {
    Json l;
    l["modulus"] = mod;
    l["trivial"] = is_level_trivial(m, mod);
    level.push_back(std::move(l));
  }
  j["level_trivial"] = std::move(level);
  emit(j, a.out);
  return kExitOk;
}

struct LedgerArgs {
  bool reproduce = false;
  std::string base;
  std::vector<std::string> overrides;
  std::string out;
};

int run_ledger(const LedgerArgs& a) {
  IntersectionLedger base = a.base.empty() ? base_construction_ledger()
                                           : ledger_from_json(parse_json(read_file(a.base), a.base));
  if (!a.overrides.empty()) {
    // Overrides replace asserted base values, so rebuild the base around them.
    IntersectionLedger patched(base.space());
    for (const auto& id : base.curve_order()) patched.register_curve(id, base.curve(id).h1_class);
    std::map<std::pair<std::string, std::string>, std::int64_t> values;
    for (const auto& spec : a.overrides) {
      std::stringstream ss(spec);
      std::string x, y, v;
      if (!std::getline(ss, x, ',') || !std::getline(ss, y, ',') || !std::getline(ss, v))
        throw Error(ErrorCode::ParseError, "--set expects a,b,value: " + spec);
      try {
        values[{std::min(x, y), std::max(x, y)}] = std::stoll(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "--set value is not an integer: " + spec);
      }
    }
    for (const auto& e : base.entries()) {
      const auto it = values.find({std::min(e.a, e.b), std::max(e.a, e.b)});
      if (it == values.end()) patched.set_geometric(e.a, e.b, e.value);
    }
    for (const auto& [k, v] : values) {
      if (v >= 0) patched.set_geometric(k.first, k.second, v);  // negative value deletes
    }
    base = patched;
  }

  if (a.reproduce) {
    const TableReport report = reproduce_intersection_table(base);
    for (const auto& r : report.rows) {
      std::cerr << (r.match() ? "PASS " : "FAIL ") << r.label << " = "
                << (r.derived ? std::to_string(*r.derived) : std::string("unknown")) << " (expected " << r.expected
                << ")\n";
    }
    emit(to_json(report), a.out);
    return report.all_match() ? kExitOk : kExitError;
  }
  emit(to_json(derive_construction_ledger(base)), a.out);
  return kExitOk;
}

struct PennerArgs {
  std::string ribbon;
  std::string word;
  std::optional<int> genus;
  std::string out;
};

int run_penner(const PennerArgs& a) {
  const RibbonConfig ribbon = RibbonConfig::parse(read_file(a.ribbon));
  const int genus = a.genus ? *a.genus : ribbon.genus.value_or(2);
  const StretchCertificate cert = certify_penner_word(TwistWord::parse(a.word), ribbon, genus);
  emit(to_json(cert), a.out);
  return kExitOk;
}

struct CoverArgs {
  std::vector<int> degrees;
  std::string mode = "arithmetic";
  std::string out;
  std::string out_dir;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  int cap = 64;
};

int run_cover(const CoverArgs& a) {
  if (a.degrees.empty()) throw Error(ErrorCode::InvalidDegree, "no --degree given");
  if (!a.out.empty() && a.degrees.size() > 1) throw Error(ErrorCode::IoError, "--out takes one degree; use --out-dir");
  CertificateOptions options;
  options.mode = certificate_mode_from_string(a.mode);
  options.seed = a.seed;
  options.homology_cap = a.cap;

  const std::size_t count = a.degrees.size();
  std::vector<std::optional<Json>> results(count);
  std::vector<std::string> failures(count);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const CoverCertificate cert = build_certificate(a.degrees[i], options);
        Json j = to_json(cert);
        if (!a.out_dir.empty())
          write_atomic(fs::path(a.out_dir) / ("cover_n" + std::to_string(a.degrees[i]) + ".json"), dump(j));
        else if (!a.out.empty())
          write_atomic(a.out, dump(j));
        results[i] = std::move(j);
      } catch (const std::exception& e) {
        failures[i] = e.what();
        std::lock_guard lock(log_mutex);
        std::cerr << "degree " << a.degrees[i] << ": " << e.what() << "\n";
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (a.out.empty() && a.out_dir.empty()) {
    if (count == 1) {
      if (results[0]) std::cout << dump(*results[0]);
    } else {
      Json all = Json::array();
      for (auto& r : results)
        if (r) all.push_back(*r);
      std::cout << dump(all);
    }
  }
  for (const auto& f : failures)
    if (!f.empty()) return kExitError;
  return kExitOk;
}

struct VerdictArgs {
  std::string profile;
  std::string certificate;
  std::string expect;
  bool bkw_weak = false;
  std::string out;
};

int run_verdict(const VerdictArgs& a) {
  MappingClassProfile profile;
  if (!a.certificate.empty())
    profile = profile_from_certificate(certificate_from_json(parse_json(read_file(a.certificate), a.certificate)));
  else
    profile = profile_from_json(parse_json(read_file(a.profile), a.profile));
  const Verdict v = apply_rules(profile, VerdictOptions{a.bkw_weak});
  emit(to_json(v), a.out);
  if (!a.expect.empty() && decision_from_string(a.expect) != v.decision) {
    std::cerr << "refused: expected " << a.expect << " but the rules give " << to_string(v.decision)
              << (v.rule.empty() ? "" : " (" + v.rule + ")") << "\n";
    return kExitRefusal;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for Dehn-twist words, Penner pseudo-Anosovs and cyclic-cover constructions"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1, 1);

  HomologyArgs h;
  auto* hom = app.add_subcommand("homology", "Homology action of a twist word");
  hom->add_option("--word", h.word, "twist word, e.g. \"c1 c2^2 d1^-1\"")->required();
  hom->add_option("--genus", h.genus, "surface genus")->check(CLI::PositiveNumber);
  hom->add_option("--class", h.classes, "curve class name=coords (repeatable)");
  hom->add_option("--ledger", h.ledger, "take classes from a ledger JSON")->check(CLI::ExistingFile);
  hom->add_flag("--construction", h.construction, "take classes from the built-in construction ledger");
  hom->add_option("--modulus", h.moduli, "test level-m triviality (repeatable)");
  hom->add_option("--out", h.out, "output JSON path");

  LedgerArgs l;
  auto* led = app.add_subcommand("ledger", "Intersection ledger derivation");
  led->add_flag("--reproduce-table", l.reproduce, "derive the intersection table and compare");
  led->add_option("--base", l.base, "base ledger JSON")->check(CLI::ExistingFile);
  led->add_option("--set", l.overrides, "override a base value a,b,value (negative removes it)");
  led->add_option("--out", l.out, "output JSON path");

  PennerArgs p;
  auto* pen = app.add_subcommand("penner", "Certify a Penner word on a ribbon configuration");
  pen->add_option("--ribbon", p.ribbon, "ribbon file")->required()->check(CLI::ExistingFile);
  pen->add_option("--word", p.word, "word with positive c-twists and negative d-twists")->required();
  pen->add_option("--genus", p.genus, "target genus (default: from the ribbon file)");
  pen->add_option("--out", p.out, "output JSON path");

  CoverArgs c;
  auto* cov = app.add_subcommand("cover", "Cyclic cover certificates");
  cov->add_option("--degree", c.degrees, "cover degree n (repeatable)")->required();
  cov->add_option("--mode", c.mode, "arithmetic | homology-verified")
      ->check(CLI::IsMember({"arithmetic", "homology-verified"}));
  cov->add_option("--out", c.out, "output JSON path (single degree)");
  cov->add_option("--out-dir", c.out_dir, "directory for cover_n<degree>.json files");
  cov->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  cov->add_option("--seed", c.seed, "seed for the sampled conjugation check");
  cov->add_option("--cap", c.cap, "largest degree for homology-verified mode")->check(CLI::PositiveNumber);

  VerdictArgs v;
  auto* ver = app.add_subcommand("verdict", "Normal-generation verdict for a profile");
  auto* prof = ver->add_option("--profile", v.profile, "profile JSON")->check(CLI::ExistingFile);
  auto* from = ver->add_option("--certificate", v.certificate, "build the profile from a cover certificate")
                   ->check(CLI::ExistingFile);
  prof->excludes(from);
  ver->add_option("--expect", v.expect, "exit 2 unless the decision matches");
  ver->add_flag("--bkw-weak", v.bkw_weak, "enable the genus >= 1 subsurface variant");
  ver->add_option("--out", v.out, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*hom) return run_homology(h);
    if (*led) return run_ledger(l);
    if (*pen) return run_penner(p);
    if (*cov) return run_cover(c);
    if (*ver) {
      if (v.profile.empty() && v.certificate.empty()) throw Error(ErrorCode::ParseError, "--profile or --certificate required");
      return run_verdict(v);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
