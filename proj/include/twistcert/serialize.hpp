#pragma once

// JSON artifacts. Keys keep insertion order, integers are exact (decimal
// strings beyond 64 bits) and reals are 15-significant-digit strings, so
// identical inputs give byte-identical output.

#include <string>

#include <json.hpp>

#include "twistcert/cover.hpp"
#include "twistcert/ledger.hpp"
#include "twistcert/penner.hpp"
#include "twistcert/verdict.hpp"

namespace twistcert {

using Json = nlohmann::ordered_json;

std::string format_real(double value);
double parse_real(const Json& j);  // decimal string or JSON number

Json to_json(const Integer& value);
Integer integer_from_json(const Json& j);
Json to_json(const H1Vector& v);
H1Vector h1_from_json(const Json& j);
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json to_json(const IntersectionLedger& ledger);
IntersectionLedger ledger_from_json(const Json& j);
Json to_json(const TableReport& report);

Json to_json(const FillingReport& report);
Json to_json(const StretchCertificate& cert);

Json to_json(const SpreadingBound& bound);
Json to_json(const CoverCertificate& cert);
CoverCertificate certificate_from_json(const Json& j);

Json to_json(const MappingClassProfile& profile);
MappingClassProfile profile_from_json(const Json& j);
Json to_json(const Verdict& verdict);
Verdict verdict_from_json(const Json& j);

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);
// Throws ParseError with the parser's byte position.
Json parse_json(const std::string& text, const std::string& source);

}  // namespace twistcert
