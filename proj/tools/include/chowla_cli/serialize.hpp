#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "chowla/clt_audit.hpp"
#include "chowla/energy.hpp"
#include "chowla/fluctuations.hpp"
#include "chowla/polynomial.hpp"
#include "chowla/sieve.hpp"

namespace chowla::cli {

using Json = nlohmann::ordered_json;

// Exact values travel as strings ("p/q" for rationals) so no precision is lost.
Json to_json(const IntPolynomial& p);
Json to_json(const PolynomialClass& c);
Json to_json(const FactoredValue& row);
Json to_json(const LpfDensity& d);
Json to_json(const EnergyReport& r);
Json to_json(const ExponentFit& fit);
Json to_json(const PairedPrimeCounts& c);
Json to_json(const BombieriPilaBound& b);
Json to_json(const CltStatistics& s);
Json to_json(const McLeishEntry& e);
Json to_json(const ScaleGrid& g);
Json to_json(const FamilyCheck& c);
Json to_json(const ScaleSummary& s);
Json to_json(const CovarianceEntry& c);
Json to_json(const FluctReport& r);

// Writes an array of flat objects as CSV: one header from the first object's
// keys, one row per element. Nested values are written as compact JSON.
// Comment lines ("# ...") carry the metadata header.
void write_csv(const Json& metadata, const Json& rows, std::ostream& out);

}  // namespace chowla::cli
