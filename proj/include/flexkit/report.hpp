#ifndef FLEXKIT_REPORT_HPP
#define FLEXKIT_REPORT_HPP

#include <string>
#include <vector>

#include "flexkit/kuribayashi.hpp"
#include "json.hpp"

namespace flexkit {

using Json = nlohmann::ordered_json;

/// Complex numbers serialize as [re, im], points as three such pairs.
Json to_json(Complex z);
Json to_json(const ProjPoint& p);
Json to_json(const FlexRecord& r);
Json to_json(const FlexDiagnostics& d);
Json to_json(const FlexOrbit& o);
Json to_json(const ClassificationReport& r);
Json to_json(const FixedOrbitReport& o);

Complex complex_from_json(const Json& j);
ProjPoint point_from_json(const Json& j);
FlexRecord flex_from_json(const Json& j);

/// Two-row cell ("count" over "orbit shape"), then the flexes.
std::string render_table(const ClassificationReport& r, bool verbose = false);
/// One row per flex.
std::string render_csv(const ClassificationReport& r);

std::string render_flex_table(const std::vector<FlexRecord>& flexes);
std::string render_flex_csv(const std::vector<FlexRecord>& flexes);

/// Fixed-point precision used by the human-readable tables.
std::string format_fixed(Complex z, int digits = 6);

}  // namespace flexkit

#endif  // FLEXKIT_REPORT_HPP
