#pragma once

#include "takagi/eval.hpp"
#include "takagi/humps.hpp"
#include "takagi/levelsets.hpp"
#include "takagi/locals.hpp"
#include "takagi/signs.hpp"
#include "takagi/stats.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace takagi {

using Json = nlohmann::json;

/// A big integer as a JSON number when it fits in 64 bits, else as a decimal string.
Json integer_json(const BigInt& v);
/// [numerator, denominator].
Json fraction_json(const Rational& v);

Json to_json(const ExtremaReport& report, HeightClass cls);
Json to_json(const Enclosure& e);
Json to_json(const LevelCover& cover);
Json to_json(const McReport& report);
Json to_json(const CardinalityReport& report);
Json to_json(const LocalCount& count, const Rational& y);

/// Rows are joined with '\n' and end with a newline; the first row is the header.
std::string hump_csv(const std::vector<TruncatedHump>& humps);
std::string cover_csv(const LevelCover& cover);
std::string local_count_csv_row(const Rational& y, const LocalCount& count);
std::string histogram_csv(const CardinalityReport& report);

} // namespace takagi
