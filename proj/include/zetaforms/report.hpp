#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <string>
#include <vector>

#include "zetaforms/numeric.hpp"

namespace zf {

using Json = nlohmann::ordered_json;

// Decimal strings; certified values carry "err_exp" with |error| <= 2^err_exp.
Json json_number(const BigFloat& v, int digits = 30);
Json json_certified(const BigFloat& v, const BigFloat& err, int max_digits = 40);
Json json_complex(const BigComplex& z, int digits = 30);
Json json_rational(const mpq_class& v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
std::string to_csv(const Table& t);
Json table_json(const Table& t);

// {"schema": 1, "command": ..., "body": ..., "metadata": ...}.  Only
// `metadata` may vary between identical runs.
Json envelope(const std::string& command, Json body, Json metadata);

}  // namespace zf
