#include "zetaforms/report.hpp"

#include <climits>
#include <sstream>

namespace zf {

Json json_number(const BigFloat& v, int digits) { return v.to_string(digits); }

Json json_certified(const BigFloat& v, const BigFloat& err, int max_digits) {
  long e = err2exp(err);
  int d = std::min(digits_for(v, e), max_digits);
  Json j;
  j["value"] = v.to_string(d);
  if (e == LONG_MIN)
    j["err_exp"] = nullptr;
  else
    j["err_exp"] = e;
  return j;
}

Json json_complex(const BigComplex& z, int digits) {
  return Json{{"re", z.re.to_string(digits)}, {"im", z.im.to_string(digits)}};
}

Json json_rational(const mpq_class& v) { return v.get_str(); }

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

Json table_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i) o[t.columns[i]] = r[i];
    rows.push_back(std::move(o));
  }
  return rows;
}

Json envelope(const std::string& command, Json body, Json metadata) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["body"] = std::move(body);
  j["metadata"] = std::move(metadata);
  return j;
}

}  // namespace zf
