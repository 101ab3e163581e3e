#include "io.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace arfima {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  double v{};
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw std::invalid_argument("malformed numeric field: '" + t + "'");
  return v;
}

}  // namespace

void write_column_csv(std::ostream& os, const std::string& header,
                      std::span<const double> values) {
  os << header << '\n' << std::setprecision(17);
  for (double v : values) os << v << '\n';
}

std::vector<double> read_column_csv(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("empty input; expected header '" + header + "'");
  if (trim(line) != header)
    throw std::invalid_argument("expected header '" + header + "', found '" +
                                trim(line) + "'");
  std::vector<double> out;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    out.push_back(parse_double(line));
  }
  return out;
}

void write_forecast_csv(std::ostream& os, const ForecastResult& result) {
  os << "horizon,point,method\n" << std::setprecision(17);
  for (std::size_t l = 0; l < result.point.size(); ++l)
    os << (l + 1) << ',' << result.point[l] << ',' << to_string(result.method)
       << '\n';
}

void write_table1_csv(std::ostream& os, std::span<const Table1Row> rows) {
  os << "model_id,method,n,h,reps,estimate,std_error,theory_value\n"
     << std::setprecision(17);
  for (const auto& r : rows)
    os << r.model_id << ',' << r.method << ',' << r.n << ',' << r.h << ','
       << r.reps << ',' << r.estimate << ',' << r.std_error << ','
       << r.theory_value << '\n';
}

std::map<std::string, std::string> read_key_value(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected key=value, found '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": empty key");
    kv[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

void write_key_value(std::ostream& os,
                     const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
}

}  // namespace arfima
