#ifndef ARFIMA_IO_HPP
#define ARFIMA_IO_HPP

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "forecast.hpp"
#include "montecarlo.hpp"

namespace arfima {

// Single-column CSV with the given header ("y" for series, "eps" for
// innovations).  Values are written with 17 significant digits so a
// write/read round trip is exact.
void write_column_csv(std::ostream& os, const std::string& header,
                      std::span<const double> values);
std::vector<double> read_column_csv(std::istream& is, const std::string& header);

// horizon,point,method
void write_forecast_csv(std::ostream& os, const ForecastResult& result);

// model_id,method,n,h,reps,estimate,std_error,theory_value
void write_table1_csv(std::ostream& os, std::span<const Table1Row> rows);

// key=value per line; '#' starts a comment; blank lines skipped.
std::map<std::string, std::string> read_key_value(std::istream& is);
void write_key_value(std::ostream& os,
                     const std::map<std::string, std::string>& kv);

}  // namespace arfima

#endif
