#pragma once

#include <string>

#include "govmine/report/pipeline.hpp"

namespace govmine::report {

struct EmittedTables {
  std::string text;  // aligned plain-text tables
  std::string csv;   // same values, full precision
};

// Values are printed to three decimals in the text table and full precision
// in the CSV; the excludes-zero flag marks intervals with lo > 0 or hi < 0.
EmittedTables emit_tables(const ReportBundle& bundle);

std::string format_full(double v);           // shortest round-trip decimal
std::string format_fixed3(double v, bool forced_sign);

}  // namespace govmine::report
