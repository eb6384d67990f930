#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wva {

struct TableRow {
    double x = 0.0;
    double value = 0.0;
    std::string variant;
    std::optional<double> stderr_value; // empty for analytic rows
};

/// Locale-independent formatting with 17 significant digits, enough to
/// round-trip any double exactly.
std::string format_double(double v);

/// Shortest representation that round-trips; used for labels.
std::string format_double_compact(double v);

/// Columns: x,value,variant,stderr. stderr is left empty for analytic rows.
/// Byte output is deterministic for identical inputs.
void write_csv(std::ostream& os, const std::vector<TableRow>& rows);

/// Same rows as a JSON array of objects (stderr null when absent).
void write_json(std::ostream& os, const std::vector<TableRow>& rows);

} // namespace wva
