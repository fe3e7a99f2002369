#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "emptysimplex/experiments.hpp"
#include "emptysimplex/geometry.hpp"

namespace emptysimplex {

/// Decimal text with 12 significant digits; NaN becomes the empty string.
std::string format_number(double x);

void write_result_header(std::ostream& out);
void write_result_rows(std::ostream& out, std::span<const ResultRow> rows);

/// One point per line, comma-separated coordinates with header x0,...,x{M-1}.
void write_points(std::ostream& out, const PointSet& points);
/// Reads the format above; the header is optional. Blank lines are skipped.
PointSet read_points(std::istream& in);

}  // namespace emptysimplex
