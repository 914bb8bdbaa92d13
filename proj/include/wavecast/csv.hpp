#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "wavecast/featureset.hpp"
#include "wavecast/kernels.hpp"

namespace wavecast {

/// 17 significant digits, enough to round-trip any double. NaN renders empty.
std::string format_number(double value);

/// Parses a "t,value" CSV (header mandatory). Rows must be in order; the t
/// column is kept only for validation. Throws CsvError with the offending
/// line, or CsvError at line 1 for an empty file.
std::vector<double> read_series_csv(std::istream& in);
void write_series_csv(std::ostream& out, const std::vector<double>& values);

/// Long format: t,level,packet,kind,value. NDWT rows list each level's smooth
/// then detail with an empty packet column; NWPT rows use kind "packet".
void write_coefficients_header(std::ostream& out);
void write_coefficient_frame(std::ostream& out, const CoefficientFrame& frame);
void write_coefficients_csv(std::ostream& out, const CoefficientTable& table);

/// Inverse of write_coefficients_csv for one mode.
CoefficientTable read_coefficients_csv(std::istream& in);

/// Header "t,target,<names...>", one row per design row.
void write_feature_csv(std::ostream& out, const FeatureMatrix& matrix);

}  // namespace wavecast
