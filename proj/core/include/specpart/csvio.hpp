#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specpart/frontier.hpp"

namespace specpart {

/// One experiment/frontier record. Schema (fixed order):
///   method,n,a,b,k_or_seed,gamma,sin_theta,aux1,aux2
/// aux1 carries cos theta or the noise-norm ratio, aux2 the surrogate error,
/// where applicable; NaN marks a column that does not apply to the row.
struct CsvRow {
  std::string method;
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t k_or_seed = 0;
  double gamma = 0.0;
  double sin_theta = 0.0;
  double aux1 = 0.0;
  double aux2 = 0.0;
};

/// Floats serialized with 12 significant digits ("nan" for NaN); locale-free.
std::string format_csv_double(double x);

extern const char* const kCsvHeader;

/// Writes optional '#' comment lines, the header, then the rows.
void write_csv(const std::vector<CsvRow>& rows, const std::string& path,
               const std::vector<std::string>& comments = {});

/// Ignores '#' comments; validates the header.
std::vector<CsvRow> read_csv(const std::string& path);

CsvRow row_from_point(const FrontierPoint& p);

}  // namespace specpart
