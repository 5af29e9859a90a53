#pragma once

// Profile CSVs: one header line `# family=..., p=..., D=..., t=...`, then
// `abscissa,value` rows at 17 significant digits.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simdiff::app {

struct CsvHeader {
  std::string family;
  double p = 0.0;
  double d_coeff = 1.0;
  double time = 1.0;
};

struct CsvTable {
  CsvHeader header;
  std::vector<double> abscissa;
  std::vector<double> values;
};

/// %.17g; round-trips every finite double.
std::string format_number(double v);

/// %g, for file names and labels.
std::string short_number(double v);

std::string to_csv(const CsvHeader& header, std::span<const double> abscissa,
                   std::span<const double> values);

/// Throws std::invalid_argument on malformed text.
CsvTable parse_csv(std::string_view text);

/// Throws std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace simdiff::app
