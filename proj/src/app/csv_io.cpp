#include "simdiff/app/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace simdiff::app {

namespace {

double parse_double(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("csv: bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

CsvHeader parse_header(std::string_view line) {
  if (line.substr(0, 2) != "# ") throw std::invalid_argument("csv: missing header line");
  line.remove_prefix(2);
  CsvHeader h;
  int seen = 0;
  while (!line.empty()) {
    const auto comma = line.find(',');
    const auto item = trim(line.substr(0, comma));
    line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("csv: bad header field");
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "family") {
      h.family = std::string(value);
    } else if (key == "p") {
      h.p = parse_double(value);
    } else if (key == "D") {
      h.d_coeff = parse_double(value);
    } else if (key == "t") {
      h.time = parse_double(value);
    } else {
      throw std::invalid_argument("csv: unknown header field '" + std::string(key) + "'");
    }
    ++seen;
  }
  if (seen != 4) throw std::invalid_argument("csv: header needs family, p, D and t");
  return h;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string to_csv(const CsvHeader& header, std::span<const double> abscissa,
                   std::span<const double> values) {
  if (abscissa.size() != values.size()) throw std::invalid_argument("to_csv: length mismatch");
  std::string out = "# family=" + header.family + ", p=" + format_number(header.p) +
                    ", D=" + format_number(header.d_coeff) + ", t=" + format_number(header.time) +
                    "\n";
  out.reserve(out.size() + abscissa.size() * 48);
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    out += format_number(abscissa[i]);
    out += ',';
    out += format_number(values[i]);
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool have_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    if (!have_header) {
      table.header = parse_header(line);
      have_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("csv: row without comma");
    table.abscissa.push_back(parse_double(line.substr(0, comma)));
    table.values.push_back(parse_double(line.substr(comma + 1)));
  }
  if (!have_header) throw std::invalid_argument("csv: empty input");
  return table;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace simdiff::app
