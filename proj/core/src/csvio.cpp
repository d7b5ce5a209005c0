#include "specpart/csvio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "specpart/errors.hpp"

namespace specpart {

const char* const kCsvHeader = "method,n,a,b,k_or_seed,gamma,sin_theta,aux1,aux2";

std::string format_csv_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  (void)ec;
  return std::string(buf, end);
}

void write_csv(const std::vector<CsvRow>& rows, const std::string& path,
               const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParamError("cannot open for writing: " + path);
  for (const auto& c : comments) out << "# " << c << "\n";
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.method << "," << r.n << "," << format_csv_double(r.a) << ","
        << format_csv_double(r.b) << "," << r.k_or_seed << ","
        << format_csv_double(r.gamma) << "," << format_csv_double(r.sin_theta)
        << "," << format_csv_double(r.aux1) << ","
        << format_csv_double(r.aux2) << "\n";
  }
  if (!out) throw ParamError("write failed: " + path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& s, const std::string& path) {
  if (s == "nan" || s == "-nan")
    return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParamError("bad numeric field '" + s + "' in " + path);
  }
}

}  // namespace

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParamError("cannot open: " + path);
  std::vector<CsvRow> rows;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != kCsvHeader)
        throw ParamError("unexpected CSV header in " + path + ": " + line);
      saw_header = true;
      continue;
    }
    auto f = split_fields(line);
    if (f.size() != 9)
      throw ParamError("expected 9 fields, got " +
                       std::to_string(f.size()) + " in " + path);
    CsvRow r;
    r.method = f[0];
    r.n = int(parse_double(f[1], path));
    r.a = parse_double(f[2], path);
    r.b = parse_double(f[3], path);
    r.k_or_seed = std::stoull(f[4]);
    r.gamma = parse_double(f[5], path);
    r.sin_theta = parse_double(f[6], path);
    r.aux1 = parse_double(f[7], path);
    r.aux2 = parse_double(f[8], path);
    rows.push_back(std::move(r));
  }
  if (!saw_header) throw ParamError("missing CSV header in " + path);
  return rows;
}

CsvRow row_from_point(const FrontierPoint& p) {
  CsvRow r;
  r.method = method_name(p.method);
  r.n = p.n;
  r.a = p.a;
  r.b = p.b;
  r.k_or_seed = p.k >= 0 ? std::uint64_t(p.k) : 0;
  r.gamma = p.gamma;
  r.sin_theta = p.sin_theta;
  r.aux1 = p.cos_theta;
  r.aux2 = std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace specpart
