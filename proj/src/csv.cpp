#include "wavecast/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "wavecast/error.hpp"

namespace wavecast {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  return text;
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw CsvError("cannot parse number '" + std::string(field) + "'", line);
  }
  return value;
}

long parse_int(std::string_view field, std::size_t line) {
  field = trim(field);
  long value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw CsvError("cannot parse integer '" + std::string(field) + "'", line);
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return {};
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::vector<double> read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty input, expected header t,value", 1);
  if (trim(line) != "t,value") {
    throw CsvError("expected header 't,value', got '" + std::string(trim(line)) + "'", 1);
  }
  std::vector<double> values;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line));
    if (fields.size() != 2) throw CsvError("expected 2 fields, got " + std::to_string(fields.size()), number);
    parse_double(fields[0], number);
    const double value = parse_double(fields[1], number);
    if (!std::isfinite(value)) throw CsvError("non-finite value", number);
    values.push_back(value);
  }
  if (values.empty()) throw CsvError("no data rows", number);
  return values;
}

void write_series_csv(std::ostream& out, const std::vector<double>& values) {
  out << "t,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i + 1) << ',' << format_number(values[i]) << '\n';
  }
}

void write_coefficients_header(std::ostream& out) { out << "t,level,packet,kind,value\n"; }

void write_coefficient_frame(std::ostream& out, const CoefficientFrame& frame) {
  if (frame.mode == Mode::Ndwt) {
    for (int level = 1; level <= frame.levels; ++level) {
      out << frame.t << ',' << level << ",,smooth," << format_number(frame.smooth(level)) << '\n';
      out << frame.t << ',' << level << ",,detail," << format_number(frame.detail(level)) << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < frame.values.size(); ++i) {
    const NodeId node = node_at(Mode::Nwpt, i);
    out << frame.t << ',' << node.level << ',' << node.packet << ",packet,"
        << format_number(frame.values[i]) << '\n';
  }
}

void write_coefficients_csv(std::ostream& out, const CoefficientTable& table) {
  write_coefficients_header(out);
  for (std::size_t t = 1; t <= table.length(); ++t) write_coefficient_frame(out, table.frame(t));
}

CoefficientTable read_coefficients_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,level,packet,kind,value") {
    throw CsvError("expected header 't,level,packet,kind,value'", 1);
  }
  CoefficientTable table;
  std::map<std::size_t, std::vector<std::pair<std::size_t, double>>> by_node;
  bool saw_mode = false;
  std::size_t length = 0;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line));
    if (fields.size() != 5) throw CsvError("expected 5 fields", number);
    const long t = parse_int(fields[0], number);
    const long level = parse_int(fields[1], number);
    const std::string_view kind = trim(fields[3]);
    const Mode mode = kind == "packet" ? Mode::Nwpt : Mode::Ndwt;
    if (kind != "packet" && kind != "smooth" && kind != "detail") {
      throw CsvError("unknown kind '" + std::string(kind) + "'", number);
    }
    if (saw_mode && mode != table.mode) throw CsvError("mixed NDWT and NWPT rows", number);
    if (t < 1 || level < 1) throw CsvError("t and level must be >= 1", number);
    saw_mode = true;
    table.mode = mode;
    const int packet = mode == Mode::Nwpt ? static_cast<int>(parse_int(fields[2], number))
                                          : (kind == "detail" ? 1 : 0);
    const std::size_t index = node_index(mode, {static_cast<int>(level), packet});
    by_node[index].emplace_back(static_cast<std::size_t>(t), parse_double(fields[4], number));
    table.levels = std::max(table.levels, static_cast<int>(level));
    length = std::max(length, static_cast<std::size_t>(t));
  }
  if (!saw_mode) throw CsvError("no coefficient rows", number);
  TransformConfig shape;
  shape.levels = table.levels;
  shape.mode = table.mode;
  table.nodes.assign(node_count(shape), std::vector<double>(length));
  table.input.assign(length, 0.0);  // the input series is not part of the format
  for (auto& [index, values] : by_node) {
    if (index >= table.nodes.size()) throw CsvError("node outside the tree", number);
    for (auto [t, value] : values) table.nodes[index][t - 1] = value;
  }
  return table;
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& matrix) {
  out << "t,target";
  for (const auto& name : matrix.names) out << ',' << name;
  out << '\n';
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    out << matrix.times[static_cast<std::size_t>(r)] << ',' << format_number(matrix.target(r));
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) out << ',' << format_number(matrix.values(r, c));
    out << '\n';
  }
}

}  // namespace wavecast
