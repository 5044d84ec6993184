#include "chebdiff/coeff_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

#include "chebdiff/errors.hpp"

namespace chebdiff {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_index(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
  }
  if (value < 0) throw ParseError(line, std::string(name) + " must be nonnegative");
  return value;
}

double parse_value(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, "invalid coefficient '" + std::string(field) + "'");
  }
  return value;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CoeffGrid build_checked(int max_k, int max_j, std::vector<CoeffEntry> entries, std::size_t line) {
  try {
    return CoeffGrid(max_k, max_j, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

CoeffGrid read_coeff_csv(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  std::vector<CoeffEntry> entries;
  std::set<CoeffIndex> seen;
  int max_k = 0;
  int max_j = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty()) continue;
    if (!header_seen) {
      if (text != "k,j,coeff") throw ParseError(line, "expected header 'k,j,coeff'");
      header_seen = true;
      continue;
    }
    const auto c1 = text.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
    if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError(line, "expected three comma-separated fields");
    }
    const int k = parse_index(text.substr(0, c1), line, "k");
    const int j = parse_index(text.substr(c1 + 1, c2 - c1 - 1), line, "j");
    const double v = parse_value(text.substr(c2 + 1), line);
    if (!std::isfinite(v)) throw ParseError(line, "coefficient is not finite");
    if (!seen.insert(CoeffIndex{k, j}).second) {
      throw ParseError(line, "duplicate index (" + std::to_string(k) + "," + std::to_string(j) + ")");
    }
    max_k = std::max(max_k, k);
    max_j = std::max(max_j, j);
    entries.push_back({k, j, v});
  }
  if (in.bad()) throw IoError("read failure while parsing coefficient CSV");
  return build_checked(max_k, max_j, std::move(entries), 0);
}

void write_coeff_csv(std::ostream& out, const CoeffGrid& grid) {
  out << "k,j,coeff\n";
  grid.for_each_nonzero([&](int k, int j, double v) { out << k << ',' << j << ',' << format_value(v) << '\n'; });
}

CoeffGrid read_coeff_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid coefficient JSON: ") + e.what());
  }
  try {
    const int max_k = doc.at("max_k").get<int>();
    const int max_j = doc.at("max_j").get<int>();
    std::vector<CoeffEntry> entries;
    for (const auto& item : doc.at("entries")) {
      if (!item.is_array() || item.size() != 3) throw ParseError(0, "each entry must be [k, j, value]");
      entries.push_back({item[0].get<int>(), item[1].get<int>(), item[2].get<double>()});
    }
    return build_checked(max_k, max_j, std::move(entries), 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid coefficient JSON: ") + e.what());
  }
}

void write_coeff_json(std::ostream& out, const CoeffGrid& grid) {
  nlohmann::json doc;
  doc["max_k"] = grid.max_k();
  doc["max_j"] = grid.max_j();
  auto entries = nlohmann::json::array();
  grid.for_each_nonzero([&](int k, int j, double v) { entries.push_back({k, j, v}); });
  doc["entries"] = std::move(entries);
  out << doc.dump() << '\n';
}

CoeffGrid load_coeffs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coefficient file " + path.string());
  if (path.extension() == ".json") return read_coeff_json(in);
  return read_coeff_csv(in);
}

void save_coeffs(const std::filesystem::path& path, const CoeffGrid& grid) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write coefficient file " + path.string());
  if (path.extension() == ".json") {
    write_coeff_json(out, grid);
  } else {
    write_coeff_csv(out, grid);
  }
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace chebdiff
