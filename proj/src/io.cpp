#include "tropiso/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tropiso/errors.hpp"

namespace tropiso::io {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

TropScalar scalar_from_json(Semiring s, const nlohmann::json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? TropScalar(Rational(v.get<std::uint64_t>()))
                                  : TropScalar(Rational(v.get<std::int64_t>()));
  }
  if (v.is_number_float()) {
    // Shortest round-trip decimal, so that 0.1 reads as 1/10.
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return TropScalar(parse_rational(std::string_view(buf, res.ptr - buf)));
  }
  if (v.is_string()) return parse_scalar(s, v.get<std::string>());
  throw ParseError("matrix entry must be a number or a string, got " + v.dump());
}

}  // namespace

TropMatrix parse_csv(std::string_view text, Semiring semiring) {
  std::vector<std::vector<TropScalar>> grid;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos || view[first] == '#') continue;
    std::vector<TropScalar> row;
    for (const auto& tok : split(view, ',')) row.push_back(parse_scalar(semiring, tok));
    grid.push_back(std::move(row));
  }
  if (grid.empty()) throw ParseError("CSV contains no matrix rows");
  for (const auto& r : grid)
    if (r.size() != grid.front().size()) throw ParseError("CSV rows have different lengths");
  return TropMatrix(semiring, std::move(grid));
}

std::string to_csv(const TropMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_scalar(m.semiring(), m(i, j));
    }
    out += '\n';
  }
  return out;
}

TropMatrix from_json(const nlohmann::json& doc, std::optional<Semiring> semiring_override,
                     std::optional<Semiring> fallback) {
  if (!doc.is_object()) throw ParseError("matrix JSON must be an object");
  Semiring s = Semiring::MaxPlus;
  if (semiring_override) {
    s = *semiring_override;
  } else if (doc.contains("semiring")) {
    if (!doc["semiring"].is_string()) throw ParseError("\"semiring\" must be \"min\" or \"max\"");
    s = parse_semiring(doc["semiring"].get<std::string>());
  } else if (fallback) {
    s = *fallback;
  } else {
    throw ParseError("matrix JSON lacks \"semiring\"");
  }
  if (!doc.contains("data") || !doc["data"].is_array()) throw ParseError("matrix JSON lacks a \"data\" array");
  std::vector<std::vector<TropScalar>> grid;
  for (const auto& row : doc["data"]) {
    if (!row.is_array()) throw ParseError("each row of \"data\" must be an array");
    std::vector<TropScalar> r;
    for (const auto& v : row) r.push_back(scalar_from_json(s, v));
    grid.push_back(std::move(r));
  }
  if (grid.empty() || grid.front().empty()) throw ParseError("matrix JSON has an empty \"data\" array");
  for (const auto& r : grid)
    if (r.size() != grid.front().size()) throw ParseError("rows of \"data\" have different lengths");
  if (doc.contains("rows") && doc["rows"] != grid.size())
    throw ParseError("\"rows\" does not match the number of data rows");
  if (doc.contains("cols") && doc["cols"] != grid.front().size())
    throw ParseError("\"cols\" does not match the data row length");
  return TropMatrix(s, std::move(grid));
}

nlohmann::json to_json(const TropMatrix& m) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const TropScalar& x = m(i, j);
      if (x.is_finite() && denominator(x.value()) == 1 &&
          boost::multiprecision::abs(numerator(x.value())) < (boost::multiprecision::mpz_int(1) << 53)) {
        row.push_back(numerator(x.value()).convert_to<std::int64_t>());
      } else {
        row.push_back(format_scalar(m.semiring(), x));
      }
    }
    data.push_back(std::move(row));
  }
  return {{"semiring", std::string(semiring_name(m.semiring()))},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::move(data)}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write '" + path.string() + "'");
  out << contents;
}

TropMatrix load_matrix(const std::filesystem::path& path, std::optional<Semiring> semiring) {
  std::string text = read_file(path);
  if (path.extension() == ".csv") return parse_csv(text, semiring.value_or(Semiring::MaxPlus));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  return from_json(doc, semiring);
}

std::vector<NamedMatrix> load_matrix_set(const std::filesystem::path& path, std::optional<Semiring> semiring,
                                         std::optional<Semiring> fallback) {
  std::string text = read_file(path);
  if (path.extension() == ".csv")
    return {{path.stem().string(), parse_csv(text, semiring.value_or(fallback.value_or(Semiring::MaxPlus)))}};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  std::vector<NamedMatrix> out;
  if (doc.is_array()) {
    for (std::size_t k = 0; k < doc.size(); ++k) out.push_back({std::to_string(k), from_json(doc[k], semiring, fallback)});
  } else if (doc.is_object() && doc.contains("matrices")) {
    const auto& ms = doc["matrices"];
    if (ms.is_array()) {
      for (std::size_t k = 0; k < ms.size(); ++k) out.push_back({std::to_string(k), from_json(ms[k], semiring, fallback)});
    } else if (ms.is_object()) {
      for (const auto& [name, m] : ms.items()) out.push_back({name, from_json(m, semiring, fallback)});
    } else {
      throw ParseError("\"matrices\" must be an array or an object");
    }
  } else {
    out.push_back({path.stem().string(), from_json(doc, semiring, fallback)});
  }
  if (out.empty()) throw ParseError("'" + path.string() + "' holds no matrix");
  return out;
}

}  // namespace tropiso::io
