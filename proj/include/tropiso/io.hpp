#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "tropiso/matrix.hpp"

namespace tropiso::io {

/// One matrix per CSV text: rows separated by newlines, entries by commas.
/// Blank lines and lines starting with '#' are skipped.
TropMatrix parse_csv(std::string_view text, Semiring semiring);
std::string to_csv(const TropMatrix& m);

/// {"semiring": "min"|"max", "rows": d, "cols": m, "data": [[...]]}.
/// Entries may be JSON integers, JSON floats (read via their shortest
/// decimal form) or strings ("p/q", decimals, "inf", "-inf").
/// `semiring_override` replaces the semiring stored in the document;
/// `fallback` is used when the document has none.
TropMatrix from_json(const nlohmann::json& doc, std::optional<Semiring> semiring_override = {},
                     std::optional<Semiring> fallback = {});
/// Integers are written as JSON numbers, everything else as strings.
nlohmann::json to_json(const TropMatrix& m);

/// Dispatches on the extension: ".csv" reads CSV, anything else JSON.
/// CSV files use `semiring` (default max-plus when absent).
TropMatrix load_matrix(const std::filesystem::path& path, std::optional<Semiring> semiring = {});

struct NamedMatrix {
  std::string name;
  TropMatrix matrix;
};

/// A single matrix document, a JSON array of them, or
/// {"matrices": [...]} / {"matrices": {"name": {...}, ...}} (names in sorted order).
std::vector<NamedMatrix> load_matrix_set(const std::filesystem::path& path, std::optional<Semiring> semiring = {},
                                         std::optional<Semiring> fallback = {});

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace tropiso::io
