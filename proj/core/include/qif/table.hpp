#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "qif/config.hpp"

namespace qif::cli {

/// Empty cell (undefined value), number, or label.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvalidArgument if the row width differs from the header.
  void add_row(std::vector<Cell> row);
};

/// "%.16e": scientific notation, 17 significant digits.
std::string format_number(double value);

/// CSV: header row, one line per row, '\n' endings, empty field for
/// undefined cells. JSON: array of objects keyed by column name in header
/// order, null for undefined cells. Byte-identical for identical tables.
std::string render_table(const Table& table, Format format);

/// Writes render_table to `path`; I/O failures throw qif::Error naming the path.
void write_table(const Table& table, Format format, const std::filesystem::path& path);

}  // namespace qif::cli
