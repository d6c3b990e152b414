#pragma once

// Row tables rendered either as CSV (17 significant digits, round-trips
// exactly) or as a compact markdown table (2.9347e-07, 10.00, 1/64).

#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fracrd::cli {

/// Marks a run that exceeded the iteration cap.
struct Exceeded {};

using Cell = std::variant<std::monostate, double, long long, std::string, Exceeded>;

enum class Style {
  Text,
  Integer,
  Scientific,  // 2.9347e-07
  Fixed2,      // 10.00
  Fixed4,      // 1.9800
  Reciprocal,  // 1/64 when the reciprocal is an integer
};

struct Column {
  std::string name;
  Style style = Style::Text;
};

class Table {
 public:
  explicit Table(std::vector<Column> columns);

  void add_row(std::vector<Cell> row);
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  void write_csv(std::ostream& os) const;
  void write_markdown(std::ostream& os) const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

inline constexpr std::string_view kCsvExceeded = ">1000";
inline constexpr std::string_view kMarkdownExceeded = "†";

std::string format_csv_number(double v);
std::string format_markdown(const Cell& cell, Style style);

/// Splits CSV text (LF line endings, RFC 4180 quoting) into records.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace fracrd::cli
