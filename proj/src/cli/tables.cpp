#include "fracrd/cli/tables.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fracrd::cli {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string printf_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const Cell& cell) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string(); },
                        [](double v) { return format_csv_number(v); },
                        [](long long v) { return std::to_string(v); },
                        [](const std::string& s) { return csv_quote(s); },
                        [](Exceeded) { return std::string(kCsvExceeded); },
                    },
                    cell);
}

}  // namespace

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("Table::add_row: wrong number of cells");
  rows_.push_back(std::move(row));
}

std::string format_csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return printf_double("%.17g", v);
}

std::string format_markdown(const Cell& cell, Style style) {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string("-"); },
                        [style](double v) {
                          switch (style) {
                            case Style::Fixed2: return printf_double("%.2f", v);
                            case Style::Fixed4: return printf_double("%.4f", v);
                            case Style::Reciprocal: {
                              const double r = 1.0 / v;
                              if (v > 0 && std::abs(r - std::round(r)) < 1e-9 * r) {
                                return "1/" + std::to_string(std::llround(r));
                              }
                              return printf_double("%.5g", v);
                            }
                            case Style::Scientific: return printf_double("%.4e", v);
                            default: return printf_double("%.5g", v);
                          }
                        },
                        [](long long v) { return std::to_string(v); },
                        [](const std::string& s) { return s; },
                        [](Exceeded) { return std::string(kMarkdownExceeded); },
                    },
                    cell);
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << csv_quote(columns_[c].name);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
}

void Table::write_markdown(std::ostream& os) const {
  os << '|';
  for (const auto& col : columns_) os << ' ' << col.name << " |";
  os << "\n|";
  for (const auto& col : columns_) os << (col.style == Style::Text ? "---|" : "--:|");
  os << '\n';
  for (const auto& row : rows_) {
    os << '|';
    for (std::size_t c = 0; c < row.size(); ++c) os << ' ' << format_markdown(row[c], columns_[c].style) << " |";
    os << '\n';
  }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw std::invalid_argument("parse_csv: unterminated quoted field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace fracrd::cli
