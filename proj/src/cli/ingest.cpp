#include "kalpha/cli/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string_view>

#include "kalpha/error.hpp"

namespace kalpha::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

ReliabilityMatrix parse_csv(std::istream& in, const InputSpec& spec) {
  if (spec.na_tokens.empty()) throw Error(ErrorCode::InvalidArgument, "na_tokens must not be empty");

  std::vector<ReliabilityMatrix::Cell> cells;
  std::size_t n_cols = 0;
  std::size_t n_rows = 0;
  std::size_t line_no = 0;
  bool header_pending = spec.has_header;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(line, spec.delimiter);
    ++n_rows;
    if (n_rows == 1) {
      n_cols = fields.size();
    } else if (fields.size() != n_cols) {
      throw Error(ErrorCode::RaggedRows,
                  "row " + std::to_string(n_rows) + " (line " + std::to_string(line_no) +
                      ") has " + std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(n_cols));
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      std::string_view cell = trim(fields[j]);
      if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
        cell = trim(cell.substr(1, cell.size() - 2));
      }
      if (std::find(spec.na_tokens.begin(), spec.na_tokens.end(), cell) != spec.na_tokens.end()) {
        cells.emplace_back();
        continue;
      }
      const auto value = parse_number(cell);
      if (!value) {
        throw Error(ErrorCode::UnparseableCell,
                    "row " + std::to_string(n_rows) + ", column " + std::to_string(j + 1) +
                        " (line " + std::to_string(line_no) + "): cannot parse '" +
                        std::string(cell) + "' as a number");
      }
      cells.emplace_back(*value);
    }
  }
  if (n_rows == 0) throw Error(ErrorCode::EmptyFile, "input contains no data rows");
  if (n_cols < 2) {
    throw Error(ErrorCode::InvalidMatrix, "input has " + std::to_string(n_cols) +
                                              " column(s); at least two coders are required");
  }
  return {n_rows, n_cols, std::move(cells)};
}

ReliabilityMatrix ingest(const InputSpec& spec) {
  if (spec.path == "-") return parse_csv(std::cin, spec);
  std::ifstream file(spec.path);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + spec.path + "' for reading");
  return parse_csv(file, spec);
}

}  // namespace kalpha::cli
