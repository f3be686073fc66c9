#pragma once

#include <istream>
#include <string>
#include <vector>

#include "kalpha/matrix.hpp"

namespace kalpha::cli {

struct InputSpec {
  std::string path = "-";  // "-" reads standard input
  bool has_header = false;
  std::vector<std::string> na_tokens{"NA", ""};
  char delimiter = ',';
};

// Rows are units and columns are coders. Cells are trimmed; surrounding
// double quotes are dropped; cells equal to an NA token are missing; all
// other cells must be finite decimal numbers. Whitespace-only lines are
// skipped. Errors: RaggedRows, UnparseableCell, EmptyFile, IoError, and
// InvalidMatrix for fewer than two columns.
ReliabilityMatrix ingest(const InputSpec& spec);
ReliabilityMatrix parse_csv(std::istream& in, const InputSpec& spec);

}  // namespace kalpha::cli
