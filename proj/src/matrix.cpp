#include "kalpha/matrix.hpp"

#include <cmath>
#include <string>

#include "kalpha/error.hpp"

namespace kalpha {

ReliabilityMatrix::ReliabilityMatrix(std::size_t n_units, std::size_t n_coders,
                                     std::vector<Cell> cells)
    : n_units_(n_units), n_coders_(n_coders), cells_(std::move(cells)) {
  if (n_units_ < 1) throw Error(ErrorCode::InvalidMatrix, "matrix needs at least one unit");
  if (n_coders_ < 2) throw Error(ErrorCode::InvalidMatrix, "matrix needs at least two coders");
  if (cells_.size() != n_units_ * n_coders_) {
    throw Error(ErrorCode::InvalidMatrix,
                "cell count " + std::to_string(cells_.size()) + " does not match " +
                    std::to_string(n_units_) + " x " + std::to_string(n_coders_));
  }
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    if (cells_[k] && !std::isfinite(*cells_[k])) {
      throw Error(ErrorCode::InvalidMatrix,
                  "non-finite score at unit " + std::to_string(k / n_coders_ + 1) +
                      ", coder " + std::to_string(k % n_coders_ + 1));
    }
  }
}

ReliabilityMatrix ReliabilityMatrix::from_rows(const std::vector<std::vector<Cell>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidMatrix, "matrix needs at least one unit");
  const std::size_t n_coders = rows.front().size();
  std::vector<Cell> cells;
  cells.reserve(rows.size() * n_coders);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n_coders) {
      throw Error(ErrorCode::InvalidMatrix, "row " + std::to_string(i + 1) + " has " +
                                                std::to_string(rows[i].size()) +
                                                " cells, expected " + std::to_string(n_coders));
    }
    cells.insert(cells.end(), rows[i].begin(), rows[i].end());
  }
  return {rows.size(), n_coders, std::move(cells)};
}

std::size_t ReliabilityMatrix::present_in(std::size_t unit) const {
  std::size_t count = 0;
  for (const auto& c : row(unit)) count += c.has_value();
  return count;
}

std::vector<double> ReliabilityMatrix::scores_of(std::size_t unit) const {
  std::vector<double> out;
  out.reserve(n_coders_);
  for (const auto& c : row(unit)) {
    if (c) out.push_back(*c);
  }
  return out;
}

std::vector<double> ReliabilityMatrix::pooled_scores() const {
  std::vector<double> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) {
    if (c) out.push_back(*c);
  }
  return out;
}

bool ReliabilityMatrix::complete() const {
  for (const auto& c : cells_) {
    if (!c) return false;
  }
  return true;
}

ReliabilityMatrix ReliabilityMatrix::without_unit(std::size_t unit) const {
  if (unit >= n_units_) {
    throw Error(ErrorCode::InvalidArgument, "unit index " + std::to_string(unit + 1) +
                                                " out of range 1.." + std::to_string(n_units_));
  }
  std::vector<Cell> cells;
  cells.reserve(cells_.size() - n_coders_);
  for (std::size_t i = 0; i < n_units_; ++i) {
    if (i == unit) continue;
    const auto r = row(i);
    cells.insert(cells.end(), r.begin(), r.end());
  }
  return {n_units_ - 1, n_coders_, std::move(cells)};
}

ReliabilityMatrix ReliabilityMatrix::without_coder(std::size_t coder) const {
  if (coder >= n_coders_) {
    throw Error(ErrorCode::InvalidArgument, "coder index " + std::to_string(coder + 1) +
                                                " out of range 1.." + std::to_string(n_coders_));
  }
  std::vector<Cell> cells;
  cells.reserve(cells_.size() - n_units_);
  for (std::size_t i = 0; i < n_units_; ++i) {
    for (std::size_t j = 0; j < n_coders_; ++j) {
      if (j != coder) cells.push_back(at(i, j));
    }
  }
  return {n_units_, n_coders_ - 1, std::move(cells)};
}

ReliabilityMatrix ReliabilityMatrix::select_units(std::span<const std::size_t> units) const {
  std::vector<Cell> cells;
  cells.reserve(units.size() * n_coders_);
  for (const auto u : units) {
    const auto r = row(u);
    cells.insert(cells.end(), r.begin(), r.end());
  }
  return {units.size(), n_coders_, std::move(cells)};
}

}  // namespace kalpha
