#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kalpha {

// Units in rows, coders in columns. Absent cells are missing scores.
class ReliabilityMatrix {
 public:
  using Cell = std::optional<double>;

  // Throws Error(InvalidMatrix) unless n_units >= 1, n_coders >= 2,
  // cells.size() == n_units * n_coders and every present cell is finite.
  ReliabilityMatrix(std::size_t n_units, std::size_t n_coders,
                    std::vector<Cell> cells);

  // Convenience for literals; every row must have the same length.
  static ReliabilityMatrix from_rows(const std::vector<std::vector<Cell>>& rows);

  std::size_t units() const noexcept { return n_units_; }
  std::size_t coders() const noexcept { return n_coders_; }

  const Cell& at(std::size_t unit, std::size_t coder) const {
    return cells_[unit * n_coders_ + coder];
  }
  std::span<const Cell> row(std::size_t unit) const {
    return {cells_.data() + unit * n_coders_, n_coders_};
  }

  // Number of present scores in a unit (m_i).
  std::size_t present_in(std::size_t unit) const;
  // Present scores of a unit in column order.
  std::vector<double> scores_of(std::size_t unit) const;
  // All present scores in row-major order.
  std::vector<double> pooled_scores() const;
  bool complete() const;

  ReliabilityMatrix without_unit(std::size_t unit) const;
  ReliabilityMatrix without_coder(std::size_t coder) const;
  ReliabilityMatrix select_units(std::span<const std::size_t> units) const;

  friend bool operator==(const ReliabilityMatrix&, const ReliabilityMatrix&) = default;

 private:
  std::size_t n_units_;
  std::size_t n_coders_;
  std::vector<Cell> cells_;
};

}  // namespace kalpha
