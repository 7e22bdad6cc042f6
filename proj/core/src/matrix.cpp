#include "locus/matrix.hpp"

#include "locus/errors.hpp"

namespace locus {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::fromRows(const std::vector<std::vector<double>>& rows) {
  const std::size_t nCols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), nCols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nCols) {
      throw ValidationError("ragged matrix: row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(nCols));
    }
    for (std::size_t j = 0; j < nCols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> Matrix::toRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

} // namespace locus
