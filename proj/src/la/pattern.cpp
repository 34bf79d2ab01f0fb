#include <xt/la/pattern.hpp>

#include <xt/common/exceptions.hpp>

#include <algorithm>

namespace xt::la {


SparsityPattern::SparsityPattern(std::size_t rows, std::size_t cols)
  : rows_(rows)
  , cols_(cols)
  , inner_(rows)
{}

SparsityPattern SparsityPattern::dense(std::size_t rows, std::size_t cols)
{
  SparsityPattern pattern(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    pattern.inner_[i].resize(cols);
    for (std::size_t j = 0; j < cols; ++j)
      pattern.inner_[i][j] = j;
  }
  return pattern;
}

void SparsityPattern::insert(std::size_t row, std::size_t col)
{
  if (row >= rows_ || col >= cols_)
    throw UsageError("pattern position (" + std::to_string(row) + ", " + std::to_string(col)
                     + ") out of range for a " + std::to_string(rows_) + "x"
                     + std::to_string(cols_) + " pattern");
  auto& columns = inner_[row];
  const auto it = std::lower_bound(columns.begin(), columns.end(), col);
  if (it == columns.end() || *it != col)
    columns.insert(it, col);
}

bool SparsityPattern::contains(std::size_t row, std::size_t col) const
{
  if (row >= rows_ || col >= cols_)
    return false;
  const auto& columns = inner_[row];
  return std::binary_search(columns.begin(), columns.end(), col);
}

std::size_t SparsityPattern::nnz() const
{
  std::size_t total = 0;
  for (const auto& columns : inner_)
    total += columns.size();
  return total;
}

const std::vector<std::size_t>& SparsityPattern::inner(std::size_t row) const
{
  if (row >= rows_)
    throw UsageError("pattern row " + std::to_string(row) + " out of range");
  return inner_[row];
}


} // namespace xt::la
