#pragma once

#include <cstddef>
#include <vector>

namespace xt::la {


// Sparsity layout of a rows x cols matrix: per row a sorted, duplicate-free
// list of column indices.
class SparsityPattern
{
public:
  SparsityPattern(std::size_t rows, std::size_t cols);

  static SparsityPattern dense(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void insert(std::size_t row, std::size_t col);
  bool contains(std::size_t row, std::size_t col) const;

  std::size_t nnz() const;
  const std::vector<std::size_t>& inner(std::size_t row) const;

  bool operator==(const SparsityPattern&) const = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<std::size_t>> inner_;
};


} // namespace xt::la
