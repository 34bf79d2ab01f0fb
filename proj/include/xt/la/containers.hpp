#pragma once

#include <xt/common/exceptions.hpp>
#include <xt/la/pattern.hpp>

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <vector>

namespace xt::la {


// All containers are thin handles on shared backends with copy-on-write:
// copies (and copy()) share, the first mutation through a sharing handle
// clones.  The process-wide clone counter below is part of the observable
// contract so tests can pin down exactly when deep copies happen.
std::uint64_t deep_copy_count();
void reset_deep_copy_count();

namespace internal {
void record_deep_copy();
}


class DenseVector
{
public:
  explicit DenseVector(std::size_t size = 0, double value = 0.0);
  DenseVector(std::initializer_list<double> values);

  std::size_t size() const { return backend_->size(); }

  double get_entry(std::size_t i) const;
  void set_entry(std::size_t i, double value);
  void add_to_entry(std::size_t i, double value);

  void scal(double alpha);
  void axpy(double alpha, const DenseVector& other);

  double dot(const DenseVector& other) const;
  double l1_norm() const;
  double l2_norm() const;
  double sup_norm() const;
  double mean() const;
  double standard_deviation() const;

  // Shares the backend; an eventual deep copy is deferred to the first
  // mutation of either handle.
  DenseVector copy() const { return *this; }
  long share_count() const { return backend_.use_count(); }

  const std::vector<double>& storage() const { return *backend_; }

private:
  void ensure_uniqueness();
  void check_index(std::size_t i) const;

  std::shared_ptr<std::vector<double>> backend_;
};


class DenseMatrix
{
public:
  DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0);
  // Matching the interface of the sparse containers; the pattern only
  // contributes its dimensions here.
  explicit DenseMatrix(const SparsityPattern& pattern);

  std::size_t rows() const { return backend_->rows; }
  std::size_t cols() const { return backend_->cols; }
  std::size_t nnz() const;

  double get_entry(std::size_t i, std::size_t j) const;
  void set_entry(std::size_t i, std::size_t j, double value);
  void add_to_entry(std::size_t i, std::size_t j, double value);

  void scal(double alpha);
  void axpy(double alpha, const DenseMatrix& other);

  void mv(const DenseVector& x, DenseVector& y) const;
  DenseVector mv(const DenseVector& x) const;

  void clear_row(std::size_t i);
  void clear_col(std::size_t j);
  void unit_row(std::size_t i);
  void unit_col(std::size_t j);

  SparsityPattern pattern() const;
  DenseMatrix pruned(double eps = 1e-15) const;

  DenseMatrix copy() const { return *this; }
  long share_count() const { return backend_.use_count(); }

  const std::vector<double>& storage() const { return backend_->data; }

private:
  struct Backend
  {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row major
  };

  void ensure_uniqueness();
  void check_index(std::size_t i, std::size_t j) const;

  std::shared_ptr<Backend> backend_;
};


// Compressed sparse rows over a fixed pattern.  Reads outside the pattern
// yield 0, writes outside raise; the pattern itself is immutable and shared
// even across deep copies.
class CsrMatrix
{
public:
  explicit CsrMatrix(const SparsityPattern& pattern);

  std::size_t rows() const { return backend_->pattern->rows(); }
  std::size_t cols() const { return backend_->pattern->cols(); }
  std::size_t nnz() const { return backend_->values.size(); }

  double get_entry(std::size_t i, std::size_t j) const;
  void set_entry(std::size_t i, std::size_t j, double value);
  void add_to_entry(std::size_t i, std::size_t j, double value);

  void scal(double alpha);
  void axpy(double alpha, const CsrMatrix& other);

  void mv(const DenseVector& x, DenseVector& y) const;
  DenseVector mv(const DenseVector& x) const;

  void clear_row(std::size_t i);
  void clear_col(std::size_t j);
  void unit_row(std::size_t i);
  void unit_col(std::size_t j);

  const SparsityPattern& pattern() const { return *backend_->pattern; }
  CsrMatrix pruned(double eps = 1e-15) const;

  CsrMatrix copy() const { return *this; }
  long share_count() const { return backend_.use_count(); }

  const std::vector<double>& values() const { return backend_->values; }

private:
  struct Backend
  {
    std::shared_ptr<const SparsityPattern> pattern;
    std::vector<std::size_t> row_offsets;
    std::vector<std::size_t> columns;
    std::vector<double> values;
  };

  void ensure_uniqueness();
  // position in the value array, or npos if (i, j) is outside the pattern
  std::size_t position(std::size_t i, std::size_t j) const;

  std::shared_ptr<Backend> backend_;
};


// The canonical copy-scal-axpy loop; the initial copy is the only deep
// copy, no matter how many components enter the sum.
template <class Container>
Container assemble_lincomb(const std::vector<Container>& components,
                           const std::vector<double>& coefficients)
{
  if (components.empty())
    throw UsageError("assemble_lincomb needs at least one component");
  if (components.size() != coefficients.size())
    throw UsageError("assemble_lincomb got " + std::to_string(components.size())
                     + " components but " + std::to_string(coefficients.size())
                     + " coefficients");
  auto result = components[0].copy();
  result.scal(coefficients[0]);
  for (std::size_t q = 1; q < components.size(); ++q)
    result.axpy(coefficients[q], components[q]);
  return result;
}


} // namespace xt::la
