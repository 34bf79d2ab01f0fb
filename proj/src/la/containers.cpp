#include <xt/la/containers.hpp>

#include <atomic>
#include <cmath>
#include <limits>

namespace xt::la {

namespace {

std::atomic<std::uint64_t> deep_copies{0};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

} // namespace

std::uint64_t deep_copy_count()
{
  return deep_copies.load();
}

void reset_deep_copy_count()
{
  deep_copies.store(0);
}

namespace internal {
void record_deep_copy()
{
  deep_copies.fetch_add(1);
}
} // namespace internal


DenseVector::DenseVector(std::size_t size, double value)
  : backend_(std::make_shared<std::vector<double>>(size, value))
{}

DenseVector::DenseVector(std::initializer_list<double> values)
  : backend_(std::make_shared<std::vector<double>>(values))
{}

double DenseVector::get_entry(std::size_t i) const
{
  check_index(i);
  return (*backend_)[i];
}

void DenseVector::set_entry(std::size_t i, double value)
{
  check_index(i);
  ensure_uniqueness();
  (*backend_)[i] = value;
}

void DenseVector::add_to_entry(std::size_t i, double value)
{
  check_index(i);
  ensure_uniqueness();
  (*backend_)[i] += value;
}

void DenseVector::scal(double alpha)
{
  ensure_uniqueness();
  for (double& entry : *backend_)
    entry *= alpha;
}

void DenseVector::axpy(double alpha, const DenseVector& other)
{
  if (other.size() != size())
    throw UsageError("axpy size mismatch: " + std::to_string(size()) + " vs. "
                     + std::to_string(other.size()));
  ensure_uniqueness();
  const auto& rhs = *other.backend_;
  auto& lhs = *backend_;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    lhs[i] += alpha * rhs[i];
}

double DenseVector::dot(const DenseVector& other) const
{
  if (other.size() != size())
    throw UsageError("dot size mismatch: " + std::to_string(size()) + " vs. "
                     + std::to_string(other.size()));
  double result = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    result += (*backend_)[i] * (*other.backend_)[i];
  return result;
}

double DenseVector::l1_norm() const
{
  double result = 0.0;
  for (double entry : *backend_)
    result += std::abs(entry);
  return result;
}

double DenseVector::l2_norm() const
{
  return std::sqrt(dot(*this));
}

double DenseVector::sup_norm() const
{
  double result = 0.0;
  for (double entry : *backend_)
    result = std::max(result, std::abs(entry));
  return result;
}

double DenseVector::mean() const
{
  if (size() == 0)
    throw UsageError("mean of an empty vector");
  double sum = 0.0;
  for (double entry : *backend_)
    sum += entry;
  return sum / static_cast<double>(size());
}

double DenseVector::standard_deviation() const
{
  const double m = mean();
  double sum = 0.0;
  for (double entry : *backend_)
    sum += (entry - m) * (entry - m);
  return std::sqrt(sum / static_cast<double>(size()));
}

void DenseVector::ensure_uniqueness()
{
  if (backend_.use_count() > 1) {
    backend_ = std::make_shared<std::vector<double>>(*backend_);
    internal::record_deep_copy();
  }
}

void DenseVector::check_index(std::size_t i) const
{
  if (i >= size())
    throw UsageError("vector index " + std::to_string(i) + " out of range for size "
                     + std::to_string(size()));
}


DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double value)
  : backend_(std::make_shared<Backend>(Backend{rows, cols, std::vector<double>(rows * cols, value)}))
{}

DenseMatrix::DenseMatrix(const SparsityPattern& pattern)
  : DenseMatrix(pattern.rows(), pattern.cols())
{}

std::size_t DenseMatrix::nnz() const
{
  std::size_t count = 0;
  for (double entry : backend_->data)
    if (entry != 0.0)
      ++count;
  return count;
}

double DenseMatrix::get_entry(std::size_t i, std::size_t j) const
{
  check_index(i, j);
  return backend_->data[i * cols() + j];
}

void DenseMatrix::set_entry(std::size_t i, std::size_t j, double value)
{
  check_index(i, j);
  ensure_uniqueness();
  backend_->data[i * cols() + j] = value;
}

void DenseMatrix::add_to_entry(std::size_t i, std::size_t j, double value)
{
  check_index(i, j);
  ensure_uniqueness();
  backend_->data[i * cols() + j] += value;
}

void DenseMatrix::scal(double alpha)
{
  ensure_uniqueness();
  for (double& entry : backend_->data)
    entry *= alpha;
}

void DenseMatrix::axpy(double alpha, const DenseMatrix& other)
{
  if (other.rows() != rows() || other.cols() != cols())
    throw UsageError("axpy shape mismatch: " + std::to_string(rows()) + "x"
                     + std::to_string(cols()) + " vs. " + std::to_string(other.rows()) + "x"
                     + std::to_string(other.cols()));
  ensure_uniqueness();
  const auto& rhs = other.backend_->data;
  auto& lhs = backend_->data;
  for (std::size_t k = 0; k < lhs.size(); ++k)
    lhs[k] += alpha * rhs[k];
}

void DenseMatrix::mv(const DenseVector& x, DenseVector& y) const
{
  if (x.size() != cols())
    throw UsageError("mv size mismatch: matrix has " + std::to_string(cols())
                     + " columns, vector " + std::to_string(x.size()) + " entries");
  DenseVector result(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cols(); ++j)
      sum += backend_->data[i * cols() + j] * x.get_entry(j);
    result.set_entry(i, sum);
  }
  y = result;
}

DenseVector DenseMatrix::mv(const DenseVector& x) const
{
  DenseVector y(rows(), 0.0);
  mv(x, y);
  return y;
}

void DenseMatrix::clear_row(std::size_t i)
{
  check_index(i, 0);
  ensure_uniqueness();
  for (std::size_t j = 0; j < cols(); ++j)
    backend_->data[i * cols() + j] = 0.0;
}

void DenseMatrix::clear_col(std::size_t j)
{
  check_index(0, j);
  ensure_uniqueness();
  for (std::size_t i = 0; i < rows(); ++i)
    backend_->data[i * cols() + j] = 0.0;
}

void DenseMatrix::unit_row(std::size_t i)
{
  check_index(i, 0);
  if (i >= cols())
    throw UsageError("unit_row needs the diagonal entry, but row " + std::to_string(i)
                     + " has none in a matrix with " + std::to_string(cols()) + " columns");
  clear_row(i);
  set_entry(i, i, 1.0);
}

void DenseMatrix::unit_col(std::size_t j)
{
  check_index(0, j);
  if (j >= rows())
    throw UsageError("unit_col needs the diagonal entry, but column " + std::to_string(j)
                     + " has none in a matrix with " + std::to_string(rows()) + " rows");
  clear_col(j);
  set_entry(j, j, 1.0);
}

SparsityPattern DenseMatrix::pattern() const
{
  return SparsityPattern::dense(rows(), cols());
}

DenseMatrix DenseMatrix::pruned(double eps) const
{
  DenseMatrix result(rows(), cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      const double entry = get_entry(i, j);
      if (std::abs(entry) > eps)
        result.set_entry(i, j, entry);
    }
  return result;
}

void DenseMatrix::ensure_uniqueness()
{
  if (backend_.use_count() > 1) {
    backend_ = std::make_shared<Backend>(*backend_);
    internal::record_deep_copy();
  }
}

void DenseMatrix::check_index(std::size_t i, std::size_t j) const
{
  if (i >= rows() || j >= cols())
    throw UsageError("matrix position (" + std::to_string(i) + ", " + std::to_string(j)
                     + ") out of range for a " + std::to_string(rows()) + "x"
                     + std::to_string(cols()) + " matrix");
}


CsrMatrix::CsrMatrix(const SparsityPattern& pattern)
{
  auto backend = std::make_shared<Backend>();
  backend->pattern = std::make_shared<const SparsityPattern>(pattern);
  backend->row_offsets.reserve(pattern.rows() + 1);
  backend->row_offsets.push_back(0);
  for (std::size_t i = 0; i < pattern.rows(); ++i) {
    const auto& columns = pattern.inner(i);
    backend->columns.insert(backend->columns.end(), columns.begin(), columns.end());
    backend->row_offsets.push_back(backend->columns.size());
  }
  backend->values.assign(backend->columns.size(), 0.0);
  backend_ = std::move(backend);
}

double CsrMatrix::get_entry(std::size_t i, std::size_t j) const
{
  if (i >= rows() || j >= cols())
    throw UsageError("matrix position (" + std::to_string(i) + ", " + std::to_string(j)
                     + ") out of range for a " + std::to_string(rows()) + "x"
                     + std::to_string(cols()) + " matrix");
  const std::size_t pos = position(i, j);
  return pos == npos ? 0.0 : backend_->values[pos];
}

void CsrMatrix::set_entry(std::size_t i, std::size_t j, double value)
{
  const std::size_t pos = position(i, j);
  if (pos == npos)
    throw UsageError("position (" + std::to_string(i) + ", " + std::to_string(j)
                     + ") is not in the sparsity pattern");
  ensure_uniqueness();
  backend_->values[pos] = value;
}

void CsrMatrix::add_to_entry(std::size_t i, std::size_t j, double value)
{
  const std::size_t pos = position(i, j);
  if (pos == npos)
    throw UsageError("position (" + std::to_string(i) + ", " + std::to_string(j)
                     + ") is not in the sparsity pattern");
  ensure_uniqueness();
  backend_->values[pos] += value;
}

void CsrMatrix::scal(double alpha)
{
  ensure_uniqueness();
  for (double& value : backend_->values)
    value *= alpha;
}

void CsrMatrix::axpy(double alpha, const CsrMatrix& other)
{
  if (!(pattern() == other.pattern()))
    throw UsageError("axpy needs matching sparsity patterns");
  ensure_uniqueness();
  const auto& rhs = other.backend_->values;
  auto& lhs = backend_->values;
  for (std::size_t k = 0; k < lhs.size(); ++k)
    lhs[k] += alpha * rhs[k];
}

void CsrMatrix::mv(const DenseVector& x, DenseVector& y) const
{
  if (x.size() != cols())
    throw UsageError("mv size mismatch: matrix has " + std::to_string(cols())
                     + " columns, vector " + std::to_string(x.size()) + " entries");
  DenseVector result(rows(), 0.0);
  const auto& backend = *backend_;
  for (std::size_t i = 0; i < rows(); ++i) {
    double sum = 0.0;
    for (std::size_t k = backend.row_offsets[i]; k < backend.row_offsets[i + 1]; ++k)
      sum += backend.values[k] * x.get_entry(backend.columns[k]);
    result.set_entry(i, sum);
  }
  y = result;
}

DenseVector CsrMatrix::mv(const DenseVector& x) const
{
  DenseVector y(rows(), 0.0);
  mv(x, y);
  return y;
}

void CsrMatrix::clear_row(std::size_t i)
{
  if (i >= rows())
    throw UsageError("row " + std::to_string(i) + " out of range");
  ensure_uniqueness();
  for (std::size_t k = backend_->row_offsets[i]; k < backend_->row_offsets[i + 1]; ++k)
    backend_->values[k] = 0.0;
}

void CsrMatrix::clear_col(std::size_t j)
{
  if (j >= cols())
    throw UsageError("column " + std::to_string(j) + " out of range");
  ensure_uniqueness();
  for (std::size_t i = 0; i < rows(); ++i) {
    const std::size_t pos = position(i, j);
    if (pos != npos)
      backend_->values[pos] = 0.0;
  }
}

void CsrMatrix::unit_row(std::size_t i)
{
  if (position(i, i) == npos)
    throw UsageError("unit_row needs the diagonal entry (" + std::to_string(i) + ", "
                     + std::to_string(i) + ") in the sparsity pattern");
  clear_row(i);
  set_entry(i, i, 1.0);
}

void CsrMatrix::unit_col(std::size_t j)
{
  if (position(j, j) == npos)
    throw UsageError("unit_col needs the diagonal entry (" + std::to_string(j) + ", "
                     + std::to_string(j) + ") in the sparsity pattern");
  clear_col(j);
  set_entry(j, j, 1.0);
}

CsrMatrix CsrMatrix::pruned(double eps) const
{
  SparsityPattern pattern(rows(), cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = backend_->row_offsets[i]; k < backend_->row_offsets[i + 1]; ++k)
      if (std::abs(backend_->values[k]) > eps)
        pattern.insert(i, backend_->columns[k]);
  CsrMatrix result(pattern);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = backend_->row_offsets[i]; k < backend_->row_offsets[i + 1]; ++k)
      if (std::abs(backend_->values[k]) > eps)
        result.set_entry(i, backend_->columns[k], backend_->values[k]);
  return result;
}

void CsrMatrix::ensure_uniqueness()
{
  if (backend_.use_count() > 1) {
    backend_ = std::make_shared<Backend>(*backend_);
    internal::record_deep_copy();
  }
}

std::size_t CsrMatrix::position(std::size_t i, std::size_t j) const
{
  if (i >= rows() || j >= cols())
    return npos;
  const auto& backend = *backend_;
  std::size_t low = backend.row_offsets[i];
  std::size_t high = backend.row_offsets[i + 1];
  while (low < high) {
    const std::size_t mid = low + (high - low) / 2;
    if (backend.columns[mid] < j)
      low = mid + 1;
    else
      high = mid;
  }
  if (low < backend.row_offsets[i + 1] && backend.columns[low] == j)
    return low;
  return npos;
}


} // namespace xt::la
