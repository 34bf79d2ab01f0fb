#pragma once

#include <xt/common/exceptions.hpp>

#include <cstddef>
#include <vector>

namespace xt::functions {


// Value of a function at one point: an r x rC array, row major.  Scalars
// are 1x1, vectors r x 1.
struct RangeValue
{
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::vector<double> data{0.0};

  static RangeValue scalar(double value) { return {1, 1, {value}}; }

  static RangeValue vector(std::vector<double> values)
  {
    RangeValue result{values.size(), 1, std::move(values)};
    return result;
  }

  static RangeValue matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
  {
    if (values.size() != rows * cols)
      throw UsageError("range value with " + std::to_string(values.size())
                       + " entries cannot have shape " + std::to_string(rows) + "x"
                       + std::to_string(cols));
    return {rows, cols, std::move(values)};
  }

  static RangeValue zeros(std::size_t rows, std::size_t cols)
  {
    return {rows, cols, std::vector<double>(rows * cols, 0.0)};
  }

  std::size_t components() const { return rows * cols; }
  bool is_scalar() const { return rows == 1 && cols == 1; }

  double as_scalar() const
  {
    if (!is_scalar())
      throw UsageError("expected a scalar range value, got " + std::to_string(rows) + "x"
                       + std::to_string(cols));
    return data[0];
  }

  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double flat(std::size_t k) const { return data[k]; }
  double& flat(std::size_t k) { return data[k]; }

  bool same_shape(const RangeValue& other) const
  {
    return rows == other.rows && cols == other.cols;
  }
};

// Gradients of all range components with respect to the global spatial
// coordinates: one row of d entries per flattened range component.
struct Jacobian
{
  std::size_t components = 1;
  int dim = 1;
  std::vector<double> data{0.0};

  static Jacobian zeros(std::size_t components, int dim)
  {
    return {components, dim, std::vector<double>(components * static_cast<std::size_t>(dim), 0.0)};
  }

  double at(std::size_t component, int direction) const
  {
    return data[component * static_cast<std::size_t>(dim) + static_cast<std::size_t>(direction)];
  }

  double& at(std::size_t component, int direction)
  {
    return data[component * static_cast<std::size_t>(dim) + static_cast<std::size_t>(direction)];
  }
};


} // namespace xt::functions
