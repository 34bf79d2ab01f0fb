#include <xt/functions/dg_space.hpp>

#include <xt/common/exceptions.hpp>

#include <cmath>
#include <utility>

namespace xt::functions {

namespace {


double int_pow(double base, int exponent)
{
  double result = 1.0;
  for (int i = 0; i < exponent; ++i)
    result *= base;
  return result;
}


// The monomial basis bound to one cell.  Localized gradients are the
// reference-coordinate derivatives scaled by the inverse reference map
// jacobian diag(1/h).
class DgBasis : public LocalFunctionSet
{
public:
  DgBasis(grid::CellGeometry geometry, const DgSpace& space)
    : LocalFunctionSet(std::move(geometry))
    , space_(space)
  {}

  int size() const override { return space_.local_size(); }
  int order() const override { return space_.order(); }
  int dim_range() const override { return 1; }
  int dim_range_cols() const override { return 1; }

  std::vector<RangeValue> evaluate(const grid::Point& local) const override
  {
    std::vector<RangeValue> result;
    result.reserve(static_cast<std::size_t>(size()));
    for (double value : space_.basis_values(local))
      result.push_back(RangeValue::scalar(value));
    return result;
  }

  std::vector<Jacobian> jacobian(const grid::Point& local) const override
  {
    const int dim = space_.dim();
    std::vector<Jacobian> result;
    result.reserve(static_cast<std::size_t>(size()));
    for (int j = 0; j < size(); ++j) {
      Jacobian jac = Jacobian::zeros(1, dim);
      for (int direction = 0; direction < dim; ++direction)
        jac.at(0, direction) = space_.basis_reference_derivative(j, direction, local)
                               / geometry().widths[direction];
      result.push_back(std::move(jac));
    }
    return result;
  }

private:
  const DgSpace& space_;
};


class DiscreteLocalFunction : public LocalFunction
{
public:
  DiscreteLocalFunction(grid::CellGeometry geometry,
                        const DgSpace& space,
                        const la::DenseVector& dofs,
                        std::size_t cell_index)
    : LocalFunction(std::move(geometry))
    , space_(space)
    , dofs_(dofs)
    , cell_index_(cell_index)
  {}

  int order() const override { return space_.order(); }
  int dim_range() const override { return 1; }
  int dim_range_cols() const override { return 1; }

  std::vector<RangeValue> evaluate(const grid::Point& local) const override
  {
    const auto values = space_.basis_values(local);
    double result = 0.0;
    for (int j = 0; j < space_.local_size(); ++j)
      result += dofs_.get_entry(space_.global_dof(cell_index_, j)) * values[static_cast<std::size_t>(j)];
    return {RangeValue::scalar(result)};
  }

  std::vector<Jacobian> jacobian(const grid::Point& local) const override
  {
    const int dim = space_.dim();
    Jacobian result = Jacobian::zeros(1, dim);
    for (int j = 0; j < space_.local_size(); ++j) {
      const double dof = dofs_.get_entry(space_.global_dof(cell_index_, j));
      for (int direction = 0; direction < dim; ++direction)
        result.at(0, direction) += dof
                                   * space_.basis_reference_derivative(j, direction, local)
                                   / geometry().widths[direction];
    }
    return {std::move(result)};
  }

private:
  const DgSpace& space_;
  const la::DenseVector& dofs_;
  std::size_t cell_index_;
};


} // namespace


DgSpace::DgSpace(grid::GridView view, int order)
  : view_(std::move(view))
  , order_(order)
{
  if (order_ < 0 || order_ > 3)
    throw UsageError("dg spaces support orders 0 to 3, not " + std::to_string(order_));
  local_size_ = 1;
  for (int i = 0; i < view_.dim(); ++i)
    local_size_ *= order_ + 1;
}

std::size_t DgSpace::global_dof(std::size_t cell_index, int local_index) const
{
  if (cell_index >= view_.num_cells() || local_index < 0 || local_index >= local_size_)
    throw UsageError("dof (" + std::to_string(cell_index) + ", " + std::to_string(local_index)
                     + ") is out of range");
  return cell_index * static_cast<std::size_t>(local_size_)
         + static_cast<std::size_t>(local_index);
}

std::array<int, 3> DgSpace::exponents(int local_index) const
{
  std::array<int, 3> result{0, 0, 0};
  int rest = local_index;
  for (int i = 0; i < view_.dim(); ++i) {
    result[static_cast<std::size_t>(i)] = rest % (order_ + 1);
    rest /= order_ + 1;
  }
  return result;
}

std::vector<double> DgSpace::basis_values(const grid::Point& local) const
{
  std::vector<double> result(static_cast<std::size_t>(local_size_), 1.0);
  for (int j = 0; j < local_size_; ++j) {
    const auto p = exponents(j);
    double value = 1.0;
    for (int i = 0; i < view_.dim(); ++i)
      value *= int_pow(local[i], p[static_cast<std::size_t>(i)]);
    result[static_cast<std::size_t>(j)] = value;
  }
  return result;
}

double DgSpace::basis_reference_derivative(int local_index, int direction,
                                           const grid::Point& local) const
{
  const auto p = exponents(local_index);
  const int exponent = p[static_cast<std::size_t>(direction)];
  if (exponent == 0)
    return 0.0;
  double value = exponent * int_pow(local[direction], exponent - 1);
  for (int i = 0; i < view_.dim(); ++i)
    if (i != direction)
      value *= int_pow(local[i], p[static_cast<std::size_t>(i)]);
  return value;
}

std::unique_ptr<LocalFunctionSet> DgSpace::basis(const grid::Entity& cell) const
{
  return std::make_unique<DgBasis>(view_.geometry(cell), *this);
}


DiscreteFunction::DiscreteFunction(DgSpace space, la::DenseVector dofs, std::string name)
  : space_(std::move(space))
  , dofs_(std::move(dofs))
  , name_(std::move(name))
{
  if (dofs_.size() != space_.size())
    throw UsageError("the space has " + std::to_string(space_.size()) + " dofs, the vector "
                     + std::to_string(dofs_.size()));
}

std::unique_ptr<LocalFunction> DiscreteFunction::local_function(const grid::GridView& view,
                                                                const grid::Entity& cell) const
{
  if (view.dim() != space_.view().dim() || view.num_cells() != space_.view().num_cells())
    throw UsageError("the view passed to local_function does not match the discrete "
                     "function's space");
  return std::make_unique<DiscreteLocalFunction>(space_.view().geometry(cell), space_, dofs_,
                                                 space_.view().index(cell));
}


} // namespace xt::functions
