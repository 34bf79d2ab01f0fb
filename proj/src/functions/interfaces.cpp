#include <xt/functions/interfaces.hpp>

#include <xt/common/exceptions.hpp>

namespace xt::functions {

namespace {


class GlobalLocalFunction : public LocalFunction
{
public:
  GlobalLocalFunction(grid::CellGeometry geometry, const GlobalFunctionBase& owner)
    : LocalFunction(std::move(geometry))
    , owner_(owner)
  {}

  int order() const override { return owner_.order(); }
  int dim_range() const override { return owner_.dim_range(); }
  int dim_range_cols() const override { return owner_.dim_range_cols(); }

  std::vector<RangeValue> evaluate(const grid::Point& local) const override
  {
    return {owner_.evaluate_global(geometry().to_global(local))};
  }

  std::vector<Jacobian> jacobian(const grid::Point& local) const override
  {
    return {owner_.jacobian_global(geometry().to_global(local))};
  }

private:
  const GlobalFunctionBase& owner_;
};


} // namespace


std::vector<Jacobian> LocalFunctionSet::jacobian(const grid::Point& /*local*/) const
{
  throw CapabilityError("this local function set does not provide jacobians");
}

RangeValue LocalFunction::evaluate_one(const grid::Point& local) const
{
  return evaluate(local).front();
}

Jacobian LocalFunction::jacobian_one(const grid::Point& local) const
{
  return jacobian(local).front();
}

std::unique_ptr<LocalFunction> GlobalFunctionBase::local_function(const grid::GridView& view,
                                                                 const grid::Entity& cell) const
{
  return std::make_unique<GlobalLocalFunction>(view.geometry(cell), *this);
}

Jacobian GlobalFunctionBase::jacobian_global(const grid::Point& /*x*/) const
{
  throw CapabilityError("function '" + name() + "' does not provide a jacobian");
}


} // namespace xt::functions
