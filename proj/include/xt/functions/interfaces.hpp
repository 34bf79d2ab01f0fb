#pragma once

#include <xt/functions/values.hpp>
#include <xt/grid/grid.hpp>

#include <memory>
#include <string>
#include <vector>

namespace xt::functions {


// A set of functions bound to one grid cell, evaluated in the local
// (reference cell) coordinates of that cell.  Jacobians are "localized
// gradients": derivatives with respect to the *global* coordinates,
// evaluated at the mapped point.
class LocalFunctionSet
{
public:
  explicit LocalFunctionSet(grid::CellGeometry geometry)
    : geometry_(std::move(geometry))
  {}

  virtual ~LocalFunctionSet() = default;

  const grid::CellGeometry& geometry() const { return geometry_; }

  virtual int size() const = 0;
  virtual int order() const = 0;
  virtual int dim_range() const = 0;
  virtual int dim_range_cols() const = 0;

  // One value per member of the set, in member order.
  virtual std::vector<RangeValue> evaluate(const grid::Point& local) const = 0;

  // One jacobian per member of the set.  Throws CapabilityError unless the
  // implementation provides derivatives.
  virtual std::vector<Jacobian> jacobian(const grid::Point& local) const;

private:
  grid::CellGeometry geometry_;
};


// A local function set of size one, with scalar-friendly accessors.
class LocalFunction : public LocalFunctionSet
{
public:
  using LocalFunctionSet::LocalFunctionSet;

  int size() const final { return 1; }

  RangeValue evaluate_one(const grid::Point& local) const;
  Jacobian jacobian_one(const grid::Point& local) const;
};


// A function on the physical domain that can be localized to any cell of a
// compatible grid view.  Local functions reference their owner; keep the
// owner alive while they are in use.
class LocalizableFunction
{
public:
  virtual ~LocalizableFunction() = default;

  virtual int dim_domain() const = 0;
  virtual int dim_range() const = 0;
  virtual int dim_range_cols() const = 0;
  virtual int order() const = 0;
  virtual std::string name() const = 0;

  virtual std::unique_ptr<LocalFunction> local_function(const grid::GridView& view,
                                                        const grid::Entity& cell) const = 0;
};

using FunctionPtr = std::shared_ptr<const LocalizableFunction>;


// Convenience base for functions defined by a closed-form rule on global
// coordinates; localization just composes that rule with the reference map.
class GlobalFunctionBase : public LocalizableFunction
{
public:
  std::unique_ptr<LocalFunction> local_function(const grid::GridView& view,
                                                const grid::Entity& cell) const final;

  virtual RangeValue evaluate_global(const grid::Point& x) const = 0;

  // Gradient per range component with respect to global coordinates.
  // Throws CapabilityError unless the implementation provides derivatives.
  virtual Jacobian jacobian_global(const grid::Point& x) const;
};


} // namespace xt::functions
