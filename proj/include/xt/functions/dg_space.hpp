#pragma once

#include <xt/functions/interfaces.hpp>
#include <xt/grid/grid.hpp>
#include <xt/la/containers.hpp>

#include <array>
#include <memory>

namespace xt::functions {


// Discontinuous space of locally polynomial functions on the cells of a
// view: per cell the monomial basis {prod_i local[i]^p_i : 0 <= p_i <= k},
// (k+1)^dim functions ordered with the direction-0 exponent running
// fastest.  DoFs are laid out cell-index-major, basis-index-minor.  The
// order is limited to k <= 3 to keep the local mass matrices well
// conditioned.
class DgSpace
{
public:
  DgSpace(grid::GridView view, int order);

  const grid::GridView& view() const { return view_; }
  int order() const { return order_; }
  int dim() const { return view_.dim(); }

  int local_size() const { return local_size_; }
  std::size_t size() const { return view_.num_cells() * static_cast<std::size_t>(local_size_); }

  std::size_t global_dof(std::size_t cell_index, int local_index) const;

  // per-direction exponents of basis function j
  std::array<int, 3> exponents(int local_index) const;

  // values of all basis functions at a reference point
  std::vector<double> basis_values(const grid::Point& local) const;

  // reference-coordinate derivative of basis j in the given direction
  double basis_reference_derivative(int local_index, int direction,
                                    const grid::Point& local) const;

  // the basis bound to one cell, with localized (global-coordinate) gradients
  std::unique_ptr<LocalFunctionSet> basis(const grid::Entity& cell) const;

private:
  grid::GridView view_;
  int order_;
  int local_size_;
};


// An element of a DgSpace: f|_t = sum_i dofs[global_dof(t, i)] * basis_i.
class DiscreteFunction : public LocalizableFunction
{
public:
  DiscreteFunction(DgSpace space, la::DenseVector dofs, std::string name = "discrete");

  const DgSpace& space() const { return space_; }
  const la::DenseVector& dofs() const { return dofs_; }

  int dim_domain() const override { return space_.dim(); }
  int dim_range() const override { return 1; }
  int dim_range_cols() const override { return 1; }
  int order() const override { return space_.order(); }
  std::string name() const override { return name_; }

  std::unique_ptr<LocalFunction> local_function(const grid::GridView& view,
                                                const grid::Entity& cell) const override;

private:
  DgSpace space_;
  la::DenseVector dofs_;
  std::string name_;
};


} // namespace xt::functions
