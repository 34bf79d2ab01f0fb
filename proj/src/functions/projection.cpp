#include <xt/functions/projection.hpp>

#include <xt/common/timings.hpp>
#include <xt/functions/quadrature.hpp>
#include <xt/grid/walker.hpp>
#include <xt/la/solver.hpp>

#include <atomic>
#include <cmath>

namespace xt::functions {


la::DenseVector l2_projection(const LocalizableFunction& f,
                              const DgSpace& space,
                              const std::string& solver_type,
                              const std::function<void(la::DenseMatrix&)>& local_matrix_hook)
{
  if (f.dim_range() != 1 || f.dim_range_cols() != 1)
    throw UsageError("only scalar functions can be projected");
  if (f.dim_domain() != space.dim())
    throw UsageError("cannot project a function on a " + std::to_string(f.dim_domain())
                     + "d domain onto a " + std::to_string(space.dim()) + "d space");

  const auto& view = space.view();
  const int k = space.order();
  const int n = space.local_size();
  const Quadrature mass_quadrature = quadrature_rule(space.dim(), 2 * k);
  const Quadrature rhs_quadrature = quadrature_rule(space.dim(), 2 * k + f.order());
  const std::string type = solver_type.empty() ? la::Solver<la::DenseMatrix>::types().front()
                                               : solver_type;

  la::DenseVector dofs(space.size(), 0.0);
  const std::size_t num_cells = view.num_cells();
  for (std::size_t cell_index = 0; cell_index < num_cells; ++cell_index) {
    const grid::Entity cell = view.cell(cell_index);
    const grid::CellGeometry geometry = view.geometry(cell);
    const double integration_element = geometry.integration_element();

    la::DenseMatrix mass(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
    la::DenseVector rhs(static_cast<std::size_t>(n), 0.0);
    {
      common::ScopedTiming timing("project.assemble");
      for (std::size_t q = 0; q < mass_quadrature.size(); ++q) {
        const auto values = space.basis_values(mass_quadrature.points[q]);
        const double factor = integration_element * mass_quadrature.weights[q];
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            mass.add_to_entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                              factor * values[static_cast<std::size_t>(i)]
                                  * values[static_cast<std::size_t>(j)]);
      }
      const auto local_f = f.local_function(view, cell);
      for (std::size_t q = 0; q < rhs_quadrature.size(); ++q) {
        const auto values = space.basis_values(rhs_quadrature.points[q]);
        const double f_value = local_f->evaluate_one(rhs_quadrature.points[q]).as_scalar();
        const double factor = integration_element * rhs_quadrature.weights[q];
        for (int i = 0; i < n; ++i)
          rhs.add_to_entry(static_cast<std::size_t>(i),
                           factor * f_value * values[static_cast<std::size_t>(i)]);
      }
    }

    if (local_matrix_hook)
      local_matrix_hook(mass);

    la::DenseVector local_dofs(static_cast<std::size_t>(n), 0.0);
    try {
      common::ScopedTiming timing("project.solve");
      la::Solver<la::DenseMatrix> solver(mass);
      solver.apply(rhs, local_dofs, type);
    } catch (const la::SolverError& error) {
      throw ProjectionError("l2 projection failed because a local matrix could not be "
                            "inverted (cell " + std::to_string(cell_index) + "): "
                            + error.what());
    }

    for (int i = 0; i < n; ++i)
      dofs.set_entry(space.global_dof(cell_index, i), local_dofs.get_entry(static_cast<std::size_t>(i)));
  }
  return dofs;
}


namespace {


// Accumulates the squared norm; apply_local runs concurrently, so the sum
// is a compare-exchange loop on an atomic.
class SquaredNormFunctor : public grid::CellFunctor
{
public:
  SquaredNormFunctor(const LocalizableFunction& f, const grid::GridView& view,
                     const Quadrature& quadrature)
    : f_(f)
    , view_(view)
    , quadrature_(quadrature)
  {}

  void prepare() override { sum_.store(0.0); }

  void apply_local(const grid::Entity& cell) override
  {
    const auto local_f = f_.local_function(view_, cell);
    const double integration_element = local_f->geometry().integration_element();
    double cell_sum = 0.0;
    for (std::size_t q = 0; q < quadrature_.size(); ++q) {
      const double value = local_f->evaluate_one(quadrature_.points[q]).as_scalar();
      cell_sum += quadrature_.weights[q] * value * value;
    }
    cell_sum *= integration_element;
    double expected = sum_.load();
    while (!sum_.compare_exchange_weak(expected, expected + cell_sum)) {
    }
  }

  double sum() const { return sum_.load(); }

private:
  const LocalizableFunction& f_;
  const grid::GridView& view_;
  const Quadrature& quadrature_;
  std::atomic<double> sum_{0.0};
};


} // namespace


double l2_norm(const LocalizableFunction& f,
               const grid::GridView& view,
               int quadrature_degree,
               bool parallel,
               int num_threads)
{
  if (f.dim_range() != 1 || f.dim_range_cols() != 1)
    throw UsageError("l2_norm is only available for scalar functions");
  if (f.dim_domain() != view.dim())
    throw UsageError("the function and the view disagree about the domain dimension");

  const int degree = quadrature_degree < 0 ? 2 * f.order() : quadrature_degree;
  const Quadrature quadrature = quadrature_rule(view.dim(), degree);
  SquaredNormFunctor functor(f, view, quadrature);
  grid::Walker walker(view);
  walker.add(functor);
  walker.walk(parallel, num_threads < 0 ? 0u : static_cast<unsigned>(num_threads));
  return std::sqrt(functor.sum());
}


} // namespace xt::functions
