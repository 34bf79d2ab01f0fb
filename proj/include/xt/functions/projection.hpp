#pragma once

#include <xt/common/exceptions.hpp>
#include <xt/functions/dg_space.hpp>
#include <xt/functions/interfaces.hpp>
#include <xt/la/containers.hpp>

#include <functional>
#include <string>

namespace xt::functions {


// A per-cell system of the L2 projection could not be solved.
class ProjectionError : public Exception
{
  using Exception::Exception;
};


// L2-projects a scalar function onto the space by assembling and solving
// the local mass system on every cell: (M_t)_ij = int_t b_i b_j and
// (r_t)_i = int_t f b_i by quadrature of degree 2k resp. 2k + order(f),
// each scaled by the integration element.  An empty solver_type picks the
// dense solver default.  The hook (test instrumentation) may modify each
// local matrix before its solve.  The per-cell work is timed under the
// sections "project.assemble" and "project.solve".
la::DenseVector
l2_projection(const LocalizableFunction& f,
              const DgSpace& space,
              const std::string& solver_type = "",
              const std::function<void(la::DenseMatrix&)>& local_matrix_hook = nullptr);


// sqrt of int_view f^2 by cell-wise quadrature via the walker; degree < 0
// picks 2 * order(f).  Only scalar functions.
double l2_norm(const LocalizableFunction& f,
               const grid::GridView& view,
               int quadrature_degree = -1,
               bool parallel = false,
               int num_threads = 0);


} // namespace xt::functions
