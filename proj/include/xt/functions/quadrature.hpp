#pragma once

#include <xt/grid/grid.hpp>

#include <vector>

namespace xt::functions {


// Tensor Gauss-Legendre rule on the reference cell [0,1]^dim.  A rule for
// polynomial degree p uses n = ceil((p+1)/2) points per direction and is
// exact for tensor polynomials of per-direction degree <= 2n-1.
struct Quadrature
{
  int dim = 1;
  int points_per_direction = 1;
  std::vector<grid::Point> points; // direction-0-fastest, unused components 0
  std::vector<double> weights;     // sum to 1

  std::size_t size() const { return points.size(); }
};

Quadrature quadrature_rule(int dim, int degree);

// The one-dimensional nodes/weights on [0,1] that the tensor rule is built
// from; exposed for tests.
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);


} // namespace xt::functions
