#include <xt/functions/quadrature.hpp>

#include <xt/common/exceptions.hpp>

#include <cmath>
#include <cstddef>

namespace xt::functions {

namespace {


// Legendre polynomial P_n and its derivative at t, by the three-term
// recurrence.
void legendre(int n, double t, double& value, double& derivative)
{
  double p_prev = 1.0;
  double p = t;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * t * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  value = n == 0 ? 1.0 : p;
  derivative = n == 0 ? 0.0 : n * (t * p - p_prev) / (t * t - 1.0);
}


} // namespace


void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
  if (n < 1)
    throw UsageError("a quadrature needs at least one point per direction");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-based initial guess.
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double value = 0.0;
    double derivative = 1.0;
    for (int iteration = 0; iteration < 100; ++iteration) {
      legendre(n, t, value, derivative);
      const double step = value / derivative;
      t -= step;
      if (std::abs(step) < 1e-15)
        break;
    }
    legendre(n, t, value, derivative);
    // Map [-1,1] -> [0,1]: node (t+1)/2, weight halved.  The Chebyshev
    // guesses sweep the roots in descending order, so store them reversed
    // to hand out ascending nodes.
    nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (t + 1.0);
    weights[static_cast<std::size_t>(n - 1 - i)] = 1.0 / ((1.0 - t * t) * derivative * derivative);
  }
}

Quadrature quadrature_rule(int dim, int degree)
{
  if (dim < 1 || dim > 3)
    throw UsageError("quadratures are available for dimensions 1 to 3, not "
                     + std::to_string(dim));
  if (degree < 0)
    throw UsageError("the quadrature degree must be non-negative");

  const int n = degree / 2 + 1;
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_legendre_unit(n, nodes, weights);

  Quadrature result;
  result.dim = dim;
  result.points_per_direction = n;
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i)
    total *= static_cast<std::size_t>(n);
  result.points.reserve(total);
  result.weights.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    grid::Point point{0.0, 0.0, 0.0};
    double weight = 1.0;
    std::size_t rest = flat;
    for (int i = 0; i < dim; ++i) {
      const std::size_t k = rest % static_cast<std::size_t>(n);
      rest /= static_cast<std::size_t>(n);
      point[i] = nodes[k];
      weight *= weights[k];
    }
    result.points.push_back(point);
    result.weights.push_back(weight);
  }
  return result;
}


} // namespace xt::functions
