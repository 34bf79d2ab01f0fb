#pragma once

#include <xt/common/configuration.hpp>
#include <xt/functions/expression.hpp>
#include <xt/functions/interfaces.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace xt::functions {


// Parses "3", "[1 2]" or "[1 0; 0 1]" into a scalar, vector or matrix value.
RangeValue parse_range_value(const std::string& text);


// f(x) = value for all x.
class ConstantFunction : public GlobalFunctionBase
{
public:
  ConstantFunction(int dim, RangeValue value);

  int dim_domain() const override { return dim_; }
  int dim_range() const override { return static_cast<int>(value_.rows); }
  int dim_range_cols() const override { return static_cast<int>(value_.cols); }
  int order() const override { return 0; }
  std::string name() const override { return "constant"; }

  RangeValue evaluate_global(const grid::Point& x) const override;
  Jacobian jacobian_global(const grid::Point& x) const override;

private:
  int dim_;
  RangeValue value_;
};


// Piecewise constant scalar function on an equidistant partition of the box
// [lower_left, upper_right]; subdomains are half-open boxes ordered
// direction-0-fastest, points outside the box are clamped to the nearest
// subdomain.
class CheckerboardFunction : public GlobalFunctionBase
{
public:
  CheckerboardFunction(int dim,
                       std::vector<double> lower_left,
                       std::vector<double> upper_right,
                       std::vector<long long> num_elements,
                       std::vector<double> values);

  int dim_domain() const override { return dim_; }
  int dim_range() const override { return 1; }
  int dim_range_cols() const override { return 1; }
  int order() const override { return 0; }
  std::string name() const override { return "checkerboard"; }

  RangeValue evaluate_global(const grid::Point& x) const override;
  Jacobian jacobian_global(const grid::Point& x) const override;

  // index of the subdomain containing (or clamped-nearest to) x
  std::size_t subdomain(const grid::Point& x) const;

private:
  int dim_;
  std::vector<double> lower_left_;
  std::vector<double> upper_right_;
  std::vector<long long> num_elements_;
  std::vector<double> values_;
};


// f given by one parsed expression per range component, with optional
// gradient expressions (one per component and direction).
class ExpressionFunction : public GlobalFunctionBase
{
public:
  ExpressionFunction(int dim,
                     int order,
                     std::vector<Expression> expressions,
                     std::optional<std::vector<std::vector<Expression>>> gradients = std::nullopt);

  int dim_domain() const override { return dim_; }
  int dim_range() const override { return static_cast<int>(expressions_.size()); }
  int dim_range_cols() const override { return 1; }
  int order() const override { return order_; }
  std::string name() const override { return "expression"; }

  RangeValue evaluate_global(const grid::Point& x) const override;
  Jacobian jacobian_global(const grid::Point& x) const override;

private:
  int dim_;
  int order_;
  std::vector<Expression> expressions_;
  std::optional<std::vector<std::vector<Expression>>> gradients_;
};


// Scalar function defined by C++ callables; the caller declares the
// approximation order.
class LambdaFunction : public GlobalFunctionBase
{
public:
  using Evaluate = std::function<double(const grid::Point&)>;
  using Gradient = std::function<std::array<double, 3>(const grid::Point&)>;

  LambdaFunction(int dim, Evaluate evaluate, int order, Gradient gradient = nullptr);

  int dim_domain() const override { return dim_; }
  int dim_range() const override { return 1; }
  int dim_range_cols() const override { return 1; }
  int order() const override { return order_; }
  std::string name() const override { return "lambda"; }

  RangeValue evaluate_global(const grid::Point& x) const override;
  Jacobian jacobian_global(const grid::Point& x) const override;

private:
  int dim_;
  Evaluate evaluate_;
  int order_;
  Gradient gradient_;
};


// Creates functions from a Configuration, keyed by type id.
class FunctionsFactory
{
public:
  static std::vector<std::string> available();
  static FunctionPtr create(const std::string& type_id,
                            const common::Configuration& cfg,
                            int dim);
};


} // namespace xt::functions
