#include <xt/functions/functions.hpp>

#include <xt/common/exceptions.hpp>
#include <xt/common/string.hpp>

#include <cmath>
#include <cstddef>
#include <sstream>

namespace xt::functions {

namespace {


void check_dim(int dim)
{
  if (dim < 1 || dim > 3)
    throw UsageError("functions are available for dimensions 1 to 3, not " + std::to_string(dim));
}

// Splits a "[a b c]" literal (or a bare single token) into component texts.
std::vector<std::string> split_components(const std::string& text)
{
  const std::string trimmed = common::trim(text);
  if (trimmed.empty())
    throw ParseError("cannot read components from an empty literal");
  if (trimmed.front() != '[')
    return {trimmed};
  if (trimmed.back() != ']')
    throw ParseError("cannot read components from '" + text + "': missing closing ']'");
  return common::split_top_level(std::string_view(trimmed).substr(1, trimmed.size() - 2));
}


} // namespace


RangeValue parse_range_value(const std::string& text)
{
  if (text.find(';') != std::string::npos) {
    const auto rows = common::parse_matrix(text);
    std::vector<double> data;
    for (const auto& row : rows)
      data.insert(data.end(), row.begin(), row.end());
    return RangeValue::matrix(rows.size(), rows.empty() ? 0 : rows.front().size(),
                              std::move(data));
  }
  const std::string trimmed = common::trim(text);
  if (!trimmed.empty() && trimmed.front() == '[')
    return RangeValue::vector(common::parse_vector(trimmed));
  return RangeValue::scalar(common::parse_scalar(trimmed));
}


// ------------------------------------------------------------------------
// ConstantFunction

ConstantFunction::ConstantFunction(int dim, RangeValue value)
  : dim_(dim)
  , value_(std::move(value))
{
  check_dim(dim);
  if (value_.components() == 0)
    throw UsageError("a constant function needs a non-empty value");
}

RangeValue ConstantFunction::evaluate_global(const grid::Point& /*x*/) const
{
  return value_;
}

Jacobian ConstantFunction::jacobian_global(const grid::Point& /*x*/) const
{
  if (value_.cols != 1)
    throw CapabilityError("jacobians of matrix valued functions are not provided");
  return Jacobian::zeros(value_.rows, dim_);
}


// ------------------------------------------------------------------------
// CheckerboardFunction

CheckerboardFunction::CheckerboardFunction(int dim,
                                           std::vector<double> lower_left,
                                           std::vector<double> upper_right,
                                           std::vector<long long> num_elements,
                                           std::vector<double> values)
  : dim_(dim)
  , lower_left_(std::move(lower_left))
  , upper_right_(std::move(upper_right))
  , num_elements_(std::move(num_elements))
  , values_(std::move(values))
{
  check_dim(dim);
  const auto d = static_cast<std::size_t>(dim);
  if (lower_left_.size() != d || upper_right_.size() != d || num_elements_.size() != d)
    throw ConfigError("checkerboard: lower_left, upper_right and num_elements must each have "
                      + std::to_string(dim) + " entries");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (!(lower_left_[i] < upper_right_[i]))
      throw ConfigError("checkerboard: lower_left must be below upper_right in every direction");
    if (num_elements_[i] < 1)
      throw ConfigError("checkerboard: num_elements must be positive in every direction");
    expected *= static_cast<std::size_t>(num_elements_[i]);
  }
  if (values_.size() != expected)
    throw ConfigError("checkerboard: expected " + std::to_string(expected) + " values, got "
                      + std::to_string(values_.size()));
}

std::size_t CheckerboardFunction::subdomain(const grid::Point& x) const
{
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (int i = 0; i < dim_; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const auto n = num_elements_[u];
    const double width = (upper_right_[u] - lower_left_[u]) / static_cast<double>(n);
    auto index = static_cast<long long>(std::floor((x[i] - lower_left_[u]) / width));
    index = std::max<long long>(0, std::min(n - 1, index));
    flat += stride * static_cast<std::size_t>(index);
    stride *= static_cast<std::size_t>(n);
  }
  return flat;
}

RangeValue CheckerboardFunction::evaluate_global(const grid::Point& x) const
{
  return RangeValue::scalar(values_[subdomain(x)]);
}

Jacobian CheckerboardFunction::jacobian_global(const grid::Point& /*x*/) const
{
  return Jacobian::zeros(1, dim_);
}


// ------------------------------------------------------------------------
// ExpressionFunction

ExpressionFunction::ExpressionFunction(
    int dim,
    int order,
    std::vector<Expression> expressions,
    std::optional<std::vector<std::vector<Expression>>> gradients)
  : dim_(dim)
  , order_(order)
  , expressions_(std::move(expressions))
  , gradients_(std::move(gradients))
{
  check_dim(dim);
  if (order_ < 0)
    throw ConfigError("expression: the order must be non-negative");
  if (expressions_.empty())
    throw ConfigError("expression: at least one component is required");
  auto check_indices = [&](const Expression& expression) {
    const int max_index = expression.max_variable_index();
    if (max_index >= dim_)
      throw ConfigError("expression '" + expression.text() + "' uses component "
                        + std::to_string(max_index) + " but the domain has "
                        + std::to_string(dim_) + " dimensions");
  };
  for (const auto& expression : expressions_)
    check_indices(expression);
  if (gradients_) {
    if (gradients_->size() != expressions_.size())
      throw ConfigError("expression: expected one gradient per component ("
                        + std::to_string(expressions_.size()) + "), got "
                        + std::to_string(gradients_->size()));
    for (const auto& gradient : *gradients_) {
      if (gradient.size() != static_cast<std::size_t>(dim_))
        throw ConfigError("expression: each gradient needs " + std::to_string(dim_)
                          + " entries, got " + std::to_string(gradient.size()));
      for (const auto& entry : gradient)
        check_indices(entry);
    }
  }
}

RangeValue ExpressionFunction::evaluate_global(const grid::Point& x) const
{
  std::vector<double> values;
  values.reserve(expressions_.size());
  for (const auto& expression : expressions_)
    values.push_back(expression.evaluate(x, dim_));
  return RangeValue::vector(std::move(values));
}

Jacobian ExpressionFunction::jacobian_global(const grid::Point& x) const
{
  if (!gradients_)
    throw CapabilityError("expression function was built without gradients");
  Jacobian result = Jacobian::zeros(expressions_.size(), dim_);
  for (std::size_t component = 0; component < gradients_->size(); ++component)
    for (int direction = 0; direction < dim_; ++direction)
      result.at(component, direction) =
          (*gradients_)[component][static_cast<std::size_t>(direction)].evaluate(x, dim_);
  return result;
}


// ------------------------------------------------------------------------
// LambdaFunction

LambdaFunction::LambdaFunction(int dim, Evaluate evaluate, int order, Gradient gradient)
  : dim_(dim)
  , evaluate_(std::move(evaluate))
  , order_(order)
  , gradient_(std::move(gradient))
{
  check_dim(dim);
  if (!evaluate_)
    throw UsageError("a lambda function needs a callable");
  if (order_ < 0)
    throw UsageError("the order of a lambda function must be non-negative");
}

RangeValue LambdaFunction::evaluate_global(const grid::Point& x) const
{
  return RangeValue::scalar(evaluate_(x));
}

Jacobian LambdaFunction::jacobian_global(const grid::Point& x) const
{
  if (!gradient_)
    throw CapabilityError("lambda function was built without a gradient");
  const auto values = gradient_(x);
  Jacobian result = Jacobian::zeros(1, dim_);
  for (int direction = 0; direction < dim_; ++direction)
    result.at(0, direction) = values[static_cast<std::size_t>(direction)];
  return result;
}


// ------------------------------------------------------------------------
// FunctionsFactory

namespace {


FunctionPtr create_constant(const common::Configuration& cfg, int dim)
{
  return std::make_shared<ConstantFunction>(dim, parse_range_value(cfg.get<std::string>("value")));
}

FunctionPtr create_checkerboard(const common::Configuration& cfg, int dim)
{
  const auto d = static_cast<std::size_t>(dim);
  return std::make_shared<CheckerboardFunction>(dim,
                                                cfg.get_vector("lower_left", d),
                                                cfg.get_vector("upper_right", d),
                                                cfg.get_integer_vector("num_elements", d),
                                                cfg.get_vector("values"));
}

FunctionPtr create_expression(const common::Configuration& cfg, int dim)
{
  const std::string variable = cfg.get<std::string>("variable", "x");
  const int order = cfg.get<int>("order");

  std::vector<Expression> expressions;
  for (const auto& text : split_components(cfg.get<std::string>("expression")))
    expressions.push_back(Expression::parse(text, variable));

  std::optional<std::vector<std::vector<Expression>>> gradients;
  auto gradient_key = [&](std::size_t component) {
    // a scalar function may spell its single gradient either way
    const std::string indexed = "gradient." + std::to_string(component);
    if (cfg.has_key(indexed))
      return indexed;
    if (expressions.size() == 1 && component == 0 && cfg.has_key("gradient"))
      return std::string("gradient");
    return std::string();
  };
  if (!gradient_key(0).empty()) {
    gradients.emplace();
    for (std::size_t component = 0; component < expressions.size(); ++component) {
      const std::string key = gradient_key(component);
      if (key.empty())
        throw ConfigError("expression: gradients must be given for all components or none; "
                          "'gradient." + std::to_string(component) + "' is missing");
      const auto texts = split_components(cfg.get<std::string>(key));
      if (texts.size() != static_cast<std::size_t>(dim))
        throw ConfigError("expression: '" + key + "' needs " + std::to_string(dim)
                          + " entries, got " + std::to_string(texts.size()));
      std::vector<Expression> gradient;
      for (const auto& text : texts)
        gradient.push_back(Expression::parse(text, variable));
      gradients->push_back(std::move(gradient));
    }
  }
  return std::make_shared<ExpressionFunction>(dim, order, std::move(expressions),
                                              std::move(gradients));
}


} // namespace


std::vector<std::string> FunctionsFactory::available()
{
  return {"xt.functions.constant", "xt.functions.checkerboard", "xt.functions.expression"};
}

FunctionPtr FunctionsFactory::create(const std::string& type_id,
                                     const common::Configuration& cfg,
                                     int dim)
{
  check_dim(dim);
  if (type_id == "xt.functions.constant")
    return create_constant(cfg, dim);
  if (type_id == "xt.functions.checkerboard")
    return create_checkerboard(cfg, dim);
  if (type_id == "xt.functions.expression")
    return create_expression(cfg, dim);

  std::ostringstream message;
  message << "no function of type '" << type_id << "' available; available types:";
  for (const auto& id : available())
    message << " " << id;
  throw FactoryError(message.str());
}


} // namespace xt::functions
