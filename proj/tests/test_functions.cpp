#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <xt/common/configuration.hpp>
#include <xt/common/exceptions.hpp>
#include <xt/functions/combined.hpp>
#include <xt/functions/dg_space.hpp>
#include <xt/functions/expression.hpp>
#include <xt/functions/functions.hpp>
#include <xt/functions/interfaces.hpp>
#include <xt/functions/projection.hpp>
#include <xt/functions/quadrature.hpp>
#include <xt/functions/visualization.hpp>
#include <xt/grid/grid.hpp>
#include <xt/la/solver.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

using namespace xt;
using namespace xt::functions;

namespace {

grid::GridView make_view(int dim, const std::vector<std::int64_t>& cells,
                         const std::vector<double>& lower = {},
                         const std::vector<double>& upper = {})
{
  grid::GridSpec spec;
  spec.dim = dim;
  for (int i = 0; i < dim; ++i) {
    spec.num_elements[static_cast<std::size_t>(i)] = cells[static_cast<std::size_t>(i)];
    spec.lower_left[static_cast<std::size_t>(i)] =
        lower.empty() ? 0.0 : lower[static_cast<std::size_t>(i)];
    spec.upper_right[static_cast<std::size_t>(i)] =
        upper.empty() ? 1.0 : upper[static_cast<std::size_t>(i)];
  }
  return grid::GridProvider(spec).level_view(0);
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string temp_path(const std::string& tail)
{
  return std::string("/tmp/xt_functions_test_") + tail;
}

// central finite differences of the global evaluation against the declared
// jacobian, componentwise, tolerance 1e-5 * (1 + |entry|)
void check_jacobian_by_fd(const GlobalFunctionBase& f, const grid::Point& x)
{
  const double step = 1e-6;
  const auto jacobian = f.jacobian_global(x);
  for (int direction = 0; direction < f.dim_domain(); ++direction) {
    auto forward = x;
    auto backward = x;
    forward[direction] += step;
    backward[direction] -= step;
    const auto high = f.evaluate_global(forward);
    const auto low = f.evaluate_global(backward);
    for (std::size_t component = 0; component < high.components(); ++component) {
      const double fd = (high.flat(component) - low.flat(component)) / (2.0 * step);
      const double declared = jacobian.at(component, direction);
      CHECK(std::abs(fd - declared) <= 1e-5 * (1.0 + std::abs(declared)));
    }
  }
}

} // namespace


// ----------------------------------------------------------------------
// expression parsing and evaluation

TEST_CASE("expression evaluation follows the declared precedence")
{
  const grid::Point x2{2.0, 0.0, 0.0};
  const grid::Point x3{3.0, 0.0, 0.0};
  CHECK(Expression::parse("2*x[0]+1").evaluate(x3, 1) == 7.0);
  CHECK(Expression::parse("-x[0]^2").evaluate(x2, 1) == -4.0);
  CHECK(Expression::parse("(-x[0])^2").evaluate(x2, 1) == 4.0);
  CHECK(Expression::parse("pi").evaluate({}, 1) == doctest::Approx(3.14159265358979).epsilon(1e-12));
  CHECK(Expression::parse("2+3*4").evaluate({}, 1) == 14.0);
  CHECK(Expression::parse("(2+3)*4").evaluate({}, 1) == 20.0);
  CHECK(Expression::parse("2^3^2").evaluate({}, 1) == 512.0); // right associative
  CHECK(Expression::parse("8/4/2").evaluate({}, 1) == 1.0);   // left associative
  CHECK(Expression::parse("1-2-3").evaluate({}, 1) == -4.0);
  CHECK(Expression::parse("2*3^2").evaluate({}, 1) == 18.0);
  CHECK(Expression::parse("--2").evaluate({}, 1) == 2.0);
  CHECK(Expression::parse("2^-1").evaluate({}, 1) == 0.5);
}

TEST_CASE("expression builtins and ieee semantics")
{
  const grid::Point half_pi{1.5707963267948966, 0.0, 0.0};
  CHECK(Expression::parse("sin(x[0])").evaluate(half_pi, 1) == doctest::Approx(1.0));
  CHECK(Expression::parse("cos(0)").evaluate({}, 1) == 1.0);
  CHECK(Expression::parse("exp(0)").evaluate({}, 1) == 1.0);
  CHECK(Expression::parse("sqrt(2.25)").evaluate({}, 1) == 1.5);
  CHECK(Expression::parse("abs(-3)").evaluate({}, 1) == 3.0);
  CHECK(Expression::parse("sin(pi)").evaluate({}, 1) == doctest::Approx(0.0).epsilon(1e-14));

  CHECK(std::isinf(Expression::parse("1/0").evaluate({}, 1)));
  CHECK(std::isnan(Expression::parse("sqrt(-1)").evaluate({}, 1)));
  CHECK(std::isnan(Expression::parse("0/0").evaluate({}, 1)));
}

TEST_CASE("expression variables and custom names")
{
  const grid::Point x{1.0, 2.0, 3.0};
  CHECK(Expression::parse("x[0]+x[1]*x[2]").evaluate(x, 3) == 7.0);
  CHECK(Expression::parse("x[0]+x[1]*x[2]").max_variable_index() == 2);
  CHECK(Expression::parse("pi").max_variable_index() == -1);
  CHECK(Expression::parse("y[1]", "y").evaluate(x, 2) == 2.0);
  CHECK(Expression::parse("x[0]").text() == "x[0]");

  // evaluation beyond the provided dimension is a usage error
  CHECK_THROWS_AS(Expression::parse("x[1]").evaluate(x, 1), UsageError);
}

TEST_CASE("expression parse errors carry text and position")
{
  auto check_error = [](const std::string& text, const std::string& fragment) {
    try {
      (void)Expression::parse(text);
      FAIL("expected ParseError for '" << text << "'");
    } catch (const ParseError& e) {
      const std::string what = e.what();
      CHECK(what.find("cannot parse expression '" + text + "'") != std::string::npos);
      CHECK(what.find("position") != std::string::npos);
      CHECK(what.find(fragment) != std::string::npos);
    }
  };
  check_error("2*", "expected a number, variable or function");
  check_error("2**3", "expected a number, variable or function");
  check_error("(1+2", "expected ')'");
  check_error("x[1.5]", "component indices must be non-negative integers");
  check_error("x[]", "expected a component index");
  check_error("foo(2)", "unknown identifier 'foo'");
  check_error("1+2)", "trailing input");
  check_error("x[0] x[1]", "trailing input");
  check_error("2*.", "bad number literal");
  check_error("2..5", "trailing input"); // "2." and ".5" are two adjacent numbers
  CHECK_THROWS_AS(Expression::parse(""), ParseError);
}


// ----------------------------------------------------------------------
// quadrature

TEST_CASE("gauss-legendre unit rules")
{
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_legendre_unit(1, nodes, weights);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  gauss_legendre_unit(2, nodes, weights);
  REQUIRE(nodes.size() == 2);
  const double offset = 0.5 / std::sqrt(3.0);
  CHECK(nodes[0] == doctest::Approx(0.5 - offset).epsilon(1e-14));
  CHECK(nodes[1] == doctest::Approx(0.5 + offset).epsilon(1e-14));
  CHECK(weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("quadrature rules by degree")
{
  const auto midpoint = quadrature_rule(1, 1);
  CHECK(midpoint.points_per_direction == 1);
  REQUIRE(midpoint.size() == 1);
  CHECK(midpoint.points[0][0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(midpoint.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto two_d = quadrature_rule(2, 3);
  CHECK(two_d.points_per_direction == 2);
  CHECK(two_d.size() == 4);
  double total = 0.0;
  for (const auto w : two_d.weights)
    total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  // int_0^1 x^3 dx = 1/4, integrated exactly by the degree-3 rule
  const auto cubic = quadrature_rule(1, 3);
  double integral = 0.0;
  for (std::size_t q = 0; q < cubic.size(); ++q)
    integral += cubic.weights[q] * std::pow(cubic.points[q][0], 3);
  CHECK(std::abs(integral - 0.25) <= 1e-14);

  CHECK_THROWS_AS(quadrature_rule(0, 1), UsageError);
  CHECK_THROWS_AS(quadrature_rule(4, 1), UsageError);
  CHECK_THROWS_AS(quadrature_rule(1, -1), UsageError);
}

TEST_CASE("tensor quadrature is exact up to per-direction degree 2n-1")
{
  for (int dim = 1; dim <= 3; ++dim) {
    for (int degree = 0; degree <= 7; ++degree) {
      const auto rule = quadrature_rule(dim, degree);
      const int n = rule.points_per_direction;
      CHECK(2 * n - 1 >= degree);
      // every tensor monomial prod x_i^{p_i} with p_i <= 2n-1 integrates to
      // prod 1/(p_i+1)
      std::array<int, 3> exponents{0, 0, 0};
      const int max_exponent = 2 * n - 1;
      const auto total = static_cast<int>(std::pow(max_exponent + 1, dim));
      for (int flat = 0; flat < total; ++flat) {
        int rest = flat;
        for (int i = 0; i < dim; ++i) {
          exponents[static_cast<std::size_t>(i)] = rest % (max_exponent + 1);
          rest /= (max_exponent + 1);
        }
        double integral = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          double value = rule.weights[q];
          for (int i = 0; i < dim; ++i)
            value *= std::pow(rule.points[q][i], exponents[static_cast<std::size_t>(i)]);
          integral += value;
        }
        double exact = 1.0;
        for (int i = 0; i < dim; ++i)
          exact /= static_cast<double>(exponents[static_cast<std::size_t>(i)] + 1);
        CHECK(std::abs(integral - exact) <= 1e-13);
      }
    }
  }
}


// ----------------------------------------------------------------------
// concrete functions

TEST_CASE("constant function returns its value everywhere")
{
  const auto identity = parse_range_value("[1. 0.; 0. 1.]");
  ConstantFunction matrix_fn(2, identity);
  CHECK(matrix_fn.dim_range() == 2);
  CHECK(matrix_fn.dim_range_cols() == 2);
  CHECK(matrix_fn.order() == 0);
  CHECK(matrix_fn.name() == "constant");
  const auto value = matrix_fn.evaluate_global({0.3, 0.7, 0.0});
  CHECK(value.at(0, 0) == 1.0);
  CHECK(value.at(0, 1) == 0.0);
  CHECK(value.at(1, 0) == 0.0);
  CHECK(value.at(1, 1) == 1.0);
  // matrix-valued jacobians are not provided
  CHECK_THROWS_AS(matrix_fn.jacobian_global({0.0, 0.0, 0.0}), CapabilityError);

  ConstantFunction scalar_fn(2, RangeValue::scalar(3.0));
  CHECK(scalar_fn.evaluate_global({9.0, 9.0, 0.0}).as_scalar() == 3.0);
  const auto jacobian = scalar_fn.jacobian_global({0.0, 0.0, 0.0});
  CHECK(jacobian.at(0, 0) == 0.0);
  CHECK(jacobian.at(0, 1) == 0.0);
}

TEST_CASE("checkerboard picks the direction-0-fastest subdomain")
{
  CheckerboardFunction f(2, {0.0, 0.0}, {1.0, 1.0}, {2, 2}, {1.0, 2.0, 3.0, 4.0});
  CHECK(f.name() == "checkerboard");
  CHECK(f.order() == 0);
  CHECK(f.evaluate_global({0.25, 0.25, 0.0}).as_scalar() == 1.0);
  CHECK(f.evaluate_global({0.75, 0.25, 0.0}).as_scalar() == 2.0);
  CHECK(f.evaluate_global({0.25, 0.75, 0.0}).as_scalar() == 3.0);
  CHECK(f.evaluate_global({0.75, 0.75, 0.0}).as_scalar() == 4.0);
  // half-open boxes: the shared edge belongs to the upper subdomain
  CHECK(f.evaluate_global({0.5, 0.0, 0.0}).as_scalar() == 2.0);
  // outside points clamp to the nearest subdomain
  CHECK(f.evaluate_global({-5.0, -5.0, 0.0}).as_scalar() == 1.0);
  CHECK(f.evaluate_global({5.0, 5.0, 0.0}).as_scalar() == 4.0);
  CHECK(f.subdomain({0.75, 0.25, 0.0}) == 1);
  CHECK(f.jacobian_global({0.25, 0.25, 0.0}).at(0, 1) == 0.0);

  CHECK_THROWS_AS(CheckerboardFunction(2, {0.0}, {1.0, 1.0}, {2, 2}, {1, 2, 3, 4}), ConfigError);
  CHECK_THROWS_AS(CheckerboardFunction(2, {0.0, 0.0}, {1.0, 0.0}, {2, 2}, {1, 2, 3, 4}),
                  ConfigError);
  CHECK_THROWS_AS(CheckerboardFunction(2, {0.0, 0.0}, {1.0, 1.0}, {2, 0}, {}), ConfigError);
  CHECK_THROWS_AS(CheckerboardFunction(2, {0.0, 0.0}, {1.0, 1.0}, {2, 2}, {1.0}), ConfigError);
}

TEST_CASE("expression function evaluates components and gradients at the global point")
{
  std::vector<Expression> components;
  components.push_back(Expression::parse("x[0]"));
  components.push_back(Expression::parse("sin(x[1])"));
  std::vector<std::vector<Expression>> gradients;
  gradients.push_back({Expression::parse("1"), Expression::parse("0")});
  gradients.push_back({Expression::parse("0"), Expression::parse("cos(x[1])")});
  ExpressionFunction f(2, 3, components, gradients);
  CHECK(f.dim_range() == 2);
  CHECK(f.order() == 3);

  const double half_pi = 1.5707963267948966;
  const auto value = f.evaluate_global({2.0, half_pi, 0.0});
  CHECK(value.flat(0) == 2.0);
  CHECK(value.flat(1) == doctest::Approx(1.0).epsilon(1e-14));
  const auto jacobian = f.jacobian_global({2.0, half_pi, 0.0});
  CHECK(jacobian.at(0, 0) == 1.0);
  CHECK(jacobian.at(0, 1) == 0.0);
  CHECK(jacobian.at(1, 0) == 0.0);
  CHECK(jacobian.at(1, 1) == doctest::Approx(0.0).epsilon(1e-14));

  // without gradients the jacobian is declared unavailable
  ExpressionFunction bare(1, 2, {Expression::parse("x[0]^2")});
  CHECK_THROWS_AS(bare.jacobian_global({1.0, 0.0, 0.0}), CapabilityError);

  // component expressions must fit the domain dimension
  CHECK_THROWS_AS(ExpressionFunction(1, 1, {Expression::parse("x[1]")}), ConfigError);
  std::vector<std::vector<Expression>> short_gradients;
  short_gradients.push_back({Expression::parse("1")});
  CHECK_THROWS_AS(ExpressionFunction(2, 1, {Expression::parse("x[0]")}, short_gradients),
                  ConfigError);
}

TEST_CASE("lambda function forwards to the callables")
{
  LambdaFunction f(
      2, [](const grid::Point& x) { return x[0] * x[1]; }, 2,
      [](const grid::Point& x) { return std::array<double, 3>{x[1], x[0], 0.0}; });
  CHECK(f.order() == 2);
  CHECK(f.name() == "lambda");
  CHECK(f.evaluate_global({3.0, 4.0, 0.0}).as_scalar() == 12.0);
  const auto jacobian = f.jacobian_global({3.0, 4.0, 0.0});
  CHECK(jacobian.at(0, 0) == 4.0);
  CHECK(jacobian.at(0, 1) == 3.0);

  LambdaFunction bare(1, [](const grid::Point& x) { return x[0]; }, 1);
  CHECK_THROWS_AS(bare.jacobian_global({0.0, 0.0, 0.0}), CapabilityError);
}

TEST_CASE("finite differences confirm every provided jacobian")
{
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> coordinate(0.0, 1.0);

  const ConstantFunction constant_scalar(2, RangeValue::scalar(4.5));
  const ConstantFunction constant_vector(2, RangeValue::vector({1.0, -2.0}));
  std::vector<std::vector<Expression>> gradients;
  gradients.push_back({Expression::parse("2*x[0]*x[1]"), Expression::parse("x[0]^2")});
  const ExpressionFunction expression(
      2, 3, {Expression::parse("x[0]^2*x[1]")}, gradients);
  std::vector<std::vector<Expression>> trig_gradients;
  trig_gradients.push_back(
      {Expression::parse("pi*cos(pi*x[0])*exp(x[1])"), Expression::parse("sin(pi*x[0])*exp(x[1])")});
  const ExpressionFunction trig(2, 4, {Expression::parse("sin(pi*x[0])*exp(x[1])")},
                                trig_gradients);
  const LambdaFunction lambda(
      2, [](const grid::Point& x) { return std::cos(x[0]) + x[1] * x[1]; }, 2,
      [](const grid::Point& x) { return std::array<double, 3>{-std::sin(x[0]), 2.0 * x[1], 0.0}; });

  const GlobalFunctionBase* functions[] = {&constant_scalar, &constant_vector, &expression, &trig,
                                           &lambda};
  for (const auto* f : functions)
    for (int round = 0; round < 50; ++round)
      check_jacobian_by_fd(*f, {coordinate(rng), coordinate(rng), 0.0});

  // the checkerboard jacobian is zero inside every subdomain; sample well
  // away from the subdomain boundaries
  const CheckerboardFunction checkerboard(2, {0.0, 0.0}, {1.0, 1.0}, {2, 2},
                                          {1.0, 2.0, 3.0, 4.0});
  std::uniform_real_distribution<double> inner(0.05, 0.45);
  std::bernoulli_distribution which(0.5);
  for (int round = 0; round < 50; ++round) {
    const grid::Point x{inner(rng) + (which(rng) ? 0.5 : 0.0),
                        inner(rng) + (which(rng) ? 0.5 : 0.0), 0.0};
    check_jacobian_by_fd(checkerboard, x);
  }
}


// ----------------------------------------------------------------------
// factory

TEST_CASE("functions factory dispatches on the type id")
{
  CHECK(FunctionsFactory::available()
        == std::vector<std::string>{"xt.functions.constant", "xt.functions.checkerboard",
                                    "xt.functions.expression"});

  common::Configuration constant_cfg;
  constant_cfg.set("value", "3");
  const auto constant = FunctionsFactory::create("xt.functions.constant", constant_cfg, 2);
  CHECK(constant->name() == "constant");
  CHECK(constant->dim_domain() == 2);

  common::Configuration checkerboard_cfg;
  checkerboard_cfg.set("lower_left", "[0. 0.]");
  checkerboard_cfg.set("upper_right", "[1. 1.]");
  checkerboard_cfg.set("num_elements", "[2 2]");
  checkerboard_cfg.set("values", "[1. 2. 3. 4.]");
  const auto checkerboard =
      FunctionsFactory::create("xt.functions.checkerboard", checkerboard_cfg, 2);
  const auto view = make_view(2, {2, 2});
  const auto local = checkerboard->local_function(view, grid::Entity{0u, {1, 0, 0}});
  CHECK(local->evaluate_one({0.5, 0.5, 0.0}).as_scalar() == 2.0);

  common::Configuration expression_cfg;
  expression_cfg.set("variable", "x");
  expression_cfg.set("order", "3");
  expression_cfg.set("expression", "[x[0] sin(x[1])]");
  expression_cfg.set("gradient.0", "[1 0]");
  expression_cfg.set("gradient.1", "[0 cos(x[1])]");
  const auto expression = FunctionsFactory::create("xt.functions.expression", expression_cfg, 2);
  CHECK(expression->dim_range() == 2);
  CHECK(expression->order() == 3);
  const auto* global = dynamic_cast<const GlobalFunctionBase*>(expression.get());
  REQUIRE(global != nullptr);
  CHECK(global->evaluate_global({2.0, 1.5707963267948966, 0.0}).flat(0) == 2.0);
  CHECK(global->jacobian_global({0.0, 0.0, 0.0}).at(1, 1) == 1.0); // cos(0)
}

TEST_CASE("factory error paths")
{
  common::Configuration cfg;
  try {
    (void)FunctionsFactory::create("xt.functions.spe10", cfg, 2);
    FAIL("expected FactoryError");
  } catch (const FactoryError& e) {
    const std::string what = e.what();
    CHECK(what.find("no function of type 'xt.functions.spe10' available") != std::string::npos);
    CHECK(what.find("xt.functions.constant") != std::string::npos);
    CHECK(what.find("xt.functions.expression") != std::string::npos);
  }

  // missing keys surface as configuration errors with the key name
  CHECK_THROWS_AS(FunctionsFactory::create("xt.functions.constant", cfg, 2), MissingKeyError);

  // a scalar expression may spell its gradient without the index
  common::Configuration scalar_cfg;
  scalar_cfg.set("order", "2");
  scalar_cfg.set("expression", "x[0]^2");
  scalar_cfg.set("gradient", "[2*x[0]]");
  const auto scalar = FunctionsFactory::create("xt.functions.expression", scalar_cfg, 1);
  const auto* global = dynamic_cast<const GlobalFunctionBase*>(scalar.get());
  REQUIRE(global != nullptr);
  CHECK(global->jacobian_global({3.0, 0.0, 0.0}).at(0, 0) == 6.0);

  // vector functions must provide gradients for all components or none
  common::Configuration partial_cfg;
  partial_cfg.set("order", "1");
  partial_cfg.set("expression", "[x[0] x[1]]");
  partial_cfg.set("gradient.0", "[1 0]");
  CHECK_THROWS_AS(FunctionsFactory::create("xt.functions.expression", partial_cfg, 2),
                  ConfigError);
}


// ----------------------------------------------------------------------
// localization

TEST_CASE("local functions compose the rule with the reference map")
{
  std::vector<std::vector<Expression>> gradients;
  gradients.push_back({Expression::parse("2*x[0]*x[1]"), Expression::parse("x[0]^2")});
  const ExpressionFunction f(2, 3, {Expression::parse("x[0]^2*x[1]")}, gradients);

  const auto view = make_view(2, {4, 4}, {0.0, 0.0}, {2.0, 1.0});
  const grid::Entity cell{0u, {2, 1, 0}};
  const auto geometry = view.geometry(cell);
  const auto local = f.local_function(view, cell);
  CHECK(local->size() == 1);
  CHECK(local->order() == 3);
  CHECK(local->dim_range() == 1);
  CHECK(local->geometry().offset == geometry.offset);

  const grid::Point reference{0.25, 0.75, 0.0};
  const auto global = geometry.to_global(reference);
  CHECK(local->evaluate_one(reference).as_scalar()
        == doctest::Approx(global[0] * global[0] * global[1]).epsilon(1e-14));

  // the local jacobian is the GLOBAL gradient evaluated at the mapped point
  const auto jacobian = local->jacobian_one(reference);
  CHECK(jacobian.at(0, 0) == doctest::Approx(2.0 * global[0] * global[1]).epsilon(1e-13));
  CHECK(jacobian.at(0, 1) == doctest::Approx(global[0] * global[0]).epsilon(1e-13));
}

TEST_CASE("chain rule: reference derivative equals localized gradient times widths")
{
  std::vector<std::vector<Expression>> gradients;
  gradients.push_back({Expression::parse("pi*cos(pi*x[0])*x[1]"), Expression::parse("sin(pi*x[0])")});
  const ExpressionFunction f(2, 4, {Expression::parse("sin(pi*x[0])*x[1]")}, gradients);

  const auto view = make_view(2, {5, 3}, {-1.0, 0.0}, {1.0, 3.0});
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::uniform_int_distribution<std::size_t> cell_index(0, view.num_cells() - 1);

  for (int round = 0; round < 30; ++round) {
    const auto cell = view.cell(cell_index(rng));
    const auto geometry = view.geometry(cell);
    const auto local = f.local_function(view, cell);
    const grid::Point reference{unit(rng), unit(rng), 0.0};
    const auto jacobian = local->jacobian_one(reference);

    for (int direction = 0; direction < 2; ++direction) {
      // reference-coordinate derivative of the pullback, by central FD
      const double step = 1e-6;
      auto forward = reference;
      auto backward = reference;
      forward[direction] += step;
      backward[direction] -= step;
      const double fd = (local->evaluate_one(forward).as_scalar()
                         - local->evaluate_one(backward).as_scalar())
                        / (2.0 * step);
      const double chained = jacobian.at(0, direction) * geometry.widths[direction];
      CHECK(std::abs(fd - chained) <= 1e-5 * (1.0 + std::abs(chained)));

      // and exactly, against the hand-derived reference derivative
      const auto global = geometry.to_global(reference);
      const double exact_global =
          direction == 0 ? 3.14159265358979323846 * std::cos(3.14159265358979323846 * global[0])
                               * global[1]
                         : std::sin(3.14159265358979323846 * global[0]);
      const double exact_reference = exact_global * geometry.widths[direction];
      CHECK(std::abs(chained - exact_reference) <= 1e-10 * (1.0 + std::abs(exact_reference)));
    }
  }
}


// ----------------------------------------------------------------------
// combined functions

TEST_CASE("combinators apply pointwise with the declared order rules")
{
  auto f = std::make_shared<ExpressionFunction>(
      1, 1, std::vector<Expression>{Expression::parse("x[0]")});
  auto g = std::make_shared<ExpressionFunction>(
      1, 3, std::vector<Expression>{Expression::parse("x[0]^3")});
  auto two = std::make_shared<ConstantFunction>(1, RangeValue::scalar(2.0));

  const auto sum = make_sum(f, g);
  const auto difference = make_difference(f, g);
  const auto product = make_product(two, f);
  CHECK(sum->order() == 3);        // max rule
  CHECK(difference->order() == 3); // max rule
  CHECK(product->order() == 1);    // sum of orders: 0 + 1
  CHECK(sum->name() == "(expression + expression)");
  CHECK(difference->name() == "(expression - expression)");
  CHECK(product->name() == "(constant * expression)");

  const auto view = make_view(1, {1}); // identity reference map
  const auto cell = view.cell(0);
  const auto local_sum = sum->local_function(view, cell);
  const auto local_difference = difference->local_function(view, cell);
  const auto local_product = product->local_function(view, cell);
  const auto local_f = f->local_function(view, cell);
  const auto local_g = g->local_function(view, cell);

  CHECK(local_product->evaluate_one({0.3, 0.0, 0.0}).as_scalar() == doctest::Approx(0.6));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int round = 0; round < 20; ++round) {
    const grid::Point p{unit(rng), 0.0, 0.0};
    const double fv = local_f->evaluate_one(p).as_scalar();
    const double gv = local_g->evaluate_one(p).as_scalar();
    // exact pointwise identities
    CHECK(local_sum->evaluate_one(p).as_scalar() == fv + gv);
    CHECK(local_difference->evaluate_one(p).as_scalar() == fv - gv);
    CHECK(local_product->evaluate_one(p).as_scalar() == 2.0 * fv);
  }

  // self-difference vanishes identically
  const auto zero = make_difference(g, g);
  const auto local_zero = zero->local_function(view, cell);
  for (int round = 0; round < 20; ++round)
    CHECK(local_zero->evaluate_one({unit(rng), 0.0, 0.0}).as_scalar() == 0.0);
}

TEST_CASE("combinator jacobians follow linearity and the product rule")
{
  std::vector<std::vector<Expression>> f_grad;
  f_grad.push_back({Expression::parse("cos(x[0])")});
  auto f = std::make_shared<ExpressionFunction>(
      1, 3, std::vector<Expression>{Expression::parse("sin(x[0])")}, f_grad);
  std::vector<std::vector<Expression>> g_grad;
  g_grad.push_back({Expression::parse("2*x[0]")});
  auto g = std::make_shared<ExpressionFunction>(
      1, 2, std::vector<Expression>{Expression::parse("x[0]^2")}, g_grad);

  const auto view = make_view(1, {1});
  const auto cell = view.cell(0);
  const auto sum = make_sum(f, g)->local_function(view, cell);
  const auto product = make_product(f, g)->local_function(view, cell);

  for (const double x : {0.1, 0.4, 0.9}) {
    const grid::Point p{x, 0.0, 0.0};
    const double expected_sum = std::cos(x) + 2.0 * x;
    CHECK(sum->jacobian_one(p).at(0, 0) == doctest::Approx(expected_sum).epsilon(1e-14));
    const double expected_product = std::cos(x) * x * x + std::sin(x) * 2.0 * x;
    CHECK(product->jacobian_one(p).at(0, 0) == doctest::Approx(expected_product).epsilon(1e-13));
  }
}

TEST_CASE("combinator dimension rules")
{
  auto scalar = std::make_shared<ConstantFunction>(2, RangeValue::scalar(1.0));
  auto vector = std::make_shared<ConstantFunction>(2, RangeValue::vector({1.0, 2.0}));
  auto other_dim = std::make_shared<ConstantFunction>(1, RangeValue::scalar(1.0));

  CHECK_THROWS_AS(make_sum(scalar, vector), UsageError);      // range mismatch
  CHECK_THROWS_AS(make_product(vector, scalar), UsageError);  // left factor must be scalar
  CHECK_THROWS_AS(make_sum(scalar, other_dim), UsageError);   // domain mismatch
  CHECK_NOTHROW(make_product(scalar, vector));
  const auto sum = make_sum(vector, vector);
  CHECK(sum->dim_range() == 2);
}


// ----------------------------------------------------------------------
// dg space and discrete functions

TEST_CASE("dg space layout and monomial basis")
{
  const auto view = make_view(2, {4, 4});
  const DgSpace space(view, 2);
  CHECK(space.order() == 2);
  CHECK(space.local_size() == 9);
  CHECK(space.size() == 16 * 9);
  CHECK(space.global_dof(3, 4) == 3 * 9 + 4);
  CHECK_THROWS_AS(space.global_dof(16, 0), UsageError);
  CHECK_THROWS_AS(space.global_dof(0, 9), UsageError);

  // exponents run direction-0 fastest
  CHECK(space.exponents(0) == std::array<int, 3>{0, 0, 0});
  CHECK(space.exponents(1) == std::array<int, 3>{1, 0, 0});
  CHECK(space.exponents(2) == std::array<int, 3>{2, 0, 0});
  CHECK(space.exponents(3) == std::array<int, 3>{0, 1, 0});
  CHECK(space.exponents(8) == std::array<int, 3>{2, 2, 0});

  const grid::Point p{0.5, 0.25, 0.0};
  const auto values = space.basis_values(p);
  REQUIRE(values.size() == 9);
  CHECK(values[0] == 1.0);
  CHECK(values[1] == 0.5);
  CHECK(values[3] == 0.25);
  CHECK(values[4] == 0.125);        // x * y
  CHECK(values[8] == 0.015625);     // x^2 * y^2
  CHECK(space.basis_reference_derivative(1, 0, p) == 1.0);
  CHECK(space.basis_reference_derivative(2, 0, p) == 1.0); // 2x at 0.5
  CHECK(space.basis_reference_derivative(1, 1, p) == 0.0);
  CHECK(space.basis_reference_derivative(4, 1, p) == 0.5); // d(xy)/dy = x

  CHECK_THROWS_AS(DgSpace(view, 4), UsageError);
  CHECK_THROWS_AS(DgSpace(view, -1), UsageError);
  CHECK_NOTHROW(DgSpace(view, 3));
}

TEST_CASE("dg basis jacobians are reference derivatives scaled by the cell widths")
{
  const auto view = make_view(2, {4, 2}, {0.0, 0.0}, {2.0, 1.0}); // widths 0.5 x 0.5
  const DgSpace space(view, 2);
  const auto cell = view.cell(5);
  const auto geometry = view.geometry(cell);
  const auto basis = space.basis(cell);
  CHECK(basis->size() == 9);
  CHECK(basis->order() == 2);

  const grid::Point p{0.3, 0.8, 0.0};
  const auto values = basis->evaluate(p);
  const auto jacobians = basis->jacobian(p);
  REQUIRE(values.size() == 9);
  REQUIRE(jacobians.size() == 9);
  for (int j = 0; j < 9; ++j) {
    CHECK(values[static_cast<std::size_t>(j)].as_scalar()
          == doctest::Approx(space.basis_values(p)[static_cast<std::size_t>(j)]).epsilon(1e-15));
    for (int direction = 0; direction < 2; ++direction) {
      const double expected = space.basis_reference_derivative(j, direction, p)
                              / geometry.widths[direction];
      CHECK(jacobians[static_cast<std::size_t>(j)].at(0, direction)
            == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("discrete functions evaluate their dof expansion")
{
  const auto view = make_view(1, {2});
  const DgSpace space(view, 1);
  // f = 1 + x on cell 0 (local), f = 2 on cell 1
  la::DenseVector dofs{1.0, 1.0, 2.0, 0.0};
  const DiscreteFunction f(space, dofs, "fh");
  CHECK(f.name() == "fh");
  CHECK(f.order() == 1);
  CHECK(f.dim_domain() == 1);

  const auto local0 = f.local_function(view, view.cell(0));
  CHECK(local0->evaluate_one({0.5, 0.0, 0.0}).as_scalar() == 1.5);
  CHECK(local0->jacobian_one({0.5, 0.0, 0.0}).at(0, 0) == doctest::Approx(2.0)); // 1 / h = 2
  const auto local1 = f.local_function(view, view.cell(1));
  CHECK(local1->evaluate_one({0.25, 0.0, 0.0}).as_scalar() == 2.0);

  CHECK_THROWS_AS(DiscreteFunction(space, la::DenseVector(3)), UsageError);
  const auto other_view = make_view(1, {3});
  CHECK_THROWS_AS(f.local_function(other_view, other_view.cell(0)), UsageError);
}


// ----------------------------------------------------------------------
// projection and norms

TEST_CASE("projection reproduces constants and polynomials")
{
  const auto view = make_view(2, {4, 4});

  // constants at k=0: every dof is the constant
  const ConstantFunction one(2, RangeValue::scalar(1.0));
  const DgSpace p0(view, 0);
  const auto constant_dofs = l2_projection(one, p0);
  REQUIRE(constant_dofs.size() == 16);
  for (std::size_t i = 0; i < constant_dofs.size(); ++i)
    CHECK(constant_dofs.get_entry(i) == doctest::Approx(1.0).epsilon(1e-13));

  // f = x[0] at k=1: the reconstruction matches f at the cell centers
  std::vector<std::vector<Expression>> gradients;
  gradients.push_back({Expression::parse("1"), Expression::parse("0")});
  const ExpressionFunction linear(2, 1, {Expression::parse("x[0]")}, gradients);
  const DgSpace p1(view, 1);
  const auto linear_dofs = l2_projection(linear, p1);
  const DiscreteFunction fh(p1, linear_dofs);
  const grid::Point reference_center{0.5, 0.5, 0.0};
  for (std::size_t index = 0; index < view.num_cells(); ++index) {
    const auto cell = view.cell(index);
    const auto center = view.center(cell);
    const auto local = fh.local_function(view, cell);
    CHECK(std::abs(local->evaluate_one(reference_center).as_scalar() - center[0]) <= 1e-12);
  }
}

TEST_CASE("projection is exact on monomials up to the space order")
{
  const auto view = make_view(2, {4, 4});
  for (int k = 0; k <= 2; ++k) {
    const DgSpace space(view, k);
    for (int p0 = 0; p0 <= k; ++p0)
      for (int p1 = 0; p1 <= k; ++p1) {
        const LambdaFunction f(
            2,
            [p0, p1](const grid::Point& x) { return std::pow(x[0], p0) * std::pow(x[1], p1); },
            k);
        const auto dofs = l2_projection(f, space);
        const DiscreteFunction fh(space, dofs);
        const auto difference = make_difference(
            std::make_shared<LambdaFunction>(
                2,
                [p0, p1](const grid::Point& x) { return std::pow(x[0], p0) * std::pow(x[1], p1); },
                k),
            std::make_shared<DiscreteFunction>(fh));
        CHECK(l2_norm(*difference, view, 2 * k + 2) <= 1e-10);
      }
  }
}

TEST_CASE("projection is idempotent")
{
  const auto view = make_view(2, {4, 4});
  const DgSpace space(view, 1);
  std::vector<std::vector<Expression>> gradients;
  gradients.push_back({Expression::parse("pi*cos(pi*x[0])"), Expression::parse("0")});
  const ExpressionFunction f(2, 3, {Expression::parse("sin(pi*x[0])")}, gradients);

  const auto first = l2_projection(f, space);
  const DiscreteFunction fh(space, first);
  const auto second = l2_projection(fh, space);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i)
    CHECK(std::abs(first.get_entry(i) - second.get_entry(i)) <= 1e-12);
}

TEST_CASE("projection propagates solver choice and wraps local failures")
{
  const auto view = make_view(2, {2, 2});
  const DgSpace space(view, 1);
  const ConstantFunction f(2, RangeValue::scalar(2.0));

  const auto via_qr = l2_projection(f, space, "qr.householder");
  for (std::size_t i = 0; i < via_qr.size(); i += 4)
    CHECK(via_qr.get_entry(i) == doctest::Approx(2.0));

  CHECK_THROWS_AS(l2_projection(f, space, "cholesky"), ProjectionError);

  // the test hook forces a singular local matrix on cell 2
  std::size_t visit = 0;
  try {
    l2_projection(f, space, "", [&visit](la::DenseMatrix& matrix) {
      if (visit++ == 2)
        for (std::size_t i = 0; i < matrix.rows(); ++i)
          for (std::size_t j = 0; j < matrix.cols(); ++j)
            matrix.set_entry(i, j, 1.0);
    });
    FAIL("expected ProjectionError");
  } catch (const ProjectionError& e) {
    const std::string what = e.what();
    CHECK(what.find("l2 projection failed because a local matrix could not be inverted (cell 2)")
          != std::string::npos);
  }

  const ConstantFunction vector_valued(2, RangeValue::vector({1.0, 2.0}));
  CHECK_THROWS_AS(l2_projection(vector_valued, space), UsageError);
}

TEST_CASE("l2 norms of reference functions")
{
  const auto view = make_view(2, {4, 4});
  const ConstantFunction one(2, RangeValue::scalar(1.0));
  CHECK(l2_norm(one, view) == doctest::Approx(1.0).epsilon(1e-14));

  const ExpressionFunction x0(2, 1, {Expression::parse("x[0]")});
  CHECK(std::abs(l2_norm(x0, view) - 1.0 / std::sqrt(3.0)) <= 1e-12);
  CHECK(std::abs(l2_norm(x0, view, 4) - 1.0 / std::sqrt(3.0)) <= 1e-12);

  // parallel evaluation agrees with serial to floating-point reassociation
  const ExpressionFunction wavy(2, 5, {Expression::parse("sin(pi*x[0])*cos(pi*x[1])")});
  const double serial = l2_norm(wavy, view, 8, false);
  const double parallel = l2_norm(wavy, view, 8, true, 4);
  CHECK(std::abs(serial - parallel) <= 1e-13 * (1.0 + serial));

  const ConstantFunction vector_valued(2, RangeValue::vector({1.0, 2.0}));
  CHECK_THROWS_AS(l2_norm(vector_valued, view), UsageError);
}

TEST_CASE("convergence rate of the k=1 projection of sin(pi x0)")
{
  std::vector<std::vector<Expression>> gradients;
  gradients.push_back({Expression::parse("pi*cos(pi*x[0])"), Expression::parse("0")});
  const auto f = std::make_shared<ExpressionFunction>(
      2, 3, std::vector<Expression>{Expression::parse("sin(pi*x[0])")}, gradients);

  double errors[2];
  int index = 0;
  for (const std::int64_t n : {8, 16}) {
    const auto view = make_view(2, {n, n});
    const DgSpace space(view, 1);
    const auto dofs = l2_projection(*f, space);
    const auto fh = std::make_shared<DiscreteFunction>(space, dofs);
    errors[index++] = l2_norm(*make_difference(f, fh), view, 8);
  }
  const double ratio = errors[0] / errors[1];
  CHECK(ratio >= 3.2);
  CHECK(ratio <= 4.8);
}

TEST_CASE("pulled-back integrands preserve the bilinear form structure")
{
  // int_t a grad(psi) . grad(phi) via global coordinates equals the
  // reference-cell sum over localized gradients, cell by cell
  std::vector<std::vector<Expression>> psi_grad;
  psi_grad.push_back({Expression::parse("2*x[0]*x[1]"), Expression::parse("x[0]^2")});
  const ExpressionFunction psi(2, 3, {Expression::parse("x[0]^2*x[1]")}, psi_grad);
  std::vector<std::vector<Expression>> phi_grad;
  phi_grad.push_back({Expression::parse("cos(x[0])"), Expression::parse("2*x[1]")});
  const ExpressionFunction phi(2, 3, {Expression::parse("sin(x[0])+x[1]^2")}, phi_grad);
  const ConstantFunction a(2, RangeValue::scalar(2.5));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lower_dist(-2.0, 0.0);
  std::uniform_real_distribution<double> width_dist(0.5, 3.0);
  std::uniform_int_distribution<std::int64_t> cells_dist(1, 4);

  for (int round = 0; round < 10; ++round) {
    const double lx = lower_dist(rng);
    const double ly = lower_dist(rng);
    const auto view = make_view(2, {cells_dist(rng), cells_dist(rng)}, {lx, ly},
                                {lx + width_dist(rng), ly + width_dist(rng)});
    const auto rule = quadrature_rule(2, 6);
    for (std::size_t index = 0; index < view.num_cells(); ++index) {
      const auto cell = view.cell(index);
      const auto geometry = view.geometry(cell);

      // global route: map each point, use the functions' global jacobians
      double global_route = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto point = geometry.to_global(rule.points[q]);
        const auto psi_j = psi.jacobian_global(point);
        const auto phi_j = phi.jacobian_global(point);
        double dot = 0.0;
        for (int d = 0; d < 2; ++d)
          dot += psi_j.at(0, d) * phi_j.at(0, d);
        global_route += rule.weights[q] * geometry.integration_element()
                        * a.evaluate_global(point).as_scalar() * dot;
      }

      // localized route: everything through local functions on the cell
      const auto local_psi = psi.local_function(view, cell);
      const auto local_phi = phi.local_function(view, cell);
      const auto local_a = a.local_function(view, cell);
      double local_route = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto psi_j = local_psi->jacobian_one(rule.points[q]);
        const auto phi_j = local_phi->jacobian_one(rule.points[q]);
        double dot = 0.0;
        for (int d = 0; d < 2; ++d)
          dot += psi_j.at(0, d) * phi_j.at(0, d);
        local_route += rule.weights[q] * geometry.integration_element()
                       * local_a->evaluate_one(rule.points[q]).as_scalar() * dot;
      }

      CHECK(std::abs(global_route - local_route) <= 1e-12 * (1.0 + std::abs(global_route)));
    }
  }
}


// ----------------------------------------------------------------------
// visualization

TEST_CASE("vtk output matches the golden bytes for a 2x2 grid")
{
  const auto view = make_view(2, {2, 2});
  const ConstantFunction one(2, RangeValue::scalar(1.0));
  const auto path = temp_path("constant.vtk");
  visualize(one, view, "constant", path);

  const std::string expected = "# vtk DataFile Version 3.0\n"
                               "constant\n"
                               "ASCII\n"
                               "DATASET RECTILINEAR_GRID\n"
                               "DIMENSIONS 3 3 1\n"
                               "X_COORDINATES 3 double\n"
                               "0 0.5 1\n"
                               "Y_COORDINATES 3 double\n"
                               "0 0.5 1\n"
                               "Z_COORDINATES 1 double\n"
                               "0\n"
                               "CELL_DATA 4\n"
                               "SCALARS constant double 1\n"
                               "LOOKUP_TABLE default\n"
                               "1\n1\n1\n1\n";
  CHECK(read_file(path) == expected);
  std::remove(path.c_str());
}

TEST_CASE("vtk output for 1d grids pads the dimensions")
{
  const auto view = make_view(1, {4});
  const ExpressionFunction f(1, 1, {Expression::parse("x[0]")});
  const auto path = temp_path("difference.vtk");
  visualize(f, view, "difference", path);

  const auto content = read_file(path);
  CHECK(content.find("DIMENSIONS 5 1 1\n") != std::string::npos);
  CHECK(content.find("SCALARS difference double 1\n") != std::string::npos);
  CHECK(content.find("X_COORDINATES 5 double\n0 0.25 0.5 0.75 1\n") != std::string::npos);
  CHECK(content.find("Y_COORDINATES 1 double\n0\n") != std::string::npos);
  // cell-center samples of x in enumeration order
  CHECK(content.find("LOOKUP_TABLE default\n0.125\n0.375\n0.625\n0.875\n") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("vtk writer rejects unwritable paths and non-scalar data")
{
  const auto view = make_view(2, {2, 2});
  const ConstantFunction one(2, RangeValue::scalar(1.0));
  CHECK_THROWS_AS(visualize(one, view, "f", "/nonexistent-dir/f.vtk"), IoError);

  const ConstantFunction vector_valued(2, RangeValue::vector({1.0, 2.0}));
  CHECK_THROWS_AS(visualize(vector_valued, view, "f", temp_path("never.vtk")), UsageError);

  const ConstantFunction wrong_dim(1, RangeValue::scalar(1.0));
  CHECK_THROWS_AS(visualize(wrong_dim, view, "f", temp_path("never.vtk")), UsageError);
}
