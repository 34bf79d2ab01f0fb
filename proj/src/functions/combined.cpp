#include <xt/functions/combined.hpp>

#include <xt/common/exceptions.hpp>

#include <algorithm>
#include <utility>

namespace xt::functions {

namespace {


enum class Op
{
  sum,
  difference,
  product
};

const char* symbol(Op op)
{
  switch (op) {
    case Op::sum:
      return " + ";
    case Op::difference:
      return " - ";
    case Op::product:
      return " * ";
  }
  return " ? ";
}


class CombinedLocalFunction : public LocalFunction
{
public:
  CombinedLocalFunction(grid::CellGeometry geometry,
                        Op op,
                        int order,
                        std::unique_ptr<LocalFunction> left,
                        std::unique_ptr<LocalFunction> right)
    : LocalFunction(std::move(geometry))
    , op_(op)
    , order_(order)
    , left_(std::move(left))
    , right_(std::move(right))
  {}

  int order() const override { return order_; }
  int dim_range() const override { return right_->dim_range(); }
  int dim_range_cols() const override { return right_->dim_range_cols(); }

  std::vector<RangeValue> evaluate(const grid::Point& local) const override
  {
    const RangeValue left = left_->evaluate_one(local);
    RangeValue right = right_->evaluate_one(local);
    switch (op_) {
      case Op::sum:
        for (std::size_t k = 0; k < right.components(); ++k)
          right.flat(k) = left.flat(k) + right.flat(k);
        break;
      case Op::difference:
        for (std::size_t k = 0; k < right.components(); ++k)
          right.flat(k) = left.flat(k) - right.flat(k);
        break;
      case Op::product: {
        const double factor = left.as_scalar();
        for (std::size_t k = 0; k < right.components(); ++k)
          right.flat(k) *= factor;
        break;
      }
    }
    return {std::move(right)};
  }

  std::vector<Jacobian> jacobian(const grid::Point& local) const override
  {
    const Jacobian left = left_->jacobian_one(local);
    Jacobian right = right_->jacobian_one(local);
    switch (op_) {
      case Op::sum:
        for (std::size_t k = 0; k < right.data.size(); ++k)
          right.data[k] = left.data[k] + right.data[k];
        break;
      case Op::difference:
        for (std::size_t k = 0; k < right.data.size(); ++k)
          right.data[k] = left.data[k] - right.data[k];
        break;
      case Op::product: {
        // (f g_i)' = f' g_i + f g_i'
        const double factor = left_->evaluate_one(local).as_scalar();
        const RangeValue values = right_->evaluate_one(local);
        for (std::size_t component = 0; component < right.components; ++component)
          for (int direction = 0; direction < right.dim; ++direction)
            right.at(component, direction) = left.at(0, direction) * values.flat(component)
                                             + factor * right.at(component, direction);
        break;
      }
    }
    return {std::move(right)};
  }

private:
  Op op_;
  int order_;
  std::unique_ptr<LocalFunction> left_;
  std::unique_ptr<LocalFunction> right_;
};


class CombinedFunction : public LocalizableFunction
{
public:
  CombinedFunction(Op op, FunctionPtr left, FunctionPtr right)
    : op_(op)
    , left_(std::move(left))
    , right_(std::move(right))
  {
    if (!left_ || !right_)
      throw UsageError("cannot combine null functions");
    if (left_->dim_domain() != right_->dim_domain())
      throw UsageError("cannot combine functions on domains of dimension "
                       + std::to_string(left_->dim_domain()) + " and "
                       + std::to_string(right_->dim_domain()));
    if (op_ == Op::product) {
      if (left_->dim_range() != 1 || left_->dim_range_cols() != 1)
        throw UsageError("the left factor of a product must be scalar");
    } else if (left_->dim_range() != right_->dim_range()
               || left_->dim_range_cols() != right_->dim_range_cols()) {
      throw UsageError("cannot add functions with ranges "
                       + std::to_string(left_->dim_range()) + "x"
                       + std::to_string(left_->dim_range_cols()) + " and "
                       + std::to_string(right_->dim_range()) + "x"
                       + std::to_string(right_->dim_range_cols()));
    }
  }

  int dim_domain() const override { return left_->dim_domain(); }
  int dim_range() const override { return right_->dim_range(); }
  int dim_range_cols() const override { return right_->dim_range_cols(); }

  int order() const override
  {
    if (op_ == Op::product)
      return left_->order() + right_->order();
    return std::max(left_->order(), right_->order());
  }

  std::string name() const override
  {
    return "(" + left_->name() + symbol(op_) + right_->name() + ")";
  }

  std::unique_ptr<LocalFunction> local_function(const grid::GridView& view,
                                                const grid::Entity& cell) const override
  {
    return std::make_unique<CombinedLocalFunction>(view.geometry(cell), op_, order(),
                                                   left_->local_function(view, cell),
                                                   right_->local_function(view, cell));
  }

private:
  Op op_;
  FunctionPtr left_;
  FunctionPtr right_;
};


} // namespace


FunctionPtr make_sum(FunctionPtr f, FunctionPtr g)
{
  return std::make_shared<CombinedFunction>(Op::sum, std::move(f), std::move(g));
}

FunctionPtr make_difference(FunctionPtr f, FunctionPtr g)
{
  return std::make_shared<CombinedFunction>(Op::difference, std::move(f), std::move(g));
}

FunctionPtr make_product(FunctionPtr f, FunctionPtr g)
{
  return std::make_shared<CombinedFunction>(Op::product, std::move(f), std::move(g));
}


} // namespace xt::functions
