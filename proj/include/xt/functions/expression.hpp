#pragma once

#include <xt/grid/grid.hpp>

#include <memory>
#include <string>

namespace xt::functions {


// A parsed arithmetic expression over one indexed variable.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' unary]          (right associative)
//   primary := number | 'pi' | var '[' index ']'
//            | ('sin'|'cos'|'exp'|'sqrt'|'abs') '(' expr ')' | '(' expr ')'
//
// Unary minus binds looser than '^', so -x[0]^2 is -(x[0]^2).  Evaluation
// follows IEEE semantics: division by zero and domain errors propagate as
// inf/nan rather than raising.
class Expression
{
public:
  struct Node; // definition is an implementation detail

  static Expression parse(const std::string& text, const std::string& variable = "x");

  double evaluate(const grid::Point& x, int dim) const;

  // largest i used in var[i], or -1 if the variable does not occur
  int max_variable_index() const;

  const std::string& text() const { return text_; }

private:
  Expression(std::string text, std::shared_ptr<const Node> root);

  std::string text_;
  std::shared_ptr<const Node> root_;
};


} // namespace xt::functions
