#include <xt/functions/expression.hpp>

#include <xt/common/exceptions.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

namespace xt::functions {


struct Expression::Node
{
  enum class Kind
  {
    number,
    pi,
    variable,
    negate,
    add,
    subtract,
    multiply,
    divide,
    power,
    sin,
    cos,
    exp,
    sqrt,
    abs
  };

  Kind kind;
  double value = 0.0;
  int index = 0;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;


NodePtr make_node(Node::Kind kind, NodePtr left = nullptr, NodePtr right = nullptr)
{
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

struct Token
{
  enum class Kind
  {
    number,
    identifier,
    symbol,
    end
  };

  Kind kind = Kind::end;
  double value = 0.0;
  std::string name;
  char symbol = 0;
  std::size_t offset = 0;
};

class Parser
{
public:
  Parser(const std::string& text, const std::string& variable)
    : text_(text)
    , variable_(variable)
  {
    tokenize();
  }

  NodePtr run()
  {
    NodePtr root = parse_expr();
    if (current().kind != Token::Kind::end)
      fail("unexpected trailing input");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& reason) const
  {
    throw ParseError("cannot parse expression '" + text_ + "': " + reason + " at position "
                     + std::to_string(current().offset + 1));
  }

  void tokenize()
  {
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      Token token;
      token.offset = i;
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        double value = 0.0;
        const char* first = text_.data() + i;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{})
          throw ParseError("cannot parse expression '" + text_ + "': bad number literal at position "
                           + std::to_string(i + 1));
        token.kind = Token::Kind::number;
        token.value = value;
        i += static_cast<std::size_t>(ptr - first);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
          ++j;
        token.kind = Token::Kind::identifier;
        token.name = text_.substr(i, j - i);
        i = j;
      } else if (std::string("+-*/^()[]").find(c) != std::string::npos) {
        token.kind = Token::Kind::symbol;
        token.symbol = c;
        ++i;
      } else {
        throw ParseError("cannot parse expression '" + text_ + "': unexpected character '"
                         + std::string(1, c) + "' at position " + std::to_string(i + 1));
      }
      tokens_.push_back(std::move(token));
    }
    Token end;
    end.offset = text_.size();
    tokens_.push_back(end);
  }

  const Token& current() const { return tokens_[position_]; }

  bool accept_symbol(char symbol)
  {
    if (current().kind == Token::Kind::symbol && current().symbol == symbol) {
      ++position_;
      return true;
    }
    return false;
  }

  void expect_symbol(char symbol)
  {
    if (!accept_symbol(symbol))
      fail(std::string("expected '") + symbol + "'");
  }

  NodePtr parse_expr()
  {
    NodePtr left = parse_term();
    while (true) {
      if (accept_symbol('+'))
        left = make_node(Node::Kind::add, left, parse_term());
      else if (accept_symbol('-'))
        left = make_node(Node::Kind::subtract, left, parse_term());
      else
        return left;
    }
  }

  NodePtr parse_term()
  {
    NodePtr left = parse_unary();
    while (true) {
      if (accept_symbol('*'))
        left = make_node(Node::Kind::multiply, left, parse_unary());
      else if (accept_symbol('/'))
        left = make_node(Node::Kind::divide, left, parse_unary());
      else
        return left;
    }
  }

  NodePtr parse_unary()
  {
    if (accept_symbol('-'))
      return make_node(Node::Kind::negate, parse_unary());
    return parse_power();
  }

  NodePtr parse_power()
  {
    NodePtr base = parse_primary();
    if (accept_symbol('^'))
      return make_node(Node::Kind::power, base, parse_unary());
    return base;
  }

  NodePtr parse_primary()
  {
    const Token& token = current();
    if (token.kind == Token::Kind::number) {
      ++position_;
      auto node = std::make_shared<Node>();
      node->kind = Node::Kind::number;
      node->value = token.value;
      return node;
    }
    if (token.kind == Token::Kind::identifier) {
      ++position_;
      if (token.name == "pi")
        return make_node(Node::Kind::pi);
      if (token.name == variable_) {
        expect_symbol('[');
        if (current().kind != Token::Kind::number)
          fail("expected a component index");
        const double raw = current().value;
        const int index = static_cast<int>(raw);
        if (raw != static_cast<double>(index) || index < 0)
          fail("component indices must be non-negative integers");
        ++position_;
        expect_symbol(']');
        auto node = std::make_shared<Node>();
        node->kind = Node::Kind::variable;
        node->index = index;
        return node;
      }
      Node::Kind kind;
      if (token.name == "sin")
        kind = Node::Kind::sin;
      else if (token.name == "cos")
        kind = Node::Kind::cos;
      else if (token.name == "exp")
        kind = Node::Kind::exp;
      else if (token.name == "sqrt")
        kind = Node::Kind::sqrt;
      else if (token.name == "abs")
        kind = Node::Kind::abs;
      else {
        --position_;
        fail("unknown identifier '" + token.name + "'");
      }
      expect_symbol('(');
      NodePtr argument = parse_expr();
      expect_symbol(')');
      return make_node(kind, std::move(argument));
    }
    if (accept_symbol('(')) {
      NodePtr inner = parse_expr();
      expect_symbol(')');
      return inner;
    }
    fail("expected a number, variable or function");
  }

  std::string text_;
  std::string variable_;
  std::vector<Token> tokens_;
  std::size_t position_ = 0;
};

double evaluate_node(const Node& node, const grid::Point& x, int dim)
{
  switch (node.kind) {
    case Node::Kind::number:
      return node.value;
    case Node::Kind::pi:
      return M_PI;
    case Node::Kind::variable:
      if (node.index >= dim)
        throw UsageError("expression uses component " + std::to_string(node.index)
                         + " but the domain has " + std::to_string(dim) + " dimensions");
      return x[node.index];
    case Node::Kind::negate:
      return -evaluate_node(*node.left, x, dim);
    case Node::Kind::add:
      return evaluate_node(*node.left, x, dim) + evaluate_node(*node.right, x, dim);
    case Node::Kind::subtract:
      return evaluate_node(*node.left, x, dim) - evaluate_node(*node.right, x, dim);
    case Node::Kind::multiply:
      return evaluate_node(*node.left, x, dim) * evaluate_node(*node.right, x, dim);
    case Node::Kind::divide:
      return evaluate_node(*node.left, x, dim) / evaluate_node(*node.right, x, dim);
    case Node::Kind::power:
      return std::pow(evaluate_node(*node.left, x, dim), evaluate_node(*node.right, x, dim));
    case Node::Kind::sin:
      return std::sin(evaluate_node(*node.left, x, dim));
    case Node::Kind::cos:
      return std::cos(evaluate_node(*node.left, x, dim));
    case Node::Kind::exp:
      return std::exp(evaluate_node(*node.left, x, dim));
    case Node::Kind::sqrt:
      return std::sqrt(evaluate_node(*node.left, x, dim));
    case Node::Kind::abs:
      return std::abs(evaluate_node(*node.left, x, dim));
  }
  throw UsageError("corrupt expression node");
}

int max_index_of(const Node& node)
{
  int result = node.kind == Node::Kind::variable ? node.index : -1;
  if (node.left)
    result = std::max(result, max_index_of(*node.left));
  if (node.right)
    result = std::max(result, max_index_of(*node.right));
  return result;
}


} // namespace


Expression Expression::parse(const std::string& text, const std::string& variable)
{
  Parser parser(text, variable);
  return Expression(text, parser.run());
}

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
  : text_(std::move(text))
  , root_(std::move(root))
{}

double Expression::evaluate(const grid::Point& x, int dim) const
{
  return evaluate_node(*root_, x, dim);
}

int Expression::max_variable_index() const
{
  return max_index_of(*root_);
}


} // namespace xt::functions
