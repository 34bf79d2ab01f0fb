#include <xt/common/string.hpp>

#include <xt/common/exceptions.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>

namespace xt::common {

namespace {


bool is_space(char c)
{
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

template <class T>
T parse_literal(std::string_view token, std::string_view all)
{
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("'" + std::string(token) + "' is not a valid "
                     + (std::is_integral_v<T> ? std::string("integer") : std::string("real"))
                     + " literal (in '" + std::string(all) + "')");
  return value;
}

// Applies the truncate-or-fail size rule shared by all sequence parsers.
template <class T>
std::vector<T> resize_checked(std::vector<T> values, std::size_t size, std::string_view what,
                              std::string_view text)
{
  if (size == 0)
    return values;
  if (values.size() < size)
    throw SizeError(std::string(what) + " literal '" + std::string(text) + "' provides "
                    + std::to_string(values.size()) + " entries but " + std::to_string(size)
                    + " were requested");
  values.resize(size);
  return values;
}

template <class T>
std::vector<T> parse_sequence(std::string_view text, std::size_t size, std::string_view what)
{
  const std::string body = trim(text);
  if (body.empty())
    throw ParseError("cannot parse " + std::string(what) + " from empty text");
  std::vector<T> values;
  if (body.front() == '[') {
    if (body.back() != ']')
      throw ParseError("unterminated '[' in '" + body + "'");
    for (const auto& token : split_top_level(std::string_view(body).substr(1, body.size() - 2)))
      values.push_back(parse_literal<T>(token, text));
  } else
    values.push_back(parse_literal<T>(body, text));
  return resize_checked(std::move(values), size, what, body);
}


} // namespace


std::vector<std::string> split_top_level(std::string_view text)
{
  std::vector<std::string> tokens;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[')
      ++depth;
    else if (c == ')' || c == ']')
      --depth;
    if (depth == 0 && is_space(c)) {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else
      current.push_back(c);
  }
  if (!current.empty())
    tokens.push_back(current);
  return tokens;
}

std::string trim(std::string_view text)
{
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin]))
    ++begin;
  while (end > begin && is_space(text[end - 1]))
    --end;
  return std::string(text.substr(begin, end - begin));
}

std::string format_scalar(double value)
{
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{})
    throw UsageError("cannot format scalar");
  return std::string(buffer, ptr);
}

std::string format_scalar(long long value)
{
  return std::to_string(value);
}

std::string format_vector(const std::vector<double>& values)
{
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0)
      out += ' ';
    out += format_scalar(values[i]);
  }
  out += ']';
  return out;
}

std::string format_matrix(const std::vector<std::vector<double>>& rows)
{
  std::string out = "[";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r > 0)
      out += "; ";
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0)
        out += ' ';
      out += format_scalar(rows[r][c]);
    }
  }
  out += ']';
  return out;
}

double parse_scalar(std::string_view text)
{
  const std::string body = trim(text);
  if (body.empty())
    throw ParseError("cannot parse real from empty text");
  return parse_literal<double>(body, text);
}

long long parse_integer(std::string_view text)
{
  const std::string body = trim(text);
  if (body.empty())
    throw ParseError("cannot parse integer from empty text");
  return parse_literal<long long>(body, text);
}

std::vector<double> parse_vector(std::string_view text, std::size_t size)
{
  return parse_sequence<double>(text, size, "vector");
}

std::vector<long long> parse_integer_vector(std::string_view text, std::size_t size)
{
  return parse_sequence<long long>(text, size, "integer vector");
}

std::vector<std::vector<double>> parse_matrix(std::string_view text, std::size_t rows,
                                              std::size_t cols)
{
  const std::string body = trim(text);
  if (body.empty())
    throw ParseError("cannot parse matrix from empty text");

  std::vector<std::vector<double>> result;
  if (body.front() == '[') {
    if (body.back() != ']')
      throw ParseError("unterminated '[' in '" + body + "'");
    const std::string inner = body.substr(1, body.size() - 2);
    // ';' separates rows; it cannot occur inside an entry literal.
    std::vector<std::string> row_texts;
    std::string current;
    for (char c : inner) {
      if (c == ';') {
        row_texts.push_back(current);
        current.clear();
      } else
        current.push_back(c);
    }
    row_texts.push_back(current);
    for (const auto& row_text : row_texts) {
      std::vector<double> row;
      for (const auto& token : split_top_level(row_text))
        row.push_back(parse_literal<double>(token, text));
      result.push_back(std::move(row));
    }
    // "[]" is the empty matrix, but "[1;]" has a genuinely empty second row.
    if (result.size() == 1 && result[0].empty())
      result.clear();
  } else
    result.push_back({parse_literal<double>(body, text)});

  for (std::size_t r = 1; r < result.size(); ++r)
    if (result[r].size() != result[0].size())
      throw ParseError("matrix literal '" + body + "' has rows of unequal length ("
                       + std::to_string(result[0].size()) + " vs. "
                       + std::to_string(result[r].size()) + ")");

  result = resize_checked(std::move(result), rows, "matrix", body);
  if (cols > 0)
    for (auto& row : result)
      row = resize_checked(std::move(row), cols, "matrix row", body);
  return result;
}


} // namespace xt::common
