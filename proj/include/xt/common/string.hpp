#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace xt::common {


// Value grammar used by configuration values and the function factories.
//
//   scalar  : C-locale integer or floating point literal, e.g.  8  -2.5e-3
//   vector  : "[e0 e1 ...]" with whitespace-separated entries, or a bare
//             scalar (length 1); "[]" is the empty vector
//   matrix  : "[r00 r01; r10 r11]" rows separated by ';', entries by
//             whitespace; without ';' a single row; a bare scalar is 1x1
//
// A requested size of 0 means "whatever the literal provides".  Literals
// with more entries than requested are truncated, literals with fewer
// raise SizeError.  For matrices the rule applies per dimension.

std::string trim(std::string_view text);

// Splits on whitespace that is not nested inside (), [] groups, so
// "[x[0] sin(x[1])]" stripped of its outer brackets yields two tokens.
std::vector<std::string> split_top_level(std::string_view text);

// Shortest decimal form that parses back to the same value.
std::string format_scalar(double value);
std::string format_scalar(long long value);

std::string format_vector(const std::vector<double>& values);
std::string format_matrix(const std::vector<std::vector<double>>& rows);

double parse_scalar(std::string_view text);
long long parse_integer(std::string_view text);

std::vector<double> parse_vector(std::string_view text, std::size_t size = 0);
std::vector<long long> parse_integer_vector(std::string_view text, std::size_t size = 0);

std::vector<std::vector<double>> parse_matrix(std::string_view text,
                                              std::size_t rows = 0,
                                              std::size_t cols = 0);


} // namespace xt::common
