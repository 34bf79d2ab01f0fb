#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace xt::common {
namespace float_cmp {


enum class Style
{
  absolute,
  relative_weak,
  relative_strong,
  numpy
};

// Default tolerances depend on the style: the numpy style mirrors the
// documented numpy.isclose defaults, the others scale machine epsilon.
struct Compare
{
  Style style = Style::numpy;
  double eps_abs = 1e-8;
  double eps_rel = 1e-5;

  static Compare make(Style s)
  {
    constexpr double eps8 = 8.0 * std::numeric_limits<double>::epsilon();
    switch (s) {
      case Style::absolute:
        return {s, eps8, 0.0};
      case Style::relative_weak:
      case Style::relative_strong:
        return {s, 0.0, eps8};
      case Style::numpy:
      default:
        return {s, 1e-8, 1e-5};
    }
  }
};


inline bool eq(double a, double b, const Compare& cmp = {})
{
  if (std::isnan(a) || std::isnan(b))
    return false;
  const double diff = std::abs(a - b);
  switch (cmp.style) {
    case Style::absolute:
      return diff <= cmp.eps_abs;
    case Style::relative_weak:
      return diff <= cmp.eps_rel * std::max(std::abs(a), std::abs(b));
    case Style::relative_strong:
      return diff <= cmp.eps_rel * std::min(std::abs(a), std::abs(b));
    case Style::numpy:
    default:
      // Asymmetric on purpose: b is the reference value.
      return diff <= cmp.eps_abs + cmp.eps_rel * std::abs(b);
  }
}

inline bool ne(double a, double b, const Compare& cmp = {})
{
  return !eq(a, b, cmp);
}

inline bool gt(double a, double b, const Compare& cmp = {})
{
  return a > b && !eq(a, b, cmp);
}

inline bool lt(double a, double b, const Compare& cmp = {})
{
  return a < b && !eq(a, b, cmp);
}

inline bool ge(double a, double b, const Compare& cmp = {})
{
  return a > b || eq(a, b, cmp);
}

inline bool le(double a, double b, const Compare& cmp = {})
{
  return a < b || eq(a, b, cmp);
}

// Vectors compare equal iff the lengths match and every pair does.
inline bool eq(const std::vector<double>& a, const std::vector<double>& b, const Compare& cmp = {})
{
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i], cmp))
      return false;
  return true;
}

inline bool ne(const std::vector<double>& a, const std::vector<double>& b, const Compare& cmp = {})
{
  return !eq(a, b, cmp);
}


} // namespace float_cmp
} // namespace xt::common
