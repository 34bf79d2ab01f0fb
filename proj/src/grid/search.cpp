#include <xt/grid/search.hpp>

namespace xt::grid {


EntityInlevelSearch::EntityInlevelSearch(GridView view)
  : view_(std::move(view))
{}

std::optional<Entity> EntityInlevelSearch::find_one(const Point& point)
{
  for (int i = 0; i < view_.dim(); ++i)
    if (point[i] < view_.lower()[i] || point[i] > view_.upper()[i])
      return std::nullopt;
  // Walk the cursor one neighbor at a time; each step strictly reduces the
  // distance to the target cell, so nearby queries amortize to O(1).
  Coords cell = cursor_;
  for (int i = 0; i < view_.dim(); ++i) {
    const double lower = view_.lower()[i];
    const double width = view_.width(i);
    const std::int64_t count = view_.cells_per_direction(i);
    while (cell[i] > 0 && point[i] < lower + static_cast<double>(cell[i]) * width)
      --cell[i];
    while (cell[i] + 1 < count && point[i] >= lower + static_cast<double>(cell[i] + 1) * width)
      ++cell[i];
  }
  cursor_ = cell;
  if (!contains(cell, point))
    return std::nullopt;
  return Entity{0, cell};
}

std::vector<std::optional<Entity>> EntityInlevelSearch::find(const std::vector<Point>& points)
{
  std::vector<std::optional<Entity>> result;
  result.reserve(points.size());
  for (const auto& point : points)
    result.push_back(find_one(point));
  return result;
}

bool EntityInlevelSearch::contains(const Coords& cell, const Point& point) const
{
  for (int i = 0; i < view_.dim(); ++i) {
    const double low = view_.lower()[i] + static_cast<double>(cell[i]) * view_.width(i);
    const double high = view_.lower()[i] + static_cast<double>(cell[i] + 1) * view_.width(i);
    const bool last = cell[i] + 1 == view_.cells_per_direction(i);
    // half-open from below, the last cell also owns the upper face
    if (point[i] < low || (last ? point[i] > view_.upper()[i] : point[i] >= high))
      return false;
  }
  return true;
}


} // namespace xt::grid
