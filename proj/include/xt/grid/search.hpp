#pragma once

#include <xt/grid/grid.hpp>

#include <optional>
#include <vector>

namespace xt::grid {


// Locates the cells containing given global points on one view.  Cells own
// their box half-open in every direction, except that the last cell of a
// direction also owns the domain boundary.  The search walks from the cell
// the previous query ended on, so runs of nearby points cost O(1) each.
class EntityInlevelSearch
{
public:
  explicit EntityInlevelSearch(GridView view);

  std::optional<Entity> find_one(const Point& point);
  std::vector<std::optional<Entity>> find(const std::vector<Point>& points);

private:
  bool contains(const Coords& cell, const Point& point) const;

  GridView view_;
  Coords cursor_{0, 0, 0};
};


} // namespace xt::grid
