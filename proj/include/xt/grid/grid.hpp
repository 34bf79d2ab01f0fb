#pragma once

#include <xt/common/configuration.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace xt::grid {


// Fixed-capacity coordinate tuples; entries past the view's dimension are 0.
using Coords = std::array<std::int64_t, 3>;
using Point = std::array<double, 3>;

// An entity of any codimension: the set of directions in which the cell box
// is collapsed to a face plane (as a bitmask) plus integer coordinates.
// Cells have an empty mask, vertices collapse every direction.  Along a
// collapsed direction the coordinate ranges 0..N, otherwise 0..N-1.
struct Entity
{
  unsigned collapse_mask = 0;
  Coords coords{0, 0, 0};

  int codim() const { return std::popcount(collapse_mask); }
  bool collapsed(int direction) const { return (collapse_mask >> direction) & 1u; }

  bool operator==(const Entity&) const = default;
};

// Axis-parallel box of one cell: x = offset + diag(widths) * x_hat.
struct CellGeometry
{
  int dim = 1;
  Point offset{0, 0, 0};
  Point widths{1, 1, 1};

  Point to_global(const Point& ref) const
  {
    Point global{0, 0, 0};
    for (int i = 0; i < dim; ++i)
      global[i] = offset[i] + widths[i] * ref[i];
    return global;
  }

  Point to_local(const Point& global) const
  {
    Point ref{0, 0, 0};
    for (int i = 0; i < dim; ++i)
      ref[i] = (global[i] - offset[i]) / widths[i];
    return ref;
  }

  Point center() const
  {
    Point c{0, 0, 0};
    for (int i = 0; i < dim; ++i)
      c[i] = offset[i] + 0.5 * widths[i];
    return c;
  }

  // Jacobian determinant of the affine reference map.
  double integration_element() const
  {
    double volume = 1.0;
    for (int i = 0; i < dim; ++i)
      volume *= widths[i];
    return volume;
  }
};

// One side of one cell.  For periodic directions the face on the domain
// boundary wraps around: it has a neighbor but does not count as boundary.
struct Intersection
{
  Entity inside;
  int direction = 0;
  bool high_side = false;
  std::optional<Entity> outside{};
  bool periodic = false;
  Point unit_outer_normal{0, 0, 0};
  Point center{0, 0, 0};

  bool neighbor() const { return outside.has_value(); }
  bool boundary() const { return !outside.has_value(); }
};

// Geometry and resolution of the level-0 tensor grid.
struct GridSpec
{
  int dim = 1;
  Point lower_left{0, 0, 0};
  Point upper_right{1, 1, 1};
  Coords num_elements{1, 1, 1};
  int num_refinements = 0;

  void validate() const;
};


namespace internal {

// Quotient tables of one periodic view, per codimension.
struct PeriodicTables
{
  std::array<std::vector<std::size_t>, 4> plain_to_periodic;
  std::array<std::vector<std::size_t>, 4> representative_plain;
};

} // namespace internal


// A view of one refinement level.  Entities are enumerated grouped by
// collapse mask (masks of equal popcount in ascending numeric order) and
// lexicographically within a group, direction 0 running fastest.  Periodic
// views identify wrap entities and renumber the representatives densely.
class GridView
{
public:
  GridView(std::shared_ptr<const GridSpec> spec, int level, unsigned periodic_mask);

  int dim() const { return spec_->dim; }
  int level() const { return level_; }
  unsigned periodic_mask() const { return periodic_mask_; }
  bool periodic(int direction) const { return (periodic_mask_ >> direction) & 1u; }

  const Point& lower() const { return spec_->lower_left; }
  const Point& upper() const { return spec_->upper_right; }
  std::int64_t cells_per_direction(int direction) const { return cells_[direction]; }
  double width(int direction) const { return widths_[direction]; }

  std::size_t size(int codim) const;
  std::size_t index(const Entity& entity) const;
  Entity entity(int codim, std::size_t index) const;
  std::vector<Entity> entities(int codim) const;

  std::size_t num_cells() const { return size(0); }
  Entity cell(std::size_t index) const { return entity(0, index); }

  Entity canonical(const Entity& entity) const;

  CellGeometry geometry(const Entity& cell) const;
  Point center(const Entity& entity) const;
  std::vector<Intersection> intersections(const Entity& cell) const;

private:
  friend GridView periodic_view(const GridView& base, const std::vector<bool>& periodic_directions);

  void check_codim(int codim) const;
  void check_entity(const Entity& entity) const;
  std::int64_t extent(int direction, unsigned mask) const;
  std::size_t plain_size(int codim) const;
  std::size_t plain_index(const Entity& entity) const;
  Entity plain_entity(int codim, std::size_t index) const;
  Intersection make_intersection(const Entity& cell, int direction, bool high_side) const;

  std::shared_ptr<const GridSpec> spec_;
  int level_;
  unsigned periodic_mask_;
  Coords cells_{1, 1, 1};
  Point widths_{1, 1, 1};
  std::shared_ptr<const internal::PeriodicTables> tables_;
};

// Wraps a plain view; the mask selects the directions to identify.
GridView periodic_view(const GridView& base, const std::vector<bool>& periodic_directions);


enum class Layers
{
  leaf,
  level
};

// Owns the spec and hands out level views; level l refines every direction
// of level 0 uniformly l times (each refinement doubles the resolution).
class GridProvider
{
public:
  explicit GridProvider(GridSpec spec);

  int dim() const { return spec_->dim; }
  int max_level() const { return spec_->num_refinements; }
  const GridSpec& spec() const { return *spec_; }

  GridView level_view(int level) const;
  GridView leaf_view() const { return level_view(max_level()); }
  GridView layer(Layers layers, int level = 0) const;

private:
  std::shared_ptr<const GridSpec> spec_;
};


// The tree the cube factory fills in when keys are missing has four entries
// per geometric key so any dim up to 3 can truncate it; "overlap" is
// accepted for interface compatibility and ignored.
common::Configuration cube_gridprovider_default_config();

GridProvider make_cube_grid(const common::Configuration& config, int dim);

struct GridProviderFactory
{
  static std::vector<std::string> available();
  static common::Configuration default_config(const std::string& type_id);
  static GridProvider create(const std::string& type_id, const common::Configuration& config,
                             int dim);
};


} // namespace xt::grid
