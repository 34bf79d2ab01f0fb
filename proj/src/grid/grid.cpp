#include <xt/grid/grid.hpp>

#include <xt/common/exceptions.hpp>

#include <algorithm>

namespace xt::grid {

namespace {


// Collapse masks of one codimension, ascending numeric order.
std::vector<unsigned> masks_of_codim(int dim, int codim)
{
  std::vector<unsigned> masks;
  for (unsigned mask = 0; mask < (1u << dim); ++mask)
    if (std::popcount(mask) == codim)
      masks.push_back(mask);
  return masks;
}


} // namespace


void GridSpec::validate() const
{
  if (dim < 1 || dim > 3)
    throw ConfigError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  for (int i = 0; i < dim; ++i) {
    if (!(upper_right[i] > lower_left[i]))
      throw ConfigError("grid upper_right must exceed lower_left in every direction, got ["
                        + common::format_scalar(lower_left[i]) + ", "
                        + common::format_scalar(upper_right[i]) + "] in direction "
                        + std::to_string(i));
    if (num_elements[i] < 1)
      throw ConfigError("grid num_elements must be at least 1 in every direction, got "
                        + std::to_string(num_elements[i]) + " in direction " + std::to_string(i));
  }
  if (num_refinements < 0)
    throw ConfigError("grid num_refinements must not be negative, got "
                      + std::to_string(num_refinements));
}


GridView::GridView(std::shared_ptr<const GridSpec> spec, int level, unsigned periodic_mask)
  : spec_(std::move(spec))
  , level_(level)
  , periodic_mask_(periodic_mask & ((1u << spec_->dim) - 1u))
{
  for (int i = 0; i < dim(); ++i) {
    cells_[i] = spec_->num_elements[i] << level_;
    widths_[i] = (spec_->upper_right[i] - spec_->lower_left[i]) / static_cast<double>(cells_[i]);
  }
  if (periodic_mask_ != 0) {
    // Quotient tables: walk the plain enumeration once per codimension and
    // hand out dense indices to the canonical representatives.
    auto tables = std::make_shared<internal::PeriodicTables>();
    for (int codim = 1; codim <= dim(); ++codim) {
      auto& to_periodic = tables->plain_to_periodic[codim];
      auto& reps = tables->representative_plain[codim];
      const std::size_t count = plain_size(codim);
      to_periodic.assign(count, 0);
      for (std::size_t i = 0; i < count; ++i) {
        const Entity e = plain_entity(codim, i);
        const Entity canon = canonical(e);
        if (canon == e) {
          to_periodic[i] = reps.size();
          reps.push_back(i);
        } else {
          // canonicalization only lowers coordinates, so the representative
          // is already numbered
          to_periodic[i] = to_periodic[plain_index(canon)];
        }
      }
    }
    tables_ = std::move(tables);
  }
}

std::size_t GridView::size(int codim) const
{
  check_codim(codim);
  if (codim == 0 || periodic_mask_ == 0)
    return plain_size(codim);
  return tables_->representative_plain[codim].size();
}

std::size_t GridView::index(const Entity& entity) const
{
  check_entity(entity);
  const int codim = entity.codim();
  if (codim == 0 || periodic_mask_ == 0)
    return plain_index(entity);
  return tables_->plain_to_periodic[codim][plain_index(entity)];
}

Entity GridView::entity(int codim, std::size_t index) const
{
  check_codim(codim);
  if (codim == 0 || periodic_mask_ == 0)
    return plain_entity(codim, index);
  const auto& reps = tables_->representative_plain[codim];
  if (index >= reps.size())
    throw UsageError("entity index " + std::to_string(index) + " out of range for codim "
                     + std::to_string(codim) + " of size " + std::to_string(reps.size()));
  return plain_entity(codim, reps[index]);
}

std::vector<Entity> GridView::entities(int codim) const
{
  const std::size_t count = size(codim);
  std::vector<Entity> result;
  result.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    result.push_back(entity(codim, i));
  return result;
}

Entity GridView::canonical(const Entity& entity) const
{
  Entity result = entity;
  for (int i = 0; i < dim(); ++i)
    if (result.collapsed(i) && periodic(i) && result.coords[i] == cells_[i])
      result.coords[i] = 0;
  return result;
}

CellGeometry GridView::geometry(const Entity& cell) const
{
  check_entity(cell);
  if (cell.codim() != 0)
    throw UsageError("cell geometry requested for an entity of codim "
                     + std::to_string(cell.codim()));
  CellGeometry geometry;
  geometry.dim = dim();
  for (int i = 0; i < dim(); ++i) {
    geometry.offset[i] = spec_->lower_left[i] + static_cast<double>(cell.coords[i]) * widths_[i];
    geometry.widths[i] = widths_[i];
  }
  return geometry;
}

Point GridView::center(const Entity& entity) const
{
  check_entity(entity);
  Point result{0, 0, 0};
  for (int i = 0; i < dim(); ++i) {
    const double base = spec_->lower_left[i] + static_cast<double>(entity.coords[i]) * widths_[i];
    result[i] = entity.collapsed(i) ? base : base + 0.5 * widths_[i];
  }
  return result;
}

std::vector<Intersection> GridView::intersections(const Entity& cell) const
{
  check_entity(cell);
  if (cell.codim() != 0)
    throw UsageError("intersections requested for an entity of codim "
                     + std::to_string(cell.codim()));
  std::vector<Intersection> result;
  result.reserve(2 * static_cast<std::size_t>(dim()));
  for (int direction = 0; direction < dim(); ++direction) {
    result.push_back(make_intersection(cell, direction, false));
    result.push_back(make_intersection(cell, direction, true));
  }
  return result;
}

void GridView::check_codim(int codim) const
{
  if (codim < 0 || codim > dim())
    throw UsageError("codim " + std::to_string(codim) + " out of range on a " + std::to_string(dim())
                     + "d view");
}

void GridView::check_entity(const Entity& entity) const
{
  check_codim(entity.codim());
  if (entity.collapse_mask >= (1u << dim()))
    throw UsageError("entity collapse mask " + std::to_string(entity.collapse_mask)
                     + " out of range on a " + std::to_string(dim()) + "d view");
  for (int i = 0; i < dim(); ++i) {
    const std::int64_t limit = extent(i, entity.collapse_mask);
    if (entity.coords[i] < 0 || entity.coords[i] >= limit)
      throw UsageError("entity coordinate " + std::to_string(entity.coords[i]) + " in direction "
                       + std::to_string(i) + " out of range [0, " + std::to_string(limit) + ")");
  }
}

std::int64_t GridView::extent(int direction, unsigned mask) const
{
  return cells_[direction] + (((mask >> direction) & 1u) ? 1 : 0);
}

std::size_t GridView::plain_size(int codim) const
{
  std::size_t total = 0;
  for (unsigned mask : masks_of_codim(dim(), codim)) {
    std::size_t group = 1;
    for (int i = 0; i < dim(); ++i)
      group *= static_cast<std::size_t>(extent(i, mask));
    total += group;
  }
  return total;
}

std::size_t GridView::plain_index(const Entity& entity) const
{
  std::size_t offset = 0;
  for (unsigned mask : masks_of_codim(dim(), entity.codim())) {
    std::size_t group = 1;
    for (int i = 0; i < dim(); ++i)
      group *= static_cast<std::size_t>(extent(i, mask));
    if (mask == entity.collapse_mask) {
      std::size_t position = 0;
      std::size_t stride = 1;
      for (int i = 0; i < dim(); ++i) {
        position += static_cast<std::size_t>(entity.coords[i]) * stride;
        stride *= static_cast<std::size_t>(extent(i, mask));
      }
      return offset + position;
    }
    offset += group;
  }
  throw UsageError("entity collapse mask " + std::to_string(entity.collapse_mask)
                   + " not enumerable on a " + std::to_string(dim()) + "d view");
}

Entity GridView::plain_entity(int codim, std::size_t index) const
{
  const std::size_t total = plain_size(codim);
  if (index >= total)
    throw UsageError("entity index " + std::to_string(index) + " out of range for codim "
                     + std::to_string(codim) + " of size " + std::to_string(total));
  for (unsigned mask : masks_of_codim(dim(), codim)) {
    std::size_t group = 1;
    for (int i = 0; i < dim(); ++i)
      group *= static_cast<std::size_t>(extent(i, mask));
    if (index < group) {
      Entity entity{mask, {0, 0, 0}};
      std::size_t rest = index;
      for (int i = 0; i < dim(); ++i) {
        const auto m = static_cast<std::size_t>(extent(i, mask));
        entity.coords[i] = static_cast<std::int64_t>(rest % m);
        rest /= m;
      }
      return entity;
    }
    index -= group;
  }
  throw UsageError("corrupt entity enumeration"); // unreachable
}

Intersection GridView::make_intersection(const Entity& cell, int direction, bool high_side) const
{
  Intersection intersection;
  intersection.inside = cell;
  intersection.direction = direction;
  intersection.high_side = high_side;
  intersection.unit_outer_normal[direction] = high_side ? 1.0 : -1.0;

  const CellGeometry box = geometry(cell);
  intersection.center = box.center();
  intersection.center[direction] = box.offset[direction] + (high_side ? box.widths[direction] : 0.0);

  const std::int64_t step = high_side ? 1 : -1;
  const std::int64_t neighbor_coord = cell.coords[direction] + step;
  if (neighbor_coord >= 0 && neighbor_coord < cells_[direction]) {
    Entity outside = cell;
    outside.coords[direction] = neighbor_coord;
    intersection.outside = outside;
  } else if (periodic(direction)) {
    Entity outside = cell;
    outside.coords[direction] = (neighbor_coord + cells_[direction]) % cells_[direction];
    intersection.outside = outside;
    intersection.periodic = true;
  }
  return intersection;
}

GridView periodic_view(const GridView& base, const std::vector<bool>& periodic_directions)
{
  if (base.periodic_mask() != 0)
    throw UsageError("periodic views must be built from a plain view");
  if (periodic_directions.size() != static_cast<std::size_t>(base.dim()))
    throw UsageError("expected " + std::to_string(base.dim()) + " periodic flags, got "
                     + std::to_string(periodic_directions.size()));
  unsigned mask = 0;
  for (std::size_t i = 0; i < periodic_directions.size(); ++i)
    if (periodic_directions[i])
      mask |= 1u << i;
  // same spec and level; the quotient tables are set up in the constructor
  return GridView(base.spec_, base.level_, mask);
}


GridProvider::GridProvider(GridSpec spec)
{
  spec.validate();
  spec_ = std::make_shared<const GridSpec>(std::move(spec));
}

GridView GridProvider::level_view(int level) const
{
  if (level < 0 || level > max_level())
    throw UsageError("level " + std::to_string(level) + " out of range [0, "
                     + std::to_string(max_level()) + "]");
  return GridView(spec_, level, 0);
}

GridView GridProvider::layer(Layers layers, int level) const
{
  return layers == Layers::leaf ? leaf_view() : level_view(level);
}


common::Configuration cube_gridprovider_default_config()
{
  common::Configuration config;
  config.set("type", "xt.grid.gridprovider.cube");
  config.set("lower_left", "[0 0 0 0]");
  config.set("upper_right", "[1 1 1 1]");
  config.set("num_elements", "[8 8 8 8]");
  config.set("num_refinements", "0");
  config.set("overlap", "[1 1 1 1]");
  return config;
}

GridProvider make_cube_grid(const common::Configuration& config, int dim)
{
  if (dim < 1 || dim > 3)
    throw ConfigError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  GridSpec spec;
  spec.dim = dim;
  const auto lower = config.get_vector("lower_left", static_cast<std::size_t>(dim));
  const auto upper = config.get_vector("upper_right", static_cast<std::size_t>(dim));
  const auto elements = config.get_integer_vector("num_elements", static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    spec.lower_left[i] = lower[i];
    spec.upper_right[i] = upper[i];
    spec.num_elements[i] = elements[i];
  }
  spec.num_refinements = static_cast<int>(config.get<long long>("num_refinements", 0));
  return GridProvider(std::move(spec));
}

std::vector<std::string> GridProviderFactory::available()
{
  return {"xt.grid.gridprovider.cube"};
}

common::Configuration GridProviderFactory::default_config(const std::string& type_id)
{
  if (type_id == "xt.grid.gridprovider.cube")
    return cube_gridprovider_default_config();
  throw FactoryError("unknown grid provider '" + type_id
                     + "', available: 'xt.grid.gridprovider.cube'");
}

GridProvider GridProviderFactory::create(const std::string& type_id,
                                         const common::Configuration& config, int dim)
{
  if (type_id == "xt.grid.gridprovider.cube")
    return make_cube_grid(config, dim);
  throw FactoryError("unknown grid provider '" + type_id
                     + "', available: 'xt.grid.gridprovider.cube'");
}


} // namespace xt::grid
