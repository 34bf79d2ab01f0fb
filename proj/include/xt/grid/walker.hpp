#pragma once

#include <xt/grid/boundaryinfo.hpp>
#include <xt/grid/grid.hpp>

#include <memory>
#include <utility>
#include <vector>

namespace xt::grid {


// Observers the walker drives over a view.  prepare/finalize run once on
// the calling thread; apply_local may run concurrently during parallel
// walks and must be reentrant.
class CellFunctor
{
public:
  virtual ~CellFunctor() = default;
  virtual void prepare() {}
  virtual void apply_local(const Entity& cell) = 0;
  virtual void finalize() {}
};

// For boundary intersections (no neighbor) outside is the inside cell.
class IntersectionFunctor
{
public:
  virtual ~IntersectionFunctor() = default;
  virtual void prepare() {}
  virtual void apply_local(const Intersection& intersection, const Entity& inside,
                           const Entity& outside) = 0;
  virtual void finalize() {}
};

// Selects which items a functor sees.  "Primally" visits each interior face
// exactly once: from the side with the smaller cell index, and for periodic
// wrap faces from the high-coordinate side.
class WalkFilter
{
public:
  enum class Kind
  {
    all_entities,
    all_intersections,
    inner_intersections,
    inner_intersections_primally,
    boundary_intersections,
    dirichlet_intersections,
    neumann_intersections
  };

  static WalkFilter all_entities() { return WalkFilter(Kind::all_entities, nullptr); }
  static WalkFilter all_intersections() { return WalkFilter(Kind::all_intersections, nullptr); }
  static WalkFilter inner_intersections() { return WalkFilter(Kind::inner_intersections, nullptr); }
  static WalkFilter inner_intersections_primally()
  {
    return WalkFilter(Kind::inner_intersections_primally, nullptr);
  }
  static WalkFilter boundary_intersections()
  {
    return WalkFilter(Kind::boundary_intersections, nullptr);
  }
  static WalkFilter dirichlet_intersections(std::shared_ptr<const BoundaryInfo> info);
  static WalkFilter neumann_intersections(std::shared_ptr<const BoundaryInfo> info);

  Kind kind() const { return kind_; }
  bool for_cells() const { return kind_ == Kind::all_entities; }
  bool contains(const GridView& view, const Intersection& intersection) const;

private:
  WalkFilter(Kind kind, std::shared_ptr<const BoundaryInfo> info)
    : kind_(kind)
    , info_(std::move(info))
  {}

  Kind kind_;
  std::shared_ptr<const BoundaryInfo> info_;
};


// Registers functors with filters, then drives them over the view's cells
// and their intersections in one pass.  The walker does not own the
// functors; they must outlive the walk.
class Walker
{
public:
  explicit Walker(GridView view);

  Walker& add(CellFunctor& functor, WalkFilter filter = WalkFilter::all_entities());
  Walker& add(IntersectionFunctor& functor, WalkFilter filter = WalkFilter::all_intersections());

  // A functor exception aborts the walk (workers are drained first) and is
  // rethrown; finalize only runs after a clean pass.
  void walk(bool parallel = false, unsigned num_threads = 0);

  const GridView& view() const { return view_; }

private:
  void process_cell(std::size_t cell_index);

  GridView view_;
  std::vector<std::pair<CellFunctor*, WalkFilter>> cell_functors_;
  std::vector<std::pair<IntersectionFunctor*, WalkFilter>> intersection_functors_;
};


} // namespace xt::grid
