#include <xt/grid/walker.hpp>

#include <xt/common/exceptions.hpp>

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace xt::grid {


WalkFilter WalkFilter::dirichlet_intersections(std::shared_ptr<const BoundaryInfo> info)
{
  if (!info)
    throw UsageError("boundary-condition filters need a boundary info");
  return WalkFilter(Kind::dirichlet_intersections, std::move(info));
}

WalkFilter WalkFilter::neumann_intersections(std::shared_ptr<const BoundaryInfo> info)
{
  if (!info)
    throw UsageError("boundary-condition filters need a boundary info");
  return WalkFilter(Kind::neumann_intersections, std::move(info));
}

bool WalkFilter::contains(const GridView& view, const Intersection& intersection) const
{
  switch (kind_) {
    case Kind::all_intersections:
      return true;
    case Kind::inner_intersections:
      return intersection.neighbor();
    case Kind::inner_intersections_primally:
      if (intersection.periodic)
        return intersection.high_side;
      return intersection.neighbor()
             && view.index(intersection.inside) < view.index(*intersection.outside);
    case Kind::boundary_intersections:
      return intersection.boundary();
    case Kind::dirichlet_intersections:
      return intersection.boundary() && info_->type(intersection) == BoundaryType::dirichlet();
    case Kind::neumann_intersections:
      return intersection.boundary() && info_->type(intersection) == BoundaryType::neumann();
    case Kind::all_entities:
    default:
      return false;
  }
}


Walker::Walker(GridView view)
  : view_(std::move(view))
{}

Walker& Walker::add(CellFunctor& functor, WalkFilter filter)
{
  if (!filter.for_cells())
    throw UsageError("cell functors only accept the all_entities filter");
  cell_functors_.emplace_back(&functor, filter);
  return *this;
}

Walker& Walker::add(IntersectionFunctor& functor, WalkFilter filter)
{
  if (filter.for_cells())
    throw UsageError("intersection functors need an intersection filter");
  intersection_functors_.emplace_back(&functor, filter);
  return *this;
}

void Walker::process_cell(std::size_t cell_index)
{
  const Entity cell = view_.cell(cell_index);
  for (auto& [functor, filter] : cell_functors_)
    functor->apply_local(cell);
  if (intersection_functors_.empty())
    return;
  for (const auto& intersection : view_.intersections(cell)) {
    const Entity& outside = intersection.outside ? *intersection.outside : intersection.inside;
    for (auto& [functor, filter] : intersection_functors_)
      if (filter.contains(view_, intersection))
        functor->apply_local(intersection, intersection.inside, outside);
  }
}

void Walker::walk(bool parallel, unsigned num_threads)
{
  for (auto& [functor, filter] : cell_functors_)
    functor->prepare();
  for (auto& [functor, filter] : intersection_functors_)
    functor->prepare();

  const std::size_t count = view_.num_cells();
  unsigned threads = num_threads ? num_threads : std::max(1u, std::thread::hardware_concurrency());
  if (!parallel)
    threads = 1;

  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      process_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      while (!abort.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count)
          return;
        try {
          process_cell(i);
        } catch (...) {
          {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error)
              error = std::current_exception();
          }
          abort.store(true, std::memory_order_relaxed);
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto& thread : pool)
      thread.join();
    if (error)
      std::rethrow_exception(error);
  }

  for (auto& [functor, filter] : cell_functors_)
    functor->finalize();
  for (auto& [functor, filter] : intersection_functors_)
    functor->finalize();
}


} // namespace xt::grid
