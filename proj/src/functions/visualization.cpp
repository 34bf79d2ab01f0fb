#include <xt/functions/visualization.hpp>

#include <xt/common/exceptions.hpp>
#include <xt/common/string.hpp>

#include <fstream>

namespace xt::functions {


void visualize(const LocalizableFunction& f,
               const grid::GridView& view,
               const std::string& name,
               const std::string& path)
{
  if (f.dim_range() != 1 || f.dim_range_cols() != 1)
    throw UsageError("only scalar functions can be visualized");
  if (f.dim_domain() != view.dim())
    throw UsageError("the function and the view disagree about the domain dimension");

  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");

  out << "# vtk DataFile Version 3.0\n";
  out << name << "\n";
  out << "ASCII\n";
  out << "DATASET RECTILINEAR_GRID\n";

  const int dim = view.dim();
  out << "DIMENSIONS";
  for (int axis = 0; axis < 3; ++axis)
    out << " " << (axis < dim ? view.cells_per_direction(axis) + 1 : 1);
  out << "\n";

  const char* axis_names[3] = {"X_COORDINATES", "Y_COORDINATES", "Z_COORDINATES"};
  for (int axis = 0; axis < 3; ++axis) {
    if (axis < dim) {
      const auto cells = view.cells_per_direction(axis);
      out << axis_names[axis] << " " << cells + 1 << " double\n";
      for (std::int64_t j = 0; j <= cells; ++j) {
        // endpoint-exact: the last vertex is upper(), not lower() + n*width
        const double fraction = static_cast<double>(j) / static_cast<double>(cells);
        const double coordinate =
            view.lower()[axis] + fraction * (view.upper()[axis] - view.lower()[axis]);
        out << (j == 0 ? "" : " ") << common::format_scalar(coordinate);
      }
      out << "\n";
    } else {
      out << axis_names[axis] << " 1 double\n";
      out << "0\n";
    }
  }

  const std::size_t num_cells = view.num_cells();
  out << "CELL_DATA " << num_cells << "\n";
  out << "SCALARS " << name << " double 1\n";
  out << "LOOKUP_TABLE default\n";
  const grid::Point reference_center{0.5, 0.5, 0.5};
  for (std::size_t index = 0; index < num_cells; ++index) {
    const auto local_f = f.local_function(view, view.cell(index));
    out << common::format_scalar(local_f->evaluate_one(reference_center).as_scalar()) << "\n";
  }

  out.flush();
  if (!out)
    throw IoError("writing '" + path + "' failed");
}


} // namespace xt::functions
