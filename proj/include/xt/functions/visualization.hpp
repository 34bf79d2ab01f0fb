#pragma once

#include <xt/functions/interfaces.hpp>
#include <xt/grid/grid.hpp>

#include <string>

namespace xt::functions {


// Writes a scalar function sampled at the view's cell centers as a legacy
// VTK ASCII rectilinear grid, one value per cell in enumeration order.
// `name` becomes both the dataset title and the data array name.
void visualize(const LocalizableFunction& f,
               const grid::GridView& view,
               const std::string& name,
               const std::string& path);


} // namespace xt::functions
