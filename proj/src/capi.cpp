#include <xt/capi.h>

#include <xt/common/configuration.hpp>
#include <xt/common/exceptions.hpp>
#include <xt/common/timings.hpp>
#include <xt/functions/combined.hpp>
#include <xt/functions/dg_space.hpp>
#include <xt/functions/functions.hpp>
#include <xt/functions/projection.hpp>
#include <xt/functions/quadrature.hpp>
#include <xt/functions/visualization.hpp>
#include <xt/grid/grid.hpp>
#include <xt/grid/walker.hpp>
#include <xt/la/pattern.hpp>
#include <xt/la/solver.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

struct xt_config
{
  xt::common::Configuration tree;
};

struct xt_grid
{
  xt::grid::GridProvider provider;
};

struct xt_function
{
  xt::functions::FunctionPtr fn;
};

struct xt_projection
{
  xt::functions::DgSpace space;
  xt::la::DenseVector dofs;
  std::shared_ptr<const xt::functions::DiscreteFunction> discrete;
};

namespace {

thread_local std::string g_last_error;
thread_local int g_last_code = XT_OK;

void clear_error()
{
  g_last_error.clear();
  g_last_code = XT_OK;
}

// Maps the active exception onto an error code and remembers its message.
int record_error() noexcept
{
  try {
    throw;
  } catch (const xt::la::SolverError& e) {
    g_last_error = e.what();
    g_last_code = XT_ERR_NUMERICAL;
  } catch (const xt::functions::ProjectionError& e) {
    g_last_error = e.what();
    g_last_code = XT_ERR_NUMERICAL;
  } catch (const xt::IoError& e) {
    g_last_error = e.what();
    g_last_code = XT_ERR_IO;
  } catch (const xt::UsageError& e) {
    g_last_error = e.what();
    g_last_code = XT_ERR_USAGE;
  } catch (const xt::CapabilityError& e) {
    g_last_error = e.what();
    g_last_code = XT_ERR_USAGE;
  } catch (const xt::Exception& e) {
    // everything else our code throws concerns the provided configuration
    g_last_error = e.what();
    g_last_code = XT_ERR_CONFIG;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    g_last_code = XT_ERR_USAGE;
  } catch (...) {
    g_last_error = "unknown error";
    g_last_code = XT_ERR_USAGE;
  }
  return g_last_code;
}

template <class F>
int guarded(F&& f) noexcept
{
  try {
    f();
    clear_error();
    return XT_OK;
  } catch (...) {
    return record_error();
  }
}

template <class F>
auto guarded_ptr(F&& f) noexcept -> decltype(f())
{
  try {
    auto result = f();
    clear_error();
    return result;
  } catch (...) {
    record_error();
    return nullptr;
  }
}

char* copy_string(const std::string& text)
{
  char* result = static_cast<char*>(std::malloc(text.size() + 1));
  if (result == nullptr)
    throw std::bad_alloc();
  std::memcpy(result, text.c_str(), text.size() + 1);
  return result;
}

void require(bool condition, const char* what)
{
  if (!condition)
    throw xt::UsageError(what);
}

std::string text_of(const char* text)
{
  return text == nullptr ? std::string() : std::string(text);
}

xt::grid::GridView resolve_view(const xt_grid* grid, int level, unsigned periodic_mask)
{
  const int dim = grid->provider.dim();
  if (periodic_mask >> dim)
    throw xt::UsageError("periodic mask " + std::to_string(periodic_mask)
                         + " names directions beyond dimension " + std::to_string(dim));
  xt::grid::GridView view = grid->provider.level_view(level);
  if (periodic_mask != 0) {
    std::vector<bool> directions(static_cast<std::size_t>(dim), false);
    for (int i = 0; i < dim; ++i)
      directions[static_cast<std::size_t>(i)] = (periodic_mask >> i) & 1u;
    view = xt::grid::periodic_view(view, directions);
  }
  return view;
}


// Fills the DG mass matrix and load vector of one cell at a time; runs in
// the serial walk of xt_solve_mass.
class MassAssembly : public xt::grid::CellFunctor
{
public:
  MassAssembly(const xt::functions::DgSpace& space,
               const xt::functions::LocalizableFunction& f,
               xt::la::CsrMatrix& matrix,
               xt::la::DenseVector& rhs)
    : space_(space)
    , f_(f)
    , matrix_(matrix)
    , rhs_(rhs)
    , mass_quadrature_(xt::functions::quadrature_rule(space.dim(), 2 * space.order()))
    , rhs_quadrature_(xt::functions::quadrature_rule(space.dim(), 2 * space.order() + f.order()))
  {}

  void apply_local(const xt::grid::Entity& cell) override
  {
    const auto& view = space_.view();
    const std::size_t cell_index = view.index(cell);
    const double integration_element = view.geometry(cell).integration_element();
    const int n = space_.local_size();
    for (std::size_t q = 0; q < mass_quadrature_.size(); ++q) {
      const auto values = space_.basis_values(mass_quadrature_.points[q]);
      const double factor = integration_element * mass_quadrature_.weights[q];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          matrix_.add_to_entry(space_.global_dof(cell_index, i), space_.global_dof(cell_index, j),
                               factor * values[static_cast<std::size_t>(i)]
                                   * values[static_cast<std::size_t>(j)]);
    }
    const auto local_f = f_.local_function(view, cell);
    for (std::size_t q = 0; q < rhs_quadrature_.size(); ++q) {
      const auto values = space_.basis_values(rhs_quadrature_.points[q]);
      const double f_value = local_f->evaluate_one(rhs_quadrature_.points[q]).as_scalar();
      const double factor = integration_element * rhs_quadrature_.weights[q];
      for (int i = 0; i < n; ++i)
        rhs_.add_to_entry(space_.global_dof(cell_index, i),
                          factor * f_value * values[static_cast<std::size_t>(i)]);
    }
  }

private:
  const xt::functions::DgSpace& space_;
  const xt::functions::LocalizableFunction& f_;
  xt::la::CsrMatrix& matrix_;
  xt::la::DenseVector& rhs_;
  xt::functions::Quadrature mass_quadrature_;
  xt::functions::Quadrature rhs_quadrature_;
};


} // namespace


extern "C" {


const char* xt_last_error(void)
{
  return g_last_error.c_str();
}

int xt_last_code(void)
{
  return g_last_code;
}

void xt_string_free(char* text)
{
  std::free(text);
}


/* --- configuration trees ------------------------------------------- */

xt_config* xt_config_parse(const char* ini_text)
{
  return guarded_ptr([&]() -> xt_config* {
    require(ini_text != nullptr, "xt_config_parse: ini_text is null");
    return new xt_config{xt::common::Configuration::from_ini(ini_text)};
  });
}

xt_config* xt_config_read(const char* path)
{
  return guarded_ptr([&]() -> xt_config* {
    require(path != nullptr, "xt_config_read: path is null");
    return new xt_config{xt::common::Configuration::from_file(path)};
  });
}

int xt_config_set(xt_config* cfg, const char* key, const char* value)
{
  return guarded([&] {
    require(cfg != nullptr && key != nullptr && value != nullptr,
            "xt_config_set: null argument");
    cfg->tree.set(key, value);
  });
}

int xt_config_has(const xt_config* cfg, const char* key)
{
  if (cfg == nullptr || key == nullptr)
    return 0;
  return cfg->tree.has_key(key) ? 1 : 0;
}

char* xt_config_get(const xt_config* cfg, const char* key)
{
  return guarded_ptr([&]() -> char* {
    require(cfg != nullptr && key != nullptr, "xt_config_get: null argument");
    return copy_string(cfg->tree.get<std::string>(key));
  });
}

int xt_config_get_int(const xt_config* cfg, const char* key, long long* out)
{
  return guarded([&] {
    require(cfg != nullptr && key != nullptr && out != nullptr,
            "xt_config_get_int: null argument");
    *out = cfg->tree.get<long long>(key);
  });
}

int xt_config_get_bool(const xt_config* cfg, const char* key, int* out)
{
  return guarded([&] {
    require(cfg != nullptr && key != nullptr && out != nullptr,
            "xt_config_get_bool: null argument");
    *out = cfg->tree.get<bool>(key) ? 1 : 0;
  });
}

int xt_config_get_int_list(const xt_config* cfg, const char* key, long long* out, size_t capacity,
                           size_t* out_size)
{
  return guarded([&] {
    require(cfg != nullptr && key != nullptr && out_size != nullptr,
            "xt_config_get_int_list: null argument");
    const auto values = cfg->tree.get_integer_vector(key);
    *out_size = values.size();
    if (values.size() > capacity)
      throw xt::UsageError("xt_config_get_int_list: buffer of " + std::to_string(capacity)
                           + " cannot hold " + std::to_string(values.size()) + " entries");
    require(out != nullptr || values.empty(), "xt_config_get_int_list: null argument");
    std::copy(values.begin(), values.end(), out);
  });
}

xt_config* xt_config_sub(const xt_config* cfg, const char* prefix)
{
  return guarded_ptr([&]() -> xt_config* {
    require(cfg != nullptr && prefix != nullptr, "xt_config_sub: null argument");
    return new xt_config{cfg->tree.sub(prefix)};
  });
}

char* xt_config_report(const xt_config* cfg)
{
  return guarded_ptr([&]() -> char* {
    require(cfg != nullptr, "xt_config_report: null argument");
    return copy_string(cfg->tree.report());
  });
}

void xt_config_free(xt_config* cfg)
{
  delete cfg;
}


/* --- grids ----------------------------------------------------------- */

xt_grid* xt_grid_create(const xt_config* cfg, int dim)
{
  return guarded_ptr([&]() -> xt_grid* {
    require(cfg != nullptr, "xt_grid_create: cfg is null");
    const auto type = cfg->tree.get<std::string>("type");
    auto merged = xt::grid::GridProviderFactory::default_config(type);
    for (const auto& key : cfg->tree.keys())
      merged.set(key, cfg->tree.get<std::string>(key));
    return new xt_grid{xt::grid::GridProviderFactory::create(type, merged, dim)};
  });
}

void xt_grid_free(xt_grid* grid)
{
  delete grid;
}

int xt_grid_dim(const xt_grid* grid)
{
  return grid == nullptr ? 0 : grid->provider.dim();
}

int xt_grid_max_level(const xt_grid* grid)
{
  return grid == nullptr ? 0 : grid->provider.max_level();
}

int xt_grid_size(const xt_grid* grid, int level, unsigned periodic_mask, int codim, size_t* out)
{
  return guarded([&] {
    require(grid != nullptr && out != nullptr, "xt_grid_size: null argument");
    *out = resolve_view(grid, level, periodic_mask).size(codim);
  });
}


/* --- functions ------------------------------------------------------- */

xt_function* xt_function_create(const char* type_id, const xt_config* cfg, int dim)
{
  return guarded_ptr([&]() -> xt_function* {
    require(type_id != nullptr && cfg != nullptr, "xt_function_create: null argument");
    return new xt_function{xt::functions::FunctionsFactory::create(type_id, cfg->tree, dim)};
  });
}

void xt_function_free(xt_function* fn)
{
  delete fn;
}

char* xt_function_name(const xt_function* fn)
{
  return guarded_ptr([&]() -> char* {
    require(fn != nullptr, "xt_function_name: null argument");
    return copy_string(fn->fn->name());
  });
}

int xt_function_write_vtk(const xt_function* fn, const xt_grid* grid, int level,
                          unsigned periodic_mask, const char* name, const char* path)
{
  return guarded([&] {
    require(fn != nullptr && grid != nullptr && name != nullptr && path != nullptr,
            "xt_function_write_vtk: null argument");
    xt::functions::visualize(*fn->fn, resolve_view(grid, level, periodic_mask), name, path);
  });
}


/* --- L2 projection --------------------------------------------------- */

xt_projection* xt_project(const xt_grid* grid, int level, unsigned periodic_mask,
                          const xt_function* fn, int order, const char* solver_type)
{
  return guarded_ptr([&]() -> xt_projection* {
    require(grid != nullptr && fn != nullptr, "xt_project: null argument");
    xt::functions::DgSpace space(resolve_view(grid, level, periodic_mask), order);
    auto dofs = xt::functions::l2_projection(*fn->fn, space, text_of(solver_type));
    auto discrete =
        std::make_shared<const xt::functions::DiscreteFunction>(space, dofs, "projection");
    return new xt_projection{std::move(space), std::move(dofs), std::move(discrete)};
  });
}

void xt_projection_free(xt_projection* projection)
{
  delete projection;
}

int xt_projection_l2_error(const xt_projection* projection, const xt_function* reference,
                           int parallel, double* out)
{
  return guarded([&] {
    require(projection != nullptr && reference != nullptr && out != nullptr,
            "xt_projection_l2_error: null argument");
    const auto difference = xt::functions::make_difference(reference->fn, projection->discrete);
    *out = xt::functions::l2_norm(*difference, projection->space.view(), -1, parallel != 0);
  });
}

int xt_projection_write_vtk(const xt_projection* projection, const char* name, const char* path)
{
  return guarded([&] {
    require(projection != nullptr && name != nullptr && path != nullptr,
            "xt_projection_write_vtk: null argument");
    xt::functions::visualize(*projection->discrete, projection->space.view(), name, path);
  });
}

int xt_difference_write_vtk(const xt_function* fn, const xt_projection* projection,
                            const char* name, const char* path)
{
  return guarded([&] {
    require(fn != nullptr && projection != nullptr && name != nullptr && path != nullptr,
            "xt_difference_write_vtk: null argument");
    const auto difference = xt::functions::make_difference(fn->fn, projection->discrete);
    xt::functions::visualize(*difference, projection->space.view(), name, path);
  });
}


/* --- mass system solve ----------------------------------------------- */

int xt_solve_mass(const xt_grid* grid, int level, unsigned periodic_mask, const xt_function* fn,
                  int order, const char* solver_type, xt_solve_mass_report* out)
{
  return guarded([&] {
    require(grid != nullptr && fn != nullptr && out != nullptr, "xt_solve_mass: null argument");
    xt::functions::DgSpace space(resolve_view(grid, level, periodic_mask), order);

    // block-diagonal pattern: the dofs of a cell couple only with each other
    xt::la::SparsityPattern pattern(space.size(), space.size());
    const int n = space.local_size();
    for (std::size_t cell = 0; cell < space.view().num_cells(); ++cell)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          pattern.insert(space.global_dof(cell, i), space.global_dof(cell, j));

    xt::la::CsrMatrix matrix(pattern);
    xt::la::DenseVector rhs(space.size(), 0.0);
    MassAssembly assembly(space, *fn->fn, matrix, rhs);
    xt::grid::Walker walker(space.view());
    walker.add(assembly);
    walker.walk(false);

    xt::la::DenseVector solution(space.size(), 0.0);
    const std::string type =
        text_of(solver_type).empty() ? xt::la::Solver<xt::la::CsrMatrix>::types().front()
                                     : text_of(solver_type);
    const auto report = xt::la::Solver<xt::la::CsrMatrix>(matrix).apply(rhs, solution, type);

    std::snprintf(out->solver_type, sizeof(out->solver_type), "%s", report.type.c_str());
    out->iterations = static_cast<long long>(report.iterations);
    out->relative_residual = report.relative_residual;
    double minimum = solution.size() == 0 ? 0.0 : solution.get_entry(0);
    double maximum = minimum;
    for (std::size_t i = 1; i < solution.size(); ++i) {
      minimum = std::min(minimum, solution.get_entry(i));
      maximum = std::max(maximum, solution.get_entry(i));
    }
    out->solution_min = minimum;
    out->solution_max = maximum;
  });
}


/* --- timings ---------------------------------------------------------- */

int xt_timings_start(const char* section)
{
  return guarded([&] {
    require(section != nullptr, "xt_timings_start: null argument");
    xt::common::timings().start(section);
  });
}

int xt_timings_stop(const char* section)
{
  return guarded([&] {
    require(section != nullptr, "xt_timings_stop: null argument");
    xt::common::timings().stop(section);
  });
}

char* xt_timings_csv(void)
{
  return guarded_ptr([]() -> char* { return copy_string(xt::common::timings().csv()); });
}

void xt_timings_reset(void)
{
  xt::common::timings().reset();
}


} // extern "C"
