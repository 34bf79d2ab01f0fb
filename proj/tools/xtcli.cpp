// Command line frontend: reads one ini file and drives grid construction,
// L2 projection and mass-system solves through the library's C interface.
//
// Exit codes: 0 success, 1 usage, 2 configuration (including io), 3
// numerical failure.

#include <xt/capi.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {


// RAII wrappers over the C handles so error paths cannot leak.
using ConfigPtr = std::unique_ptr<xt_config, decltype(&xt_config_free)>;
using GridPtr = std::unique_ptr<xt_grid, decltype(&xt_grid_free)>;
using FunctionPtr = std::unique_ptr<xt_function, decltype(&xt_function_free)>;
using ProjectionPtr = std::unique_ptr<xt_projection, decltype(&xt_projection_free)>;

struct OwnedString
{
  explicit OwnedString(char* text)
    : text_(text)
  {}
  ~OwnedString() { xt_string_free(text_); }
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
  const char* get() const { return text_; }

private:
  char* text_;
};


// Thrown to unwind to main with a definite exit code.
struct Failure
{
  int exit_code;
  std::string message;
};

[[noreturn]] void fail_from_api()
{
  const int code = xt_last_code();
  throw Failure{code == XT_ERR_IO ? 2 : code, xt_last_error()};
}

void check(int return_code)
{
  if (return_code != XT_OK)
    fail_from_api();
}

template <class T>
T* check_ptr(T* pointer)
{
  if (pointer == nullptr)
    fail_from_api();
  return pointer;
}


struct CommonOptions
{
  std::string config_path;
  std::string output_dir = ".";
  bool parallel = false;
  std::vector<std::string> overrides;
};

void add_common_options(CLI::App& command, CommonOptions& options)
{
  command.add_option("--config", options.config_path, "ini file driving the run")->required();
  command.add_option("--set", options.overrides,
                     "override a key after loading, as key=value (repeatable)");
}

ConfigPtr load_config(const CommonOptions& options)
{
  ConfigPtr cfg(check_ptr(xt_config_read(options.config_path.c_str())), xt_config_free);
  for (const auto& item : options.overrides) {
    const auto separator = item.find('=');
    if (separator == std::string::npos || separator == 0)
      throw Failure{1, "--set expects key=value, got '" + item + "'"};
    check(xt_config_set(cfg.get(), item.substr(0, separator).c_str(),
                        item.substr(separator + 1).c_str()));
  }
  return cfg;
}

long long get_int(const xt_config* cfg, const std::string& key)
{
  long long value = 0;
  check(xt_config_get_int(cfg, key.c_str(), &value));
  return value;
}

std::string get_string(const xt_config* cfg, const std::string& key)
{
  OwnedString value(check_ptr(xt_config_get(cfg, key.c_str())));
  return value.get();
}

// grid.periodic, when present, is a per-direction 0/1 list.
unsigned read_periodic_mask(const xt_config* cfg, int dim)
{
  if (!xt_config_has(cfg, "grid.periodic"))
    return 0;
  std::vector<long long> flags(static_cast<size_t>(dim), 0);
  size_t count = 0;
  check(xt_config_get_int_list(cfg, "grid.periodic", flags.data(), flags.size(), &count));
  unsigned mask = 0;
  for (size_t i = 0; i < count; ++i)
    if (flags[i] != 0)
      mask |= 1u << i;
  return mask;
}

struct GridSetup
{
  ConfigPtr cfg;
  GridPtr grid;
  int dim = 0;
  unsigned periodic_mask = 0;
};

GridSetup make_grid(const CommonOptions& options)
{
  GridSetup setup{load_config(options), GridPtr(nullptr, xt_grid_free)};
  setup.dim = static_cast<int>(get_int(setup.cfg.get(), "grid.dim"));
  ConfigPtr grid_cfg(check_ptr(xt_config_sub(setup.cfg.get(), "grid")), xt_config_free);
  setup.grid.reset(check_ptr(xt_grid_create(grid_cfg.get(), setup.dim)));
  setup.periodic_mask = read_periodic_mask(setup.cfg.get(), setup.dim);
  return setup;
}

FunctionPtr make_function(const GridSetup& setup)
{
  const std::string type = get_string(setup.cfg.get(), "function.type");
  ConfigPtr fn_cfg(check_ptr(xt_config_sub(setup.cfg.get(), "function")), xt_config_free);
  return FunctionPtr(check_ptr(xt_function_create(type.c_str(), fn_cfg.get(), setup.dim)),
                     xt_function_free);
}

const char* entity_label(int codim, int dim)
{
  if (codim == 0)
    return "cells";
  if (codim == dim)
    return "vertices";
  if (codim == 1)
    return "faces";
  return "edges";
}

void write_text_file(const std::string& path, const char* content)
{
  std::ofstream out(path);
  out << content;
  out.flush();
  if (!out)
    throw Failure{2, "cannot write '" + path + "'"};
}


int run_grid_info(const CommonOptions& options)
{
  const GridSetup setup = make_grid(options);
  const bool periodic_given = xt_config_has(setup.cfg.get(), "grid.periodic") != 0;

  std::cout << "dimension: " << setup.dim << "\n";
  for (int level = 0; level <= xt_grid_max_level(setup.grid.get()); ++level) {
    std::cout << "level " << level << ":\n";
    for (int codim = 0; codim <= setup.dim; ++codim) {
      size_t count = 0;
      check(xt_grid_size(setup.grid.get(), level, 0, codim, &count));
      std::cout << "  " << entity_label(codim, setup.dim) << ": " << count << "\n";
    }
    if (periodic_given) {
      for (int codim = 0; codim <= setup.dim; ++codim) {
        size_t count = 0;
        check(xt_grid_size(setup.grid.get(), level, setup.periodic_mask, codim, &count));
        std::cout << "  " << entity_label(codim, setup.dim) << " (periodic): " << count << "\n";
      }
    }
  }
  return 0;
}

int run_project(const CommonOptions& options)
{
  const GridSetup setup = make_grid(options);
  const FunctionPtr fn = make_function(setup);
  const int order = static_cast<int>(get_int(setup.cfg.get(), "space.order"));
  const std::string solver_type = xt_config_has(setup.cfg.get(), "solver.type")
                                      ? get_string(setup.cfg.get(), "solver.type")
                                      : std::string();
  const int level = xt_grid_max_level(setup.grid.get());

  check(xt_timings_start("project"));
  ProjectionPtr projection(
      check_ptr(xt_project(setup.grid.get(), level, setup.periodic_mask, fn.get(), order,
                           solver_type.empty() ? nullptr : solver_type.c_str())),
      xt_projection_free);
  check(xt_timings_stop("project"));

  double error = 0.0;
  check(xt_projection_l2_error(projection.get(), fn.get(), options.parallel ? 1 : 0, &error));

  size_t num_cells = 0;
  check(xt_grid_size(setup.grid.get(), level, setup.periodic_mask, 0, &num_cells));
  {
    OwnedString name(check_ptr(xt_function_name(fn.get())));
    std::cout << "projected '" << name.get() << "' onto a dg space of order " << order << " with "
              << num_cells << " cells\n";
  }
  std::printf("l2 error: %.12e\n", error);

  bool visualize = false;
  if (xt_config_has(setup.cfg.get(), "visualize.enabled")) {
    int flag = 0;
    check(xt_config_get_bool(setup.cfg.get(), "visualize.enabled", &flag));
    visualize = flag != 0;
  }
  if (visualize) {
    const std::string source_path = options.output_dir + "/source.vtk";
    const std::string projection_path = options.output_dir + "/projection.vtk";
    const std::string difference_path = options.output_dir + "/difference.vtk";
    check(xt_function_write_vtk(fn.get(), setup.grid.get(), level, setup.periodic_mask, "source",
                                source_path.c_str()));
    check(xt_projection_write_vtk(projection.get(), "projection", projection_path.c_str()));
    check(xt_difference_write_vtk(fn.get(), projection.get(), "difference",
                                  difference_path.c_str()));
    std::cout << "wrote " << source_path << ", " << projection_path << ", " << difference_path
              << "\n";
  }

  const std::string csv_path = options.output_dir + "/timings.csv";
  {
    OwnedString csv(check_ptr(xt_timings_csv()));
    write_text_file(csv_path, csv.get());
  }
  std::cout << "wrote " << csv_path << "\n";
  return 0;
}

int run_solve_mass(const CommonOptions& options)
{
  const GridSetup setup = make_grid(options);
  const FunctionPtr fn = make_function(setup);
  const int order = static_cast<int>(get_int(setup.cfg.get(), "space.order"));
  const std::string solver_type = xt_config_has(setup.cfg.get(), "solver.type")
                                      ? get_string(setup.cfg.get(), "solver.type")
                                      : std::string();
  const int level = xt_grid_max_level(setup.grid.get());

  xt_solve_mass_report report{};
  check(xt_solve_mass(setup.grid.get(), level, setup.periodic_mask, fn.get(), order,
                      solver_type.empty() ? nullptr : solver_type.c_str(), &report));

  std::cout << "solver: " << report.solver_type << "\n";
  std::cout << "iterations: " << report.iterations << "\n";
  std::printf("relative residual: %.6e\n", report.relative_residual);
  std::printf("solution min: %.12g\n", report.solution_min);
  std::printf("solution max: %.12g\n", report.solution_max);
  return 0;
}


} // namespace


int main(int argc, char** argv)
{
  CLI::App app{"numerical pde toolkit frontend"};
  app.require_subcommand(1);

  CommonOptions grid_info_options;
  CLI::App* grid_info = app.add_subcommand("grid-info", "report entity counts per level");
  add_common_options(*grid_info, grid_info_options);

  CommonOptions project_options;
  CLI::App* project = app.add_subcommand("project", "L2-project a function onto a dg space");
  add_common_options(*project, project_options);
  project->add_option("--output-dir", project_options.output_dir,
                      "directory for vtk files and timings.csv");
  project->add_flag("--parallel", project_options.parallel, "use a parallel walk for the norm");

  CommonOptions solve_options;
  CLI::App* solve_mass = app.add_subcommand("solve-mass", "assemble and solve the mass system");
  add_common_options(*solve_mass, solve_options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (grid_info->parsed())
      return run_grid_info(grid_info_options);
    if (project->parsed())
      return run_project(project_options);
    if (solve_mass->parsed())
      return run_solve_mass(solve_options);
    std::cerr << "error: no command given\n";
    return 1;
  } catch (const Failure& failure) {
    std::cerr << "error: " << failure.message << "\n";
    return failure.exit_code == 0 ? 1 : failure.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
