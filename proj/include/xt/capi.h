#ifndef XT_CAPI_H
#define XT_CAPI_H

/* C interface of the xt toolkit.  Every object is an opaque handle that
 * must be released with the matching _free function; every returned char*
 * is heap allocated and released with xt_string_free.  Functions returning
 * int yield XT_OK or an error code; functions returning pointers yield NULL
 * on failure.  In both cases xt_last_error()/xt_last_code() describe the
 * failure of the calling thread's most recent call. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define XT_OK 0
#define XT_ERR_USAGE 1     /* interface misuse, missing capability */
#define XT_ERR_CONFIG 2    /* unparsable or inconsistent configuration */
#define XT_ERR_NUMERICAL 3 /* a solver or projection failed */
#define XT_ERR_IO 4        /* a file could not be read or written */

typedef struct xt_config xt_config;
typedef struct xt_grid xt_grid;
typedef struct xt_function xt_function;
typedef struct xt_projection xt_projection;

/* Message and code of the calling thread's most recent failed call; the
 * message stays valid until the next call on the same thread. */
const char* xt_last_error(void);
int xt_last_code(void);

void xt_string_free(char* text);

/* --- configuration trees ------------------------------------------- */

xt_config* xt_config_parse(const char* ini_text);
xt_config* xt_config_read(const char* path);
int xt_config_set(xt_config* cfg, const char* key, const char* value);
int xt_config_has(const xt_config* cfg, const char* key);
char* xt_config_get(const xt_config* cfg, const char* key);
int xt_config_get_int(const xt_config* cfg, const char* key, long long* out);
/* Accepts "true"/"false" and integers; *out becomes 0 or 1. */
int xt_config_get_bool(const xt_config* cfg, const char* key, int* out);
/* Fills out[0..capacity); sets *out_size to the entry count.  Fails if the
 * list does not fit. */
int xt_config_get_int_list(const xt_config* cfg, const char* key, long long* out, size_t capacity,
                           size_t* out_size);
xt_config* xt_config_sub(const xt_config* cfg, const char* prefix);
char* xt_config_report(const xt_config* cfg);
void xt_config_free(xt_config* cfg);

/* --- grids ----------------------------------------------------------- */

/* Builds the provider selected by cfg["type"]; missing keys fall back to
 * that type's default configuration. */
xt_grid* xt_grid_create(const xt_config* cfg, int dim);
void xt_grid_free(xt_grid* grid);
int xt_grid_dim(const xt_grid* grid);
int xt_grid_max_level(const xt_grid* grid);
/* Number of entities of the codimension on the level view; bit i of
 * periodic_mask wraps direction i. */
int xt_grid_size(const xt_grid* grid, int level, unsigned periodic_mask, int codim, size_t* out);

/* --- functions ------------------------------------------------------- */

xt_function* xt_function_create(const char* type_id, const xt_config* cfg, int dim);
void xt_function_free(xt_function* fn);
char* xt_function_name(const xt_function* fn);
int xt_function_write_vtk(const xt_function* fn, const xt_grid* grid, int level,
                          unsigned periodic_mask, const char* name, const char* path);

/* --- L2 projection --------------------------------------------------- */

/* Projects fn onto the discontinuous space of order `order` on the given
 * level view.  solver_type may be NULL or "" for the default dense solver. */
xt_projection* xt_project(const xt_grid* grid, int level, unsigned periodic_mask,
                          const xt_function* fn, int order, const char* solver_type);
void xt_projection_free(xt_projection* projection);
/* L2 norm of (reference - projection), via a parallel walk if requested. */
int xt_projection_l2_error(const xt_projection* projection, const xt_function* reference,
                           int parallel, double* out);
int xt_projection_write_vtk(const xt_projection* projection, const char* name, const char* path);
int xt_difference_write_vtk(const xt_function* fn, const xt_projection* projection,
                            const char* name, const char* path);

/* --- mass system solve ----------------------------------------------- */

typedef struct xt_solve_mass_report
{
  char solver_type[64];
  long long iterations;
  double relative_residual;
  double solution_min;
  double solution_max;
} xt_solve_mass_report;

/* Assembles the global DG mass matrix (sparse) and load vector of fn on
 * the level view and solves; solver_type may be NULL or "" for the default
 * iterative solver. */
int xt_solve_mass(const xt_grid* grid, int level, unsigned periodic_mask, const xt_function* fn,
                  int order, const char* solver_type, xt_solve_mass_report* out);

/* --- timings ---------------------------------------------------------- */

int xt_timings_start(const char* section);
int xt_timings_stop(const char* section);
char* xt_timings_csv(void);
void xt_timings_reset(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* XT_CAPI_H */
