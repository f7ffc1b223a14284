/* wrgoal: goal-oriented adaptive dynamic iteration for linear ODE systems.
 *
 * C interface of the shared library.  All functions return a status code
 * (WRGOAL_OK on success); on failure wrgoal_last_error() carries a message
 * for the calling thread until its next wrgoal_* call.  Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function.
 */
#ifndef WRGOAL_H
#define WRGOAL_H

#ifdef __cplusplus
extern "C" {
#endif

#define WRGOAL_OK 0
#define WRGOAL_EINVAL 1   /* invalid argument or config value */
#define WRGOAL_EPARSE 2   /* config text rejected */
#define WRGOAL_ERUNTIME 3 /* numerical failure (singular system, gate, ...) */
#define WRGOAL_EIO 4      /* file system failure */

typedef struct wrgoal_config wrgoal_config;
typedef struct wrgoal_result wrgoal_result;

typedef struct wrgoal_level_info {
  int level;      /* 0-based refinement level */
  long n_cells;   /* total cells over all components */
  int k_used;     /* dynamic-iteration sweeps on this level */
  double nu;      /* a-priori splitting-error bound (may be +inf) */
  double mu_total;/* total localized discretization estimate */
  double j_value; /* QoI of the final iterate */
  double j_error; /* |j_value - reference QoI| */
} wrgoal_level_info;

const char* wrgoal_last_error(void);

/* Parse a JSON config, or load a built-in preset: exp1, exp2, exp3. */
int wrgoal_config_parse(const char* text, wrgoal_config** out);
int wrgoal_config_preset(const char* name, wrgoal_config** out);

/* Override one field.  Keys: name, splitting (jacobi|gauss-seidel|full),
 * levels, fraction, kmax, n_init, uniform_levels, out_dir,
 * emit_matrices (true|false), variants (comma-separated scheme:refine). */
int wrgoal_config_set(wrgoal_config* cfg, const char* key, const char* value);

/* Read one field back as text (same keys as wrgoal_config_set); release
 * with wrgoal_string_free. */
int wrgoal_config_get(const wrgoal_config* cfg, const char* key, char** out);

/* Canonical JSON text of the config; release with wrgoal_string_free. */
int wrgoal_config_format(const wrgoal_config* cfg, char** out);
void wrgoal_config_free(wrgoal_config* cfg);
void wrgoal_string_free(char* s);

/* Solve the gated reference, then run the config's variants.  variants_csv
 * (e.g. "euler:goal,cn:uniform") overrides the config's list; pass NULL to
 * keep it. */
int wrgoal_run(const wrgoal_config* cfg, const char* variants_csv, wrgoal_result** out);

int wrgoal_result_variant_count(const wrgoal_result* res);
/* Variant name like "euler:goal"; owned by the result. */
const char* wrgoal_result_variant_name(const wrgoal_result* res, int v);
int wrgoal_result_level_count(const wrgoal_result* res, int v);
int wrgoal_result_level(const wrgoal_result* res, int v, int level, wrgoal_level_info* out);
double wrgoal_result_reference_qoi(const wrgoal_result* res);

/* Write CSVs, mesh dumps and SVG plots; dir NULL means the config's
 * output directory. */
int wrgoal_result_write(const wrgoal_result* res, const char* dir);
void wrgoal_result_free(wrgoal_result* res);

#ifdef __cplusplus
}
#endif

#endif /* WRGOAL_H */
