#ifndef WPCOLLAPSE_H
#define WPCOLLAPSE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes.  Negative values are errors; wpc_last_error() carries the
 * message for the calling thread. */
typedef enum wpc_status {
  WPC_OK = 0,
  WPC_ERR_NOT_POSITIVE_DEFINITE = -1,
  WPC_ERR_NOT_SYMMETRIC = -2,
  WPC_ERR_DIMENSION_MISMATCH = -3,
  WPC_ERR_NUMERICALLY_SINGULAR = -4,
  WPC_ERR_NO_CONVERGENCE = -5,
  WPC_ERR_NOT_VERTICAL = -6,
  WPC_ERR_BASE_MISMATCH = -7,
  WPC_ERR_NOT_IN_SIEGEL_SET = -8,
  WPC_ERR_NOT_DEEP_ENOUGH = -9,
  WPC_ERR_NONPOSITIVE_SCALE = -10,
  WPC_ERR_SIEGEL_CHAIN_VIOLATED = -11,
  WPC_ERR_DEGENERATE_INPUT = -12,
  WPC_ERR_DEGENERATE_DIRECTION = -13,
  WPC_ERR_SAMPLES_TOO_COARSE = -14,
  WPC_ERR_INTEGER_OVERFLOW = -15,
  WPC_ERR_BAD_INPUT = -16,
  WPC_ERR_IO = -17,
  WPC_ERR_UNKNOWN = -100
} wpc_status;

const char* wpc_last_error(void);

/* Opaque Siegel-space point tau = X + iY (matrices row-major, length g*g). */
typedef struct wpc_point wpc_point;

wpc_status wpc_point_create(int g, const double* x, const double* y, wpc_point** out);
void wpc_point_destroy(wpc_point* p);
int wpc_point_dim(const wpc_point* p);
wpc_status wpc_point_data(const wpc_point* p, double* x_out, double* y_out);

/* Metric operations. */
wpc_status wpc_wp_norm_sq(const wpc_point* tau, const double* vx, const double* vy,
                          double* out);
wpc_status wpc_siegel_distance(const wpc_point* a, const wpc_point* b, double* out);
wpc_status wpc_trwp_distance(int r, const double* p, const double* q, double* out);

/* Reduction.  y_red and u_out are g*g row-major; u_out holds the unimodular
 * change of basis with t(U) Y U = Y_red. */
wpc_status wpc_reduce_spd(int g, const double* y, double u, double* y_red,
                          int64_t* u_out, int* swaps_out);
wpc_status wpc_in_siegel_set(const wpc_point* tau, double u, int* out);

/* Horospherical projection: tau' (gprime*gprime blocks) and the Schur
 * complement t ((g-gprime)^2, row-major). */
wpc_status wpc_project(const wpc_point* tau, int gprime, double* xprime_out,
                       double* yprime_out, double* t_out);
wpc_status wpc_fiber_diameter_bound(const wpc_point* tau, int gprime, double u,
                                    double* out);
wpc_status wpc_lambda_lower_bound(const wpc_point* tau, int gprime, double u, double* out);
wpc_status wpc_collapse_bounds(const wpc_point* tau, int gprime, double R, double u,
                               double* lambda_lo, double* lambda_hi, double* delta,
                               double* gh_upper);

/* JSON-level entry points (inputs/outputs are UTF-8 JSON documents; free
 * returned strings with wpc_string_free). */
wpc_status wpc_cmd_reduce(const char* point_json, double u, char** json_out);
wpc_status wpc_cmd_dist(const char* request_json, char** json_out);
wpc_status wpc_cmd_project(const char* point_json, int gprime, char** json_out);
wpc_status wpc_cmd_fiber_diam(const char* point_json, int gprime, double u, int samples,
                              uint64_t seed, char** json_out);
wpc_status wpc_collapse_run(const char* config_json, char** report_json,
                            char** report_csv);
wpc_status wpc_run_suite(const char* name, char** json_out);

void wpc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* WPCOLLAPSE_H */
