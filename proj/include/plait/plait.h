/* C interface to the plait library. Every call returns a plait_status;
 * on failure plait_last_error() describes the problem (per thread).
 * Strings handed out through char** parameters are owned by the caller and
 * released with plait_string_free. */
#ifndef PLAIT_PLAIT_H
#define PLAIT_PLAIT_H

#include <stdint.h>

#if defined(_WIN32)
#define PLAIT_API __declspec(dllexport)
#else
#define PLAIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plait_status {
  PLAIT_OK = 0,
  PLAIT_INVALID_ARGUMENT = 1,
  PLAIT_COLLINEAR_OVERLAP = 2,
  PLAIT_POINT_ON_BOUNDARY = 3,
  PLAIT_DEGENERATE_ARRANGEMENT = 4,
  PLAIT_WINDOW_TOO_COARSE = 5,
  PLAIT_IDENTICAL_ARCS = 6,
  PLAIT_DEGENERATE_AMPLITUDE = 7,
  PLAIT_ARGUMENT_JUMP = 8,
  PLAIT_NON_INTEGER_OFFSET = 9,
  PLAIT_SPLICE_MISMATCH = 10,
  PLAIT_SELF_INTERSECTION = 11,
  PLAIT_EMPTY_SCENE = 12,
  PLAIT_PARSE_ERROR = 13,
  PLAIT_IO_ERROR = 14,
  PLAIT_INTERNAL_ERROR = 99
} plait_status;

typedef struct plait_system plait_system;

PLAIT_API const char* plait_version(void);
PLAIT_API const char* plait_status_name(plait_status status);
PLAIT_API const char* plait_last_error(void);
PLAIT_API void plait_string_free(char* s);

/* a*(N) */
PLAIT_API plait_status plait_threshold(int n_arcs, double* out);

/* method: "analytic", "lift", "enclosure" or "all". step <= 0 and tol <= 0
 * select the default sampling step and intersection tolerance. */
PLAIT_API plait_status plait_classify(int n_arcs, double amplitude, double x_min, double x_max, const char* method,
                                      double step, double tol, char** json_out);

/* "nesting" or "plaiting" */
PLAIT_API plait_status plait_system_builtin(const char* name, plait_system** out);
PLAIT_API plait_status plait_system_load(const char* path, plait_system** out);
PLAIT_API plait_status plait_system_from_json(const char* text, plait_system** out);
PLAIT_API void plait_system_free(plait_system* sys);
PLAIT_API plait_status plait_system_json(const plait_system* sys, char** json_out);

PLAIT_API plait_status plait_stage_json(const plait_system* sys, int n, char** json_out);
PLAIT_API plait_status plait_stage_svg(const plait_system* sys, int n, char** svg_out);

PLAIT_API int plait_figure_count(void);
PLAIT_API const char* plait_figure_name(int index);
PLAIT_API plait_status plait_figure_svg(const char* name, char** svg_out);

/* suite: "sine", "classifier", "ifs" or "all". *passed is 1 iff every
 * property holds. */
PLAIT_API plait_status plait_verify(const char* suite, uint64_t seed, int* passed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
