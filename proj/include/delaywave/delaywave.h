/* C interface to the delaywave solvers: opaque handles, status codes. */
#ifndef DELAYWAVE_DELAYWAVE_H
#define DELAYWAVE_DELAYWAVE_H

#include <stddef.h>

#if defined(DELAYWAVE_BUILDING_LIBRARY)
#define DW_API __attribute__((visibility("default")))
#else
#define DW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Numbering matches delaywave::ErrorCode; DW_INTERNAL covers anything else. */
typedef enum dw_status {
  DW_OK = 0,
  DW_INVALID_ARGUMENT = 1,
  DW_NO_BRACKET = 2,
  DW_ENVELOPE_DEGENERATE = 3,
  DW_NONPOSITIVE_RHO = 4,
  DW_RESIDUAL_NAN = 5,
  DW_SINGULAR_JACOBIAN = 6,
  DW_NO_CONVERGENCE = 7,
  DW_CONTINUATION_STALLED = 8,
  DW_MONOTONICITY_LOST = 9,
  DW_TAIL_TOO_SHORT = 10,
  DW_ROOT_NOT_FOUND = 11,
  DW_BLOW_UP = 12,
  DW_WINDOW_TOO_SHORT = 13,
  DW_PARSE_ERROR = 14,
  DW_UNKNOWN_KEY = 15,
  DW_UNKNOWN_COMMAND = 16,
  DW_IO_ERROR = 17,
  DW_INTERNAL = 99
} dw_status;

typedef struct dw_config dw_config;
typedef struct dw_summary dw_summary;

/* snake_case name of a status ("ok", "parse_error", ...). */
DW_API const char* dw_status_name(dw_status status);
/* Process exit status for a failed call: 2 for usage/config errors, 1 otherwise, 0 for DW_OK. */
DW_API int dw_status_exit_code(dw_status status);
/* Message of the last failure on this thread; "" if none. */
DW_API const char* dw_last_error(void);

DW_API dw_status dw_config_default(dw_config** out);
DW_API dw_status dw_config_parse(const char* text, dw_config** out);
DW_API dw_status dw_config_load(const char* path, dw_config** out);
/* "A", "B" or "C". */
DW_API dw_status dw_config_set_family(dw_config* config, const char* name);
DW_API dw_status dw_config_set_tau(dw_config* config, double tau);
DW_API dw_status dw_config_get_tau(const dw_config* config, double* tau);
DW_API void dw_config_free(dw_config* config);

/* Runs a command (validate, wave0, wave, sweep, spectrum, simulate, check).
   out_dir may be NULL or "" to skip CSV artifacts. */
DW_API dw_status dw_run(const char* command, const dw_config* config, const char* out_dir,
                        dw_summary** out);

DW_API int dw_summary_exit_status(const dw_summary* summary);
DW_API size_t dw_summary_size(const dw_summary* summary);
DW_API const char* dw_summary_key(const dw_summary* summary, size_t index);
DW_API const char* dw_summary_value(const dw_summary* summary, size_t index);
/* Value for key, or NULL. */
DW_API const char* dw_summary_find(const dw_summary* summary, const char* key);
DW_API size_t dw_summary_artifact_count(const dw_summary* summary);
DW_API const char* dw_summary_artifact(const dw_summary* summary, size_t index);
DW_API void dw_summary_free(dw_summary* summary);

/* Speed of the non-delayed front for f(w) = kappa (1-w) + (1-w)^2 (a + b w). */
DW_API dw_status dw_nondelayed_speed(double kappa, double a, double b, double* c);

#ifdef __cplusplus
}
#endif

#endif
