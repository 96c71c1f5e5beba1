#ifndef FLOQUET_FLOQUET_H
#define FLOQUET_FLOQUET_H

/*
 * C interface to the floquet simulator. Every function returning int uses
 * the FLQ_* codes below; on failure flq_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread). Handles are
 * opaque and owned by the caller; free them with the matching *_free.
 */

#include <stddef.h>

#if defined(_WIN32)
#define FLQ_API __declspec(dllexport)
#else
#define FLQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  FLQ_OK = 0,
  FLQ_INVALID_ARGUMENT = 1,
  FLQ_GAP_CLOSED = 2,
  FLQ_DEGENERATE_START = 3,
  FLQ_STEP_TOO_LARGE = 4,
  FLQ_NUMERICAL_BLOWUP = 5,
  FLQ_ZERO_NORM = 6,
  FLQ_CONFIG_MISMATCH = 7,
  FLQ_INSUFFICIENT_DATA = 8,
  FLQ_NYQUIST_VIOLATION = 9,
  FLQ_PARSE_ERROR = 10,
  FLQ_VALIDATION_ERROR = 11,
  FLQ_UNKNOWN_KEY = 12,
  FLQ_IO_ERROR = 13,
  FLQ_NON_INTEGER_CHERN = 14,
  FLQ_INTERNAL = 99
};

enum { FLQ_CELL_OK = 0, FLQ_CELL_GAP_CLOSED = 1, FLQ_CELL_NUMERICAL_FAILURE = 2 };

typedef struct flq_config flq_config;
typedef struct flq_trajectory flq_trajectory;
typedef struct flq_sweep flq_sweep;

typedef struct {
  double slope1;
  double slope2;
  double r2_1;
  double r2_2;
  double window;
} flq_slope_fit;

typedef struct {
  double mass;
  double phi;
  flq_slope_fit fit;
  int has_chern;
  int chern;
  int boundary;
  int status; /* FLQ_CELL_* */
} flq_sweep_cell;

FLQ_API const char* flq_version(void);
FLQ_API const char* flq_last_error(void);
FLQ_API const char* flq_error_name(int code);

/* Configuration. Keys are the dotted names of the config file format. */
FLQ_API int flq_config_new(flq_config** out);
FLQ_API int flq_config_load(const char* path, flq_config** out);
FLQ_API int flq_config_parse(const char* text, flq_config** out);
FLQ_API int flq_config_set(flq_config* cfg, const char* key, const char* value);
/* Writes the value with a terminating NUL; *needed gets the full length + 1. */
FLQ_API int flq_config_get(const flq_config* cfg, const char* key, char* buf, size_t len,
                           size_t* needed);
FLQ_API int flq_config_validate(const flq_config* cfg);
FLQ_API int flq_config_is_commensurate(const flq_config* cfg, int* out);
/* "key = value\n" lines of the full echo, same contract as flq_config_get. */
FLQ_API int flq_config_echo(const flq_config* cfg, char* buf, size_t len, size_t* needed);
FLQ_API void flq_config_free(flq_config* cfg);

/* Single evolution with the configured mode. */
FLQ_API int flq_evolve(const flq_config* cfg, flq_trajectory** out);
FLQ_API size_t flq_trajectory_size(const flq_trajectory* traj);
/* Columns: t, re_b1, im_b1, re_b2, im_b2, bx, by, bz, norm, W1, W2. n must equal size. */
FLQ_API int flq_trajectory_column(const flq_trajectory* traj, const char* name, double* out,
                                  size_t n);
FLQ_API int flq_trajectory_slopes(const flq_trajectory* traj, double window_start,
                                  flq_slope_fit* out);
FLQ_API int flq_trajectory_coverage(const flq_trajectory* traj, int n_bins, double* out);
FLQ_API int flq_trajectory_write_csv(const flq_trajectory* traj, const char* path);
FLQ_API void flq_trajectory_free(flq_trajectory* traj);

/* (M, phi) sweep with the configured grid. */
FLQ_API int flq_sweep_run(const flq_config* cfg, flq_sweep** out);
FLQ_API size_t flq_sweep_size(const flq_sweep* sweep);
FLQ_API int flq_sweep_cell_at(const flq_sweep* sweep, size_t index, flq_sweep_cell* out);
FLQ_API int flq_sweep_write_csv(const flq_sweep* sweep, const char* path);
FLQ_API void flq_sweep_free(flq_sweep* sweep);

/* Lattice Chern number (t1 = t2 = 1). kind is "haldane" or "brickwall". */
FLQ_API int flq_chern(const char* kind, double mass, double phi, int grid_n, int* out);

/* Density of states of the configured drive for each mass in masses. */
FLQ_API int flq_dos_write_csv(const flq_config* cfg, const double* masses, size_t n,
                              const char* path);

/* AWG waveform file at signals.sample_rate over signals.duration. */
FLQ_API int flq_signals_write_csv(const flq_config* cfg, const char* path);

FLQ_API int flq_write_manifest(const flq_config* cfg, const char* command,
                               const char* const* outputs, size_t n_outputs,
                               double wall_time_s, const char* path);

#ifdef __cplusplus
}
#endif

#endif
