#ifndef DECAYLAB_H
#define DECAYLAB_H

/* C interface to decaylab. All handles are opaque; every call that can fail
 * returns a dl_status and records a message retrievable with dl_last_error()
 * on the calling thread. */

#include <stddef.h>

#if defined(_WIN32)
#define DL_API __declspec(dllexport)
#else
#define DL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dl_status {
    DL_OK = 0,
    DL_ERR_INTERNAL = 1,
    DL_ERR_CONFIG = 2,
    DL_ERR_INVALID_ARGUMENT = 3,
    DL_ERR_DOMAIN = 4,
    DL_VERDICT_UNKNOWN = 10,
    DL_ERR_DIVERGENT = 11,
    DL_ERR_BLOWUP = 12
} dl_status;

/* Role of a function argument: solution value or radius. Controls the default
 * offsets of power and power_log families. */
typedef enum dl_role { DL_ROLE_STATE = 0, DL_ROLE_SPATIAL = 1 } dl_role;

typedef struct dl_function dl_function;
typedef struct dl_outputs dl_outputs;

/* Overrides applied on top of a config. NaN means "use the config value";
 * jobs = 0 picks the hardware concurrency. */
typedef struct dl_options {
    double theta;
    double calibration_c;
    int jobs;
} dl_options;

DL_API const char* dl_version(void);
DL_API const char* dl_last_error(void);
DL_API void dl_options_init(dl_options* options);

/* Scalar functions described by the same JSON objects used in configs. */
DL_API dl_status dl_function_from_json(const char* json, dl_role role, dl_function** out);
DL_API void dl_function_free(dl_function* f);
DL_API dl_status dl_function_eval(const dl_function* f, double x, double* out);
/* inf of f over (z/theta, theta*z). */
DL_API dl_status dl_function_theta_inf(const dl_function* f, double theta, double z, double* out);
/* inf of a radial weight over (0, r]. */
DL_API dl_status dl_function_radial_inf(const dl_function* f, double r, double* out);

/* Runs check | sweep | envelope | simulate | stationary on a JSON config.
 * The returned status is the command outcome; *out is always set on return
 * (except for DL_ERR_INVALID_ARGUMENT) and must be released with dl_outputs_free. */
DL_API dl_status dl_run(const char* command, const char* config_json, const dl_options* options,
                        dl_outputs** out);
DL_API const char* dl_outputs_stdout(const dl_outputs* o);
DL_API const char* dl_outputs_stderr(const dl_outputs* o);
DL_API size_t dl_outputs_file_count(const dl_outputs* o);
DL_API const char* dl_outputs_file_name(const dl_outputs* o, size_t index);
DL_API const char* dl_outputs_file_content(const dl_outputs* o, size_t index, size_t* length);
DL_API void dl_outputs_free(dl_outputs* o);

#ifdef __cplusplus
}
#endif

#endif
