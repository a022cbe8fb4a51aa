/* gravphase C API.
 *
 * All functions return a gp_status. On failure, gp_last_error_message() returns a
 * description of the most recent error on the calling thread. Handles are opaque and
 * must be released with the matching *_free function. Strings returned by accessors
 * stay valid until the owning handle is freed.
 */
#ifndef GRAVPHASE_H
#define GRAVPHASE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GRAVPHASE_BUILDING)
#    define GP_API __declspec(dllexport)
#  else
#    define GP_API __declspec(dllimport)
#  endif
#else
#  define GP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gp_status {
    GP_OK = 0,
    GP_ERR_NULL_ARGUMENT = 1,
    GP_ERR_INVALID_QUANTITY = 2,
    GP_ERR_DOMAIN = 3,
    GP_ERR_DIVIDE_BY_ZERO = 4,
    GP_ERR_RANGE = 5,
    GP_ERR_CONFIG = 6,
    GP_ERR_UNSUPPORTED_SEQUENCE = 7,
    GP_ERR_UNIDENTIFIABLE = 8,
    GP_ERR_FIT_FAILURE = 9,
    GP_ERR_RESOLUTION = 10,
    GP_ERR_IO = 11,
    GP_ERR_VERIFICATION = 12,
    GP_ERR_INTERNAL = 13
} gp_status;

typedef struct gp_scenario gp_scenario;
typedef struct gp_result gp_result;

/* Phase channels in radians. */
typedef struct gp_phase_channels {
    double potential;
    double kinetic;
    double laser;
    double internal;
    double total;
} gp_phase_channels;

typedef struct gp_phase_breakdown {
    gp_phase_channels arm_a;
    gp_phase_channels arm_b;
    gp_phase_channels differential;
    double propagation;    /* kinetic + potential, differential */
    double optical_offset; /* phi1 - 2 phi2 + phi3 */
    double observable;     /* gravitational phase + optical offset */
} gp_phase_breakdown;

GP_API const char* gp_version(void);
GP_API const char* gp_constants_version(void);
GP_API const char* gp_status_name(gp_status status);
GP_API const char* gp_last_error_message(void);
/* Process exit code for a status: 0 ok, 2 input/config, 3 numerical. */
GP_API int gp_exit_code(gp_status status);

/* Scenarios. */
GP_API gp_status gp_scenario_load(const char* path, gp_scenario** out);
GP_API gp_status gp_scenario_parse(const char* json_text, gp_scenario** out);
GP_API void gp_scenario_free(gp_scenario* scenario);
GP_API gp_status gp_scenario_set_seed(gp_scenario* scenario, uint64_t seed);
GP_API gp_status gp_scenario_echo(gp_scenario* scenario, const char** json_text);
GP_API gp_status gp_scenario_phase(const gp_scenario* scenario, gp_phase_breakdown* out);

/* Commands: phase, verify, fringes, scan, clock-compare, invert, sweep-eta, sensitivity.
 * timestamp may be NULL. */
GP_API size_t gp_command_count(void);
GP_API const char* gp_command_name(size_t index);
GP_API gp_status gp_run(const gp_scenario* scenario, const char* command, const char* timestamp, gp_result** out);
GP_API void gp_result_free(gp_result* result);
GP_API int gp_result_exit_code(const gp_result* result);
GP_API const char* gp_result_summary(const gp_result* result);
GP_API size_t gp_result_file_count(const gp_result* result);
GP_API const char* gp_result_file_name(const gp_result* result, size_t index);
GP_API const char* gp_result_file_content(const gp_result* result, size_t index, size_t* length);

/* Scalar physics (SI units). */
GP_API gp_status gp_compton_frequency(double mass, double* omega);
GP_API gp_status gp_compton_wavelength(double mass, double* lambda);
GP_API gp_status gp_de_broglie_wavelength(double mass, double velocity, double* lambda);
GP_API gp_status gp_time_dilation(double g, double x1, double x2, double duration, double* delta_t);
GP_API gp_status gp_mz_phase(double kappa, double g, double t, double eta, double* phase);
GP_API gp_status gp_invert_g(double delta_phase, double kappa, double t, double eta, double* g_hat);
GP_API gp_status gp_port_population(double delta_phase, double* excited, double* ground);
GP_API gp_status gp_sensitivity_ratio(double mass, double optical_nu, double* ratio);

#ifdef __cplusplus
}
#endif

#endif
