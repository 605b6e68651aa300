#ifndef ADRCPID_ADRCPID_H
#define ADRCPID_ADRCPID_H

/*
 * C interface to the ADRC / PI(D)+F equivalence library.
 *
 * Every fallible call returns an adrc_status. On failure a message is
 * available from adrc_last_error() until the next call on the same thread.
 * Handles are opaque and must be released with their matching *_free.
 */

#include <stddef.h>

#if defined(_WIN32)
#if defined(ADRCPID_BUILDING)
#define ADRC_API __declspec(dllexport)
#else
#define ADRC_API __declspec(dllimport)
#endif
#else
#define ADRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adrc_status {
    ADRC_OK = 0,
    ADRC_ERR_INVALID_ARGUMENT = 1,
    ADRC_ERR_IO = 2,
    ADRC_ERR_NUMERIC = 3,
    ADRC_ERR_VERIFY_FAILED = 4,
    ADRC_ERR_INTERNAL = 5
} adrc_status;

ADRC_API const char* adrc_last_error(void);
ADRC_API const char* adrc_version(void);

/* Channel selectors for controller queries. */
#define ADRC_CHANNEL_CR 0 /* r -> u */
#define ADRC_CHANNEL_CY 1 /* -(y -> u) */

/* ADRC gains and the equivalent PI(D)+F parameters. For order 1 the
 * second-order-only fields (omega_cl, K_D, l3, kd, d) are zero. */
typedef struct adrc_tuning {
    int order;
    double ts, g, b0;
    double omega_cl, K_P, K_D, l1, l2, l3;
    double kp, ki, kd, tf, d, b;
} adrc_tuning;

ADRC_API adrc_status adrc_tune(int order, double ts, double g, double b0, adrc_tuning* out);

/* ---- line-oriented reports ---------------------------------------------- */

typedef struct adrc_report adrc_report;

ADRC_API size_t adrc_report_count(const adrc_report* r);
/* NULL when index is out of range. The string lives as long as the report. */
ADRC_API const char* adrc_report_line(const adrc_report* r, size_t index);
/* Nonzero when every check in a verify report passed; 1 for other reports. */
ADRC_API int adrc_report_passed(const adrc_report* r);
ADRC_API void adrc_report_free(adrc_report* r);

/* Human-readable tuning report (gains, parameters, realization matrices). */
ADRC_API adrc_status adrc_tune_report(int order, double ts, double g, double b0, adrc_report** out);

/* ---- controllers -------------------------------------------------------- */

typedef struct adrc_controller adrc_controller;

ADRC_API adrc_status adrc_controller_adrc(int order, double ts, double g, double b0, adrc_controller** out);
/* PI+F (order 1) or PID+F (order 2) realization equivalent to the ADRC design. */
ADRC_API adrc_status adrc_controller_equivalent(int order, double ts, double g, double b0, adrc_controller** out);
ADRC_API adrc_status adrc_controller_compare(double kp, double ki, double kd, double tf, double b,
                                             adrc_controller** out);
ADRC_API void adrc_controller_free(adrc_controller* c);

ADRC_API int adrc_controller_states(const adrc_controller* c);
/* Row-major copies: a is n*n, b is n*2 (columns r, y), c is n, d is 2. */
ADRC_API adrc_status adrc_controller_matrices(const adrc_controller* c, double* a, double* b, double* cm, double* d);
/* Ascending-power coefficients of the monic-denominator channel transfer
 * function. *num_len and *den_len receive the required lengths; when a
 * capacity is too small nothing is copied and ADRC_ERR_INVALID_ARGUMENT is
 * returned. */
ADRC_API adrc_status adrc_controller_channel(const adrc_controller* c, int channel, double* num, size_t num_cap,
                                             size_t* num_len, double* den, size_t den_cap, size_t* den_len);
ADRC_API adrc_status adrc_controller_freq(const adrc_controller* c, int channel, const double* omega, size_t n,
                                          double* re, double* im);

/* ---- experiment configuration ------------------------------------------ */

typedef struct adrc_config adrc_config;

ADRC_API adrc_status adrc_config_new(adrc_config** out);
ADRC_API adrc_status adrc_config_load(const char* path, adrc_config** out);
ADRC_API adrc_status adrc_config_save(const adrc_config* cfg, const char* path);
/* Keys are "section.key", e.g. "tuning.ts", "plant.k", "output.dir". */
ADRC_API adrc_status adrc_config_set(adrc_config* cfg, const char* key, const char* value);
/* Copies a NUL-terminated value; *needed receives strlen + 1. */
ADRC_API adrc_status adrc_config_get(const adrc_config* cfg, const char* key, char* buf, size_t cap, size_t* needed);
ADRC_API adrc_status adrc_config_validate(const adrc_config* cfg);
ADRC_API void adrc_config_free(adrc_config* cfg);

/* ---- experiment runners ------------------------------------------------- */

/* Writes fig<id>.csv, fig<id>.svg and config.ini into the output directory.
 * notes (optional) receives one line per unstable sweep case. */
ADRC_API adrc_status adrc_run_figure(const adrc_config* cfg, int id, adrc_report** notes);
/* Step sweep of plant parameter "K", "T" or "D" at the configured order;
 * writes sweep_order<n>_<param>.{csv,svg} and config.ini. */
ADRC_API adrc_status adrc_run_sweep(const adrc_config* cfg, const char* param, const double* values, size_t n,
                                    adrc_report** notes);
/* Returns ADRC_OK or ADRC_ERR_VERIFY_FAILED with a report in both cases.
 * perturb_b0 scales b0 on the equivalent side of the y-channel checks. */
ADRC_API adrc_status adrc_run_verify(const adrc_config* cfg, double perturb_b0, adrc_report** out);

#ifdef __cplusplus
}
#endif

#endif
