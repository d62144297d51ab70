/* qkron: tensor-format linear-system walk simulator, C interface.
 *
 * Every entry point returns a qk_status; handles are opaque and owned by the
 * caller through the matching _free call. Functions never throw across the
 * boundary. qk_last_error() carries the detail text of the most recent
 * failure on the calling thread.
 */
#ifndef QKRON_H
#define QKRON_H

#include <stdint.h>

#if defined(_WIN32)
#define QKRON_API __declspec(dllexport)
#else
#define QKRON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qk_status {
  QK_OK = 0,
  QK_PARSE_ERROR = 1,
  QK_INVALID_INSTANCE = 2,
  QK_SINGULAR = 3,
  QK_CAP_EXCEEDED = 4,
  QK_IO_ERROR = 5,
  QK_BAD_ARGUMENT = 6,
  QK_INTERNAL_ERROR = 7
} qk_status;

typedef struct qk_instance qk_instance;
typedef struct qk_report qk_report;

QKRON_API const char* qk_status_name(qk_status s);
QKRON_API const char* qk_last_error(void);

/* Parse an instance from JSON text or load it from a file. On success *out
 * owns a handle; release it with qk_instance_free. */
QKRON_API qk_status qk_instance_parse(const char* json_text, qk_instance** out);
QKRON_API qk_status qk_instance_load(const char* path, qk_instance** out);
QKRON_API void qk_instance_free(qk_instance* inst);

/* In-place norm normalization; idempotent. */
QKRON_API qk_status qk_instance_normalize(qk_instance* inst);
QKRON_API qk_status qk_instance_dims(const qk_instance* inst, int* n, int* m, int* d);
QKRON_API qk_status qk_condition_number(const qk_instance* inst, double* kappa);

typedef struct qk_solve_options {
  double eps;        /* target error in (0,1); 0 picks 0.1 */
  const char* mode;  /* exact-expm | trotter-exact-data | trotter-fixedpoint;
                        NULL picks trotter-fixedpoint */
  int repeats;       /* independent randomized runs; 0 picks 1 */
  uint64_t seed;
  int seed_is_set;   /* 0: draw a seed from system entropy and report it */
  int fraction_bits; /* 0: derived from eps and the condition number */
  double c_q;        /* schedule step constant; 0 picks the built-in */
  double c_r;        /* segment count constant; 0 picks the built-in */
} qk_solve_options;

QKRON_API void qk_solve_options_init(qk_solve_options* opts);

/* Full pipeline / resource prediction / structural self-checks. On success
 * *out owns a report handle. */
QKRON_API qk_status qk_solve(const qk_instance* inst, const qk_solve_options* opts,
                             qk_report** out);
QKRON_API qk_status qk_stats(const qk_instance* inst, const qk_solve_options* opts,
                             qk_report** out);
QKRON_API qk_status qk_verify(const qk_instance* inst, qk_report** out);

/* Borrowed JSON text, valid until qk_report_free. */
QKRON_API const char* qk_report_json(const qk_report* rep);
/* 1 when the run met its own bar (solve: median trace distance within eps;
 * verify: every check passed; stats: always 1). */
QKRON_API int qk_report_ok(const qk_report* rep);
QKRON_API void qk_report_free(qk_report* rep);

#ifdef __cplusplus
}
#endif

#endif /* QKRON_H */
