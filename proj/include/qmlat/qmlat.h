/* C interface to the qmlat library. Opaque handles, status codes; strings
 * returned through char** are owned by the caller and released with
 * qmlat_free_string. */
#ifndef QMLAT_H
#define QMLAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(QMLAT_BUILDING_LIBRARY)
#define QMLAT_API __attribute__((visibility("default")))
#else
#define QMLAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qmlat_lattice qmlat_lattice;
typedef struct qmlat_qm qmlat_qm;

typedef enum qmlat_status {
    QMLAT_OK = 0,
    QMLAT_PARSE_ERROR,
    QMLAT_INVALID_ARGUMENT,
    QMLAT_NOT_A_POSET,
    QMLAT_NOT_A_LATTICE,
    QMLAT_NOT_BOUNDED,
    QMLAT_INDEX_OUT_OF_RANGE,
    QMLAT_UNKNOWN_BUILTIN,
    QMLAT_FACTOR_NOT_IDEAL,
    QMLAT_FACTOR_NOT_PRINCIPAL,
    QMLAT_CARRIER_TOO_LARGE,
    QMLAT_NOT_IN_CARRIER,
    QMLAT_ENUMERATION_BUDGET_EXCEEDED,
    QMLAT_NOT_ZERO_DISTRIBUTIVE,
    QMLAT_NOT_CLOSED_INPUT,
    QMLAT_NOT_CLOSED,
    QMLAT_FACTORIZATION_FAILED,
    QMLAT_UNKNOWN_INSTANCE,
    QMLAT_IO_ERROR,
    QMLAT_INTERNAL_ERROR,
    QMLAT_STATUS_MAX_ENUM = 0x7fffffff
} qmlat_status;

typedef enum qmlat_format {
    QMLAT_FORMAT_TABLE = 0,
    QMLAT_FORMAT_STRUCTURED = 1,
    /* Not a format; widens the enum to int so bad values can be rejected. */
    QMLAT_FORMAT_MAX_ENUM = 0x7fffffff
} qmlat_format;

typedef struct qmlat_run_options {
    size_t budget;
    size_t max_basis_size;
    int closed_only;
    uint64_t seed;
    int timing;
    /* Echoed as the first output line; may be NULL. */
    const char* config;
} qmlat_run_options;

typedef struct qmlat_search_config {
    size_t max_lattice_size;
    size_t max_factor_count;
    size_t max_carrier;
    uint64_t seed;
    /* Comma-separated hypothesis ids; may be NULL. */
    const char* drop;
    /* Comma-separated clause ids; may be NULL. */
    const char* targets;
} qmlat_search_config;

QMLAT_API const char* qmlat_version(void);
QMLAT_API const char* qmlat_status_name(qmlat_status status);
/* Message of the last failed call on this thread ("" if none). */
QMLAT_API const char* qmlat_last_error(void);
QMLAT_API void qmlat_free_string(char* s);

QMLAT_API void qmlat_run_options_init(qmlat_run_options* options);
QMLAT_API void qmlat_search_config_init(qmlat_search_config* config);

QMLAT_API qmlat_status qmlat_lattice_builtin(const char* name, qmlat_lattice** out);
QMLAT_API qmlat_status qmlat_lattice_parse(const char* text, qmlat_lattice** out);
QMLAT_API qmlat_status qmlat_lattice_load(const char* path, qmlat_lattice** out);
QMLAT_API void qmlat_lattice_free(qmlat_lattice* lattice);
QMLAT_API size_t qmlat_lattice_size(const qmlat_lattice* lattice);
/* Borrowed pointer, valid while the lattice lives. */
QMLAT_API qmlat_status qmlat_lattice_label(const qmlat_lattice* lattice, size_t index, const char** out);
QMLAT_API qmlat_status qmlat_lattice_find(const qmlat_lattice* lattice, const char* label, size_t* out);
QMLAT_API qmlat_status qmlat_lattice_meet_join(const qmlat_lattice* lattice, size_t x, size_t y, size_t* meet,
                                               size_t* join);
QMLAT_API qmlat_status qmlat_lattice_is_0_distributive(const qmlat_lattice* lattice, int* out);
QMLAT_API qmlat_status qmlat_lattice_report(const qmlat_lattice* lattice, qmlat_format format,
                                            const qmlat_run_options* options, char** out);
QMLAT_API qmlat_status qmlat_lattice_to_dot(const qmlat_lattice* lattice, const qmlat_run_options* options,
                                            char** out);

QMLAT_API qmlat_status qmlat_qm_load(const char* path, qmlat_qm** out);
/* base_dir resolves `lattice: PATH` lines; may be NULL. */
QMLAT_API qmlat_status qmlat_qm_parse(const char* text, const char* base_dir, qmlat_qm** out);
QMLAT_API void qmlat_qm_free(qmlat_qm* qm);
QMLAT_API size_t qmlat_qm_carrier_size(const qmlat_qm* qm);
/* action: subs | closed | splitting | perp-table | bases | verify. *failed is
 * set to 1 when verify produced fail or error reports. */
QMLAT_API qmlat_status qmlat_qm_run(const qmlat_qm* qm, const char* action, qmlat_format format,
                                    const qmlat_run_options* options, char** out, int* failed);
/* which: lattice | subs | closed. */
QMLAT_API qmlat_status qmlat_qm_export_dot(const qmlat_qm* qm, const char* which, const qmlat_run_options* options,
                                           char** out);

/* Reproduces a worked example (ex2, m3, ex1, fig5, n5-power) or, for "all",
 * every one of them concurrently; *failed is set on any fail report. */
QMLAT_API qmlat_status qmlat_verify_instance(const char* name, qmlat_format format, const qmlat_run_options* options,
                                             char** out, int* failed);
/* *found receives the number of violations found. */
QMLAT_API qmlat_status qmlat_verify_search(const qmlat_search_config* config, qmlat_format format,
                                           const qmlat_run_options* options, char** out, size_t* found);

#ifdef __cplusplus
}
#endif

#endif
