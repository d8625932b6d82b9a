#ifndef ISOTRIV_H
#define ISOTRIV_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

typedef enum IsotrivStatus {
  ISOTRIV_STATUS_OK = 0,
  ISOTRIV_STATUS_NULL_POINTER = 1,
  ISOTRIV_STATUS_INVALID_ARGUMENT = 2,
  ISOTRIV_STATUS_INCONSISTENT = 3,
  ISOTRIV_STATUS_UNKNOWN_CASE = 4,
  ISOTRIV_STATUS_OUT_OF_RANGE = 5,
  ISOTRIV_STATUS_PANIC = 6,
} IsotrivStatus;

/**
 * Opaque worked-case report.
 */
typedef struct IsotrivCaseReport IsotrivCaseReport;

/**
 * Opaque list of classification rows.
 */
typedef struct IsotrivTable IsotrivTable;

/**
 * Resolution data of `1/n(1,q)`; rationals are `num/den` in lowest terms.
 */
typedef struct IsotrivSingularity {
  uint32_t n;
  uint32_t q;
  uint32_t q_prime;
  /**
   * Length of the Hirzebruch–Jung string.
   */
  uint32_t length;
  int64_t h_num;
  int64_t h_den;
  int64_t e_num;
  int64_t e_den;
  int64_t b_num;
  int64_t b_den;
  bool is_rdp;
} IsotrivSingularity;

/**
 * Numeric columns of one classification row.
 */
typedef struct IsotrivRow {
  int64_t k2;
  uint32_t g_alb;
  uint32_t g_c;
  uint32_t group_order;
  bool minimal;
  int64_t k2_min;
} IsotrivRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *isotriv_status_message(enum IsotrivStatus status);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into this library from the same thread.
 */
const char *isotriv_last_error_message(void);

/**
 * # Safety
 * `out` must be null or point to writable memory for one `IsotrivSingularity`.
 */
enum IsotrivStatus isotriv_singularity(uint32_t n, uint32_t q, struct IsotrivSingularity *out);

/**
 * Classifies all surfaces with the given `k2` (2 to 6). `jobs = 0` means one worker.
 *
 * # Safety
 * `out` must be null or point to writable memory for one pointer.
 */
enum IsotrivStatus isotriv_classify(int64_t k2,
                                    uint32_t jobs,
                                    bool include_rdp_only,
                                    bool orientation_swap,
                                    struct IsotrivTable **out);

/**
 * The minimal surfaces with K² = 5, 3, 2.
 *
 * # Safety
 * `out` must be null or point to writable memory for one pointer.
 */
enum IsotrivStatus isotriv_main_theorem(uint32_t jobs, struct IsotrivTable **out);

/**
 * Number of rows, or 0 for a null table.
 *
 * # Safety
 * `table` must be null or a live handle from this library.
 */
size_t isotriv_table_len(const struct IsotrivTable *table);

/**
 * # Safety
 * `table` must be null or a live handle; `out` null or writable.
 */
enum IsotrivStatus isotriv_table_row(const struct IsotrivTable *table,
                                     size_t index,
                                     struct IsotrivRow *out);

/**
 * The whole table as JSON, in the CLI's row format. Free with [`isotriv_string_free`].
 *
 * # Safety
 * `table` must be null or a live handle; `out` null or writable.
 */
enum IsotrivStatus isotriv_table_json(const struct IsotrivTable *table, char **out);

/**
 * # Safety
 * `table` must be null or a live handle, and is dead afterwards.
 */
void isotriv_table_free(struct IsotrivTable *table);

/**
 * Recomputes a worked case such as `"3a"` or `"k1-example"`.
 *
 * # Safety
 * `label` must be null or a NUL-terminated string; `out` null or writable.
 */
enum IsotrivStatus isotriv_verify_case(const char *label,
                                       bool orientation_swap,
                                       struct IsotrivCaseReport **out);

/**
 * True iff every recomputed value matches; false for a null report.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
bool isotriv_case_report_all_ok(const struct IsotrivCaseReport *report);

/**
 * K² of the minimal model, or 0 for a null report.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int64_t isotriv_case_report_k2_min(const struct IsotrivCaseReport *report);

/**
 * The report as text (`as_json = false`) or JSON. Free with [`isotriv_string_free`].
 *
 * # Safety
 * `report` must be null or a live handle; `out` null or writable.
 */
enum IsotrivStatus isotriv_case_report_render(const struct IsotrivCaseReport *report,
                                              bool as_json,
                                              char **out);

/**
 * # Safety
 * `report` must be null or a live handle, and is dead afterwards.
 */
void isotriv_case_report_free(struct IsotrivCaseReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, and is dead afterwards.
 */
void isotriv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOTRIV_H */
