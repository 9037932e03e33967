#ifndef REVFORGE_H
#define REVFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum RfStatus {
  RF_STATUS_OK = 0,
  RF_STATUS_NULL_POINTER = 1,
  RF_STATUS_INVALID_UTF8 = 2,
  RF_STATUS_SYNTAX = 3,
  RF_STATUS_INVALID_TPO = 4,
  RF_STATUS_INCONSISTENT_INPUT = 5,
  RF_STATUS_UNKNOWN_NAME = 6,
  RF_STATUS_SIZE_GUARD = 7,
  RF_STATUS_INCOMPATIBLE_CONFIG = 8,
  RF_STATUS_SCENARIO = 9,
  RF_STATUS_PANIC = 10,
} RfStatus;

/**
 * The result of a postulate check.
 */
typedef struct RfReport RfReport;

/**
 * A belief state: a total preorder over worlds.
 */
typedef struct RfTpo RfTpo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or null. Valid
 * until the next call into this library on the same thread.
 */
const char *rf_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *rf_version(void);

void rf_string_free(char *s);

/**
 * The state where every world over `atoms` atoms is equally plausible.
 */
enum RfStatus rf_tpo_uniform(uint32_t atoms, struct RfTpo **out);

/**
 * Parses `[{00} < {01,10,11}]`, most plausible block first.
 */
enum RfStatus rf_tpo_parse(const char *text, struct RfTpo **out);

void rf_tpo_free(struct RfTpo *t);

uint32_t rf_tpo_atoms(const struct RfTpo *t);

enum RfStatus rf_tpo_render(const struct RfTpo *t, char **out);

/**
 * Whether `formula` holds in every most plausible world.
 */
enum RfStatus rf_tpo_believes(const struct RfTpo *t, const char *formula, bool *out);

/**
 * Revises by a set of formulas. `op` is an operator string such as
 * `parallel(base=natural, finisher=lex, agg=stq)`; null selects the
 * default operator.
 */
enum RfStatus rf_parallel_revise(const struct RfTpo *t,
                                 const char *op,
                                 const char *const *formulas,
                                 size_t count,
                                 struct RfTpo **out);

/**
 * Contracts by a set of formulas. `op` is an operator string such as
 * `parallel-contract(base=natural-contract, agg=stq)`, or null.
 */
enum RfStatus rf_parallel_contract(const struct RfTpo *t,
                                   const char *op,
                                   const char *const *formulas,
                                   size_t count,
                                   struct RfTpo **out);

/**
 * Serial revision by one formula; `op` is `natural`, `lex` or `restrained`.
 */
enum RfStatus rf_serial_revise(const struct RfTpo *t,
                               const char *op,
                               const char *formula,
                               struct RfTpo **out);

/**
 * Checks a postulate. `op` is a parallel operator string or null; serial
 * postulates use its base operator. `samples == 0` enumerates every
 * instance (at most 2 atoms); otherwise `samples` instances are drawn
 * with `seed`.
 */
enum RfStatus rf_check(const char *postulate,
                       uint32_t atoms,
                       const char *op,
                       uint64_t samples,
                       uint64_t seed,
                       struct RfReport **out);

void rf_report_free(struct RfReport *r);

/**
 * Whether the outcome matches the postulate's expected status.
 */
bool rf_report_passed(const struct RfReport *r);

uint64_t rf_report_checked(const struct RfReport *r);

uint64_t rf_report_violation_count(const struct RfReport *r);

enum RfStatus rf_report_json(const struct RfReport *r, char **out);

/**
 * Runs a JSON scenario and renders its trace as `text`, `json` or `dot`.
 */
enum RfStatus rf_run_scenario(const char *scenario_json, const char *format, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REVFORGE_H */
