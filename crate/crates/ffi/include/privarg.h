#ifndef PRIVARG_H
#define PRIVARG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum PrivargStatus {
  PRIVARG_STATUS_OK = 0,
  PRIVARG_STATUS_INVALID_INPUT = 1,
  PRIVARG_STATUS_PARSE = 2,
  PRIVARG_STATUS_PROTOCOL = 3,
  PRIVARG_STATUS_ENGINE = 4,
  PRIVARG_STATUS_IO = 5,
  PRIVARG_STATUS_RESOURCE_LIMIT = 6,
  PRIVARG_STATUS_NULL_POINTER = 7,
  PRIVARG_STATUS_PANIC = 8,
} PrivargStatus;

/*
 A generated or parsed dataset.
 */
typedef struct PrivargDataset PrivargDataset;

/*
 A finished dispute.
 */
typedef struct PrivargOutcome PrivargOutcome;

/*
 Message of the last failed call on this thread, or null. The pointer is
 valid until the next failing call on the same thread.
 */
const char *privarg_last_error(void);

/*
 Library version as a static nul-terminated string.
 */
const char *privarg_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void privarg_string_free(char *s);

/*
 Generates a dataset; the ratios of ordinary premises and defeasible
 rules keep their defaults.

 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum PrivargStatus privarg_dataset_generate(size_t dispute_amount,
                                            size_t dispute_size,
                                            size_t max_argument_size,
                                            size_t max_branches,
                                            uint64_t seed,
                                            struct PrivargDataset **out);

/*
 # Safety
 `text` must be a nul-terminated string; `out` a valid pointer.
 */
enum PrivargStatus privarg_dataset_parse(const char *text, struct PrivargDataset **out);

/*
 # Safety
 `ds` must be a live dataset handle; `out` a valid pointer.
 */
enum PrivargStatus privarg_dataset_serialize(const struct PrivargDataset *ds, char **out);

/*
 Number of cases, or 0 for a null handle.

 # Safety
 `ds` must be null or a live dataset handle.
 */
size_t privarg_dataset_case_count(const struct PrivargDataset *ds);

/*
 # Safety
 `ds` must be null or a handle from this library, not yet freed.
 */
void privarg_dataset_free(struct PrivargDataset *ds);

/*
 Runs one dispute. Teams are comma-separated agent references: `indifferent`,
 a user type such as `amateur`, or a behavior such as `shortest:all_args:50`.

 # Safety
 `ds` must be a live dataset handle, the strings nul-terminated and `out`
 a valid pointer.
 */
enum PrivargStatus privarg_dispute_run(const struct PrivargDataset *ds,
                                       const char *case_id,
                                       const char *proponent_team,
                                       const char *opponent_team,
                                       uint64_t seed,
                                       struct PrivargOutcome **out);

/*
 0 when the proponent won, 1 when the opponent won, -1 for a null handle.

 # Safety
 `o` must be null or a live outcome handle.
 */
int32_t privarg_outcome_winner(const struct PrivargOutcome *o);

/*
 Participants, proponents first, or 0 for a null handle.

 # Safety
 `o` must be null or a live outcome handle.
 */
size_t privarg_outcome_participant_count(const struct PrivargOutcome *o);

/*
 Number of extensions made before the forfeit.

 # Safety
 `o` must be null or a live outcome handle.
 */
size_t privarg_outcome_move_count(const struct PrivargOutcome *o);

/*
 # Safety
 `o` must be a live outcome handle; `out` a valid pointer.
 */
enum PrivargStatus privarg_outcome_concealment(const struct PrivargOutcome *o,
                                               size_t participant,
                                               double *out);

/*
 Move log, one line per extension.

 # Safety
 `o` must be a live outcome handle; `out` a valid pointer.
 */
enum PrivargStatus privarg_outcome_trace(const struct PrivargOutcome *o, char **out);

/*
 Final argument graph in DOT.

 # Safety
 `o` must be a live outcome handle; `out` a valid pointer.
 */
enum PrivargStatus privarg_outcome_dot(const struct PrivargOutcome *o, char **out);

/*
 # Safety
 `o` must be null or a handle from this library, not yet freed.
 */
void privarg_outcome_free(struct PrivargOutcome *o);

#endif  /* PRIVARG_H */
