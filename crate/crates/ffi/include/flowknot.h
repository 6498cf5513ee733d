#ifndef FLOWKNOT_H
#define FLOWKNOT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define FK_COEFF_GF2 0

#define FK_COEFF_INT 1

#define FK_POLICY_RIGHT 0

#define FK_POLICY_LEFT 1

/**
 * Status codes returned by every fallible function.
 */
typedef enum FkStatus {
  FK_STATUS_OK = 0,
  FK_STATUS_NULL_POINTER = 1,
  FK_STATUS_INVALID_UTF8 = 2,
  FK_STATUS_PARSE = 3,
  FK_STATUS_INVALID_INPUT = 4,
  FK_STATUS_OUT_OF_RANGE = 5,
  FK_STATUS_COMPUTATION = 6,
  FK_STATUS_PANIC = 7,
} FkStatus;

/**
 * A grid diagram.
 */
typedef struct FkGrid FkGrid;

/**
 * A planar diagram.
 */
typedef struct FkLink FkLink;

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *fk_last_error(void);

/**
 * Library version as a static string.
 */
const char *fk_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void fk_string_free(char *s);

/**
 * Parses a PD code (`PD[X[..], ..]`, JSON, or `unknots=k`).
 *
 * # Safety
 * `pd` must be a NUL-terminated string and `out` writable.
 */
enum FkStatus fk_link_parse(const char *pd, struct FkLink **out);

/**
 * # Safety
 * `link` must be NULL or a handle from `fk_link_parse`, freed once.
 */
void fk_link_free(struct FkLink *link);

/**
 * # Safety
 * `link` must be a live handle and `out` writable.
 */
enum FkStatus fk_link_crossings(const struct FkLink *link, size_t *out);

/**
 * Khovanov complex report as JSON.
 *
 * # Safety
 * `link` must be a live handle and `out` writable.
 */
enum FkStatus fk_khovanov_json(const struct FkLink *link, int32_t coeff, char **out);

/**
 * Flow category report as JSON.
 *
 * # Safety
 * `link` must be a live handle and `out` writable.
 */
enum FkStatus fk_flowcat_json(const struct FkLink *link, int32_t coeff, int32_t policy, char **out);

/**
 * Report for the cube flow category of dimension `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum FkStatus fk_hypercube_json(size_t n, char **out);

/**
 * Parses a grid diagram (text or JSON).
 *
 * # Safety
 * `grid` must be a NUL-terminated string and `out` writable.
 */
enum FkStatus fk_grid_parse(const char *grid, struct FkGrid **out);

/**
 * # Safety
 * `grid` must be NULL or a handle from `fk_grid_parse`, freed once.
 */
void fk_grid_free(struct FkGrid *grid);

/**
 * # Safety
 * `grid` must be a live handle and `out` writable.
 */
enum FkStatus fk_grid_size(const struct FkGrid *grid, size_t *out);

/**
 * Total rank of tilde grid homology.
 *
 * # Safety
 * `grid` must be a live handle and `out` writable.
 */
enum FkStatus fk_grid_rank(const struct FkGrid *grid, int32_t coeff, size_t *out);

/**
 * Grid homology report as JSON; with `cd` nonzero it includes the
 * obstruction complex up to index `mu_max`.
 *
 * # Safety
 * `grid` must be a live handle and `out` writable.
 */
enum FkStatus fk_grid_json(const struct FkGrid *grid,
                           int32_t coeff,
                           bool cd,
                           int32_t mu_max,
                           char **out);

/**
 * Positive domain report as JSON.
 *
 * # Safety
 * `grid` must be a live handle and `out` writable.
 */
enum FkStatus fk_gridflow_json(const struct FkGrid *grid, int32_t mu_max, char **out);

#endif  /* FLOWKNOT_H */
