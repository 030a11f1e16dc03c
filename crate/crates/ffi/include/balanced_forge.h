#ifndef BALANCED_FORGE_H
#define BALANCED_FORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum BfMethod {
  BF_METHOD_DIRECT = 0,
  BF_METHOD_DUALITY = 1,
  BF_METHOD_ORACLE = 2,
} BfMethod;

/**
 * Result code of every fallible call.
 */
typedef enum BfStatus {
  BF_STATUS_OK = 0,
  BF_STATUS_NULL_POINTER = 1,
  BF_STATUS_INVALID_INPUT = 2,
  BF_STATUS_OUT_OF_RANGE = 3,
  BF_STATUS_PARSE = 4,
  BF_STATUS_VALIDATION = 5,
  BF_STATUS_VERSION = 6,
  BF_STATUS_INCOMPLETE = 7,
  BF_STATUS_IO = 8,
  BF_STATUS_PANIC = 9,
} BfStatus;

typedef struct BfCatalog BfCatalog;

typedef struct BfGame BfGame;

typedef struct BfHypergraph BfHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *bf_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *bf_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void bf_string_free(char *s);

/**
 * Enumerates the minimal balanced collections on `n` players.
 *
 * # Safety
 * `out` must be a valid pointer; on success it receives a new handle.
 */
enum BfStatus bf_catalog_enumerate(size_t n, enum BfMethod method, struct BfCatalog **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BfStatus bf_catalog_load(const char *path, struct BfCatalog **out);

/**
 * # Safety
 * `cat` must be a live handle and `path` a NUL-terminated string.
 */
enum BfStatus bf_catalog_save(const struct BfCatalog *cat, const char *path);

/**
 * Number of collections, or 0 for NULL.
 *
 * # Safety
 * `cat` must be NULL or a live handle.
 */
size_t bf_catalog_len(const struct BfCatalog *cat);

/**
 * Player count, or 0 for NULL.
 *
 * # Safety
 * `cat` must be NULL or a live handle.
 */
size_t bf_catalog_players(const struct BfCatalog *cat);

/**
 * Text form of collection `index`, e.g. `n=3; [{1,2}:1/2, {1,3}:1/2, {2,3}:1/2]`.
 *
 * # Safety
 * `cat` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_catalog_collection(const struct BfCatalog *cat, size_t index, char **out);

/**
 * # Safety
 * `cat` must be NULL or a handle from this library, freed once.
 */
void bf_catalog_free(struct BfCatalog *cat);

/**
 * Parses a game from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BfStatus bf_game_from_json(const char *json, struct BfGame **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum BfStatus bf_game_random(size_t n, uint64_t seed, uint64_t magnitude, struct BfGame **out);

/**
 * # Safety
 * `game` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_game_to_json(const struct BfGame *game, char **out);

/**
 * Decides whether the core is nonempty. With a NULL `catalog` the linear
 * program decides; otherwise the catalog's collections do. The certificate
 * is written as JSON: `{"nonempty":true,"point":[...]}` or
 * `{"nonempty":false,"collection":{...},"efficiency":"..."}`.
 *
 * # Safety
 * `game` must be a live handle, `catalog` NULL or a live handle, and both
 * out-pointers valid. `certificate` may be NULL to skip it.
 */
enum BfStatus bf_game_core(const struct BfGame *game,
                           const struct BfCatalog *catalog,
                           bool *nonempty,
                           char **certificate);

/**
 * # Safety
 * `game` must be NULL or a handle from this library, freed once.
 */
void bf_game_free(struct BfGame *game);

/**
 * Parses `n=3; edges=[{1,2},{1,3},{2,3}]`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BfStatus bf_hypergraph_parse(const char *text, struct BfHypergraph **out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_hypergraph_to_string(const struct BfHypergraph *h, char **out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_hypergraph_dual(const struct BfHypergraph *h, struct BfHypergraph **out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_hypergraph_is_minimally_uniform(const struct BfHypergraph *h, bool *out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_hypergraph_is_minimally_regular(const struct BfHypergraph *h, bool *out);

/**
 * Every partition into minimally uniform blocks, as a JSON list of lists
 * of blocks.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_hypergraph_decompose_all(const struct BfHypergraph *h, char **out);

/**
 * # Safety
 * `h` must be NULL or a handle from this library, freed once.
 */
void bf_hypergraph_free(struct BfHypergraph *h);

/**
 * Spanning `k`-uniform hypergraphs with `p` edges on exactly `n` labeled
 * nodes, written in decimal.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BfStatus bf_count_spanning(uint64_t n, uint64_t k, uint64_t p, char **out);

/**
 * `k`-uniform hypergraphs with `p` edges on `n` nodes, spanning or not.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BfStatus bf_count_total(uint64_t n, uint64_t k, uint64_t p, char **out);

/**
 * Spanning counts summed over node counts `k..=n_max`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BfStatus bf_count_cumulative(uint64_t n_max, uint64_t k, uint64_t p, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BALANCED_FORGE_H */
