#include <stdio.h>
#include <string.h>

#include "balanced_forge.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            const char *msg = bf_last_error_message();                \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, msg ? msg : "no message");                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    BfCatalog *cat = NULL;
    CHECK(bf_catalog_enumerate(4, BF_METHOD_DIRECT, &cat) == BF_STATUS_OK);
    CHECK(bf_catalog_len(cat) == 42);

    BfHypergraph *h = NULL;
    CHECK(bf_hypergraph_parse("n=3; edges=[{1,2},{1,3},{2,3}]", &h) == BF_STATUS_OK);
    bool minimal = false;
    CHECK(bf_hypergraph_is_minimally_uniform(h, &minimal) == BF_STATUS_OK && minimal);

    char *count = NULL;
    CHECK(bf_count_cumulative(3, 2, 3, &count) == BF_STATUS_OK);
    CHECK(strcmp(count, "8") == 0);
    bf_string_free(count);

    BfGame *g = NULL;
    CHECK(bf_game_random(3, 1, 100, &g) == BF_STATUS_OK);
    bool nonempty = false;
    CHECK(bf_game_core(g, NULL, &nonempty, NULL) == BF_STATUS_OK);

    CHECK(bf_catalog_enumerate(9, BF_METHOD_DIRECT, &cat) == BF_STATUS_OUT_OF_RANGE);
    CHECK(bf_last_error_message() != NULL);

    printf("ok %s\n", bf_version());
    bf_game_free(g);
    bf_hypergraph_free(h);
    bf_catalog_free(cat);
    return 0;
}
