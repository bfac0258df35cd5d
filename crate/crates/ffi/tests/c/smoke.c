#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "mea.h"

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    MeaPermutation *p = NULL;
    CHECK(mea_generate(8, 0, &p) == MEA_STATUS_OK);
    CHECK(mea_permutation_len(p) == 8);

    uint64_t values[8];
    const uint64_t expected[8] = {4, 5, 1, 8, 3, 6, 2, 7};
    CHECK(mea_permutation_values(p, values, 8) == MEA_STATUS_OK);
    CHECK(memcmp(values, expected, sizeof values) == 0);
    CHECK(mea_permutation_values(p, values, 3) == MEA_STATUS_BUFFER_TOO_SMALL);
    CHECK(mea_last_error_message() != NULL);

    uint64_t inv = 0;
    CHECK(mea_inversion_count(p, &inv) == MEA_STATUS_OK);
    CHECK(inv == 12 && mea_inversion_formula(8) == 12);
    CHECK(mea_sign(p) == 1);

    MeaAlternation alt;
    CHECK(mea_classify_alternation(p, &alt) == MEA_STATUS_OK);
    CHECK(alt == MEA_ALTERNATION_UP_DOWN);

    MeaDecomposition d;
    CHECK(mea_decompose(9, &d) == MEA_STATUS_OK);
    CHECK(d.odd == 1 && d.prefix_len == 3 && d.prefix[0] == 5 && d.child_n == 6);
    CHECK(mea_decompose(2, &d) == MEA_STATUS_SIZE_TOO_SMALL);

    MeaVerifySummary summary;
    CHECK(mea_verify_range(1, 50, 50, &summary) == MEA_STATUS_OK);
    CHECK(summary.failed == 0 && summary.passed > 0);

    char *json = NULL;
    CHECK(mea_stats_json(p, &json) == MEA_STATUS_OK);
    CHECK(strstr(json, "\"inversions\":12") != NULL);
    mea_string_free(json);

    mea_permutation_free(p);
    printf("ok\n");
    return 0;
}
