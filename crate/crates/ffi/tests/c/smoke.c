#include <stdio.h>
#include <string.h>

#include "absorder.h"

int main(void) {
    AbsorderPoset *p = NULL;
    if (absorder_absolute_order_new("a3", 0, &p) != ABSORDER_STATUS_OK) {
        fprintf(stderr, "build: %s\n", absorder_last_error_message());
        return 1;
    }
    uint64_t ranks[8];
    size_t n = 0;
    if (absorder_poset_rank_sequence(p, ranks, 8, &n) != ABSORDER_STATUS_OK || n != 4) {
        return 2;
    }
    size_t size = 0;
    if (absorder_max_k_family(p, 2, &size) != ABSORDER_STATUS_OK) {
        return 3;
    }
    bool strong = false;
    if (absorder_is_strong_sperner(p, &strong) != ABSORDER_STATUS_OK || !strong) {
        return 4;
    }
    char *text = NULL;
    if (absorder_factorize("a2", "(1 3 2)", &text) != ABSORDER_STATUS_OK || strcmp(text, "(2 3)(1 2)") != 0) {
        return 5;
    }
    absorder_string_free(text);
    if (absorder_factorize("a2", "(1 5)", &text) != ABSORDER_STATUS_PARSE) {
        return 6;
    }
    printf("%zu %llu %llu %llu %llu %zu\n", absorder_poset_len(p), (unsigned long long)ranks[0],
           (unsigned long long)ranks[1], (unsigned long long)ranks[2], (unsigned long long)ranks[3], size);
    absorder_poset_free(p);
    return 0;
}
