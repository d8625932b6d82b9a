#include <stdio.h>
#include <string.h>
#include "isotriv.h"

#define CHECK(c) do { if (!(c)) { fprintf(stderr, "failed: %s (line %d)\n", #c, __LINE__); return 1; } } while (0)

int main(void) {
    IsotrivSingularity s;
    CHECK(isotriv_singularity(7, 2, &s) == ISOTRIV_STATUS_OK);
    CHECK(s.q_prime == 4 && s.length == 2 && s.b_num == 48 && s.b_den == 7);
    CHECK(isotriv_singularity(6, 3, &s) == ISOTRIV_STATUS_INVALID_ARGUMENT);
    CHECK(isotriv_last_error_message() != NULL);

    IsotrivTable *t = NULL;
    CHECK(isotriv_main_theorem(2, &t) == ISOTRIV_STATUS_OK);
    CHECK(isotriv_table_len(t) == 15);
    IsotrivRow r;
    CHECK(isotriv_table_row(t, 0, &r) == ISOTRIV_STATUS_OK);
    CHECK(r.k2 == 5 && r.g_c == 3 && r.minimal);
    CHECK(isotriv_table_row(t, 15, &r) == ISOTRIV_STATUS_OUT_OF_RANGE);
    char *json = NULL;
    CHECK(isotriv_table_json(t, &json) == ISOTRIV_STATUS_OK);
    CHECK(strstr(json, "\"group_id\":\"G(168,42)\"") != NULL);
    isotriv_string_free(json);
    isotriv_table_free(t);

    IsotrivCaseReport *rep = NULL;
    CHECK(isotriv_verify_case("3u", false, &rep) == ISOTRIV_STATUS_OK);
    CHECK(isotriv_case_report_all_ok(rep));
    CHECK(isotriv_case_report_k2_min(rep) == 3);
    isotriv_case_report_free(rep);
    CHECK(isotriv_verify_case("nope", false, &rep) == ISOTRIV_STATUS_UNKNOWN_CASE);
    printf("ok\n");
    return 0;
}
