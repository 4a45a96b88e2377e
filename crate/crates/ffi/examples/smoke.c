/* Minimal C client: cc smoke.c -I../include -L<target dir> -lpolyval_ffi -lm -lpthread -ldl */
#include <stdio.h>
#include <string.h>

#include "polyval.h"

static int fail(const char *what) {
    const char *msg = pv_last_error();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    PvGeometry *g = NULL;
    bool pass = false;
    if (pv_geometry_pg2(3, &g) != PV_STATUS_OK) return fail("pg2");
    if (pv_geometry_check_gp(g, 3, &pass) != PV_STATUS_OK || !pass) return fail("check_gp");
    if (pv_geometry_check_valuation(g, 0, 100000, &pass, NULL) != PV_STATUS_OK || !pass) return fail("valuation");
    pv_geometry_free(g);

    int64_t y[] = {0, 1, 0, 1};
    PvSequence *s = NULL;
    PvCyclo *a = NULL;
    char *text = NULL;
    if (pv_sequence_new(y, 4, &s) != PV_STATUS_OK) return fail("sequence");
    if (pv_sequence_slope(s, &a) != PV_STATUS_OK) return fail("slope");
    if (pv_cyclo_to_string(a, &text) != PV_STATUS_OK) return fail("to_string");
    printf("slope %s\n", text);
    int ok = strcmp(text, "-\xe2\x88\x9a" "3/2") == 0;
    pv_string_free(text);
    pv_cyclo_free(a);
    pv_sequence_free(s);

    if (pv_geometry_from_json("{\"points\": [1,", &g) != PV_STATUS_PARSE_ERROR) return fail("parse error expected");
    printf("parse error: %s\n", pv_last_error());
    return ok ? 0 : 1;
}
