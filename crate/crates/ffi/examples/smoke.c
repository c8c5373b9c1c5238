/* Minimal consumer of the C ABI; see the workspace README for build
 * instructions. */
#include <assert.h>
#include <stdio.h>
#include "torsionpair.h"

int main(void) {
    tp_extension_t *x = NULL;
    assert(tp_extension_mult_by_d(6, &x) == TP_STATUS_T_OK);

    tp_character_t *c = NULL;
    assert(tp_extension_pairing(x, &c) == TP_STATUS_T_OK);

    int64_t num = 0, den = 0;
    assert(tp_character_value(c, 0, &num, &den) == TP_STATUS_T_OK);
    printf("pairing of the order-6 class at its generator: %lld/%lld\n",
           (long long)num, (long long)den);

    uint8_t ok = 0;
    assert(tp_crosscheck(6, &ok) == TP_STATUS_T_OK);
    printf("three-pipeline crosscheck at d = 6: %s\n", ok ? "PASS" : "FAIL");

    tp_character_free(c);
    tp_extension_free(x);
    return ok ? 0 : 1;
}
