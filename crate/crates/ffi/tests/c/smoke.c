#include <stdio.h>
#include <string.h>
#include "lienil.h"

int main(void) {
    size_t ks[4] = {1, 1, 1, 1};
    LienilAlgebra *a = NULL;
    if (lienil_algebra_block(ks, 4, true, 0, &a) != LIENIL_STATUS_OK) return 1;
    if (lienil_algebra_dim(a) != 7) return 2;

    bool holds = false;
    char *witness = NULL;
    if (lienil_satisfies_ln(a, 2, &holds, &witness) != LIENIL_STATUS_OK) return 3;
    if (holds || witness == NULL) return 4;
    printf("%s\n", witness);
    lienil_string_free(witness);

    char *center = NULL;
    if (lienil_lie_center_json(a, 2, &center) != LIENIL_STATUS_OK) return 5;
    printf("%s\n", center);
    lienil_string_free(center);
    lienil_algebra_free(a);

    LienilAlgebra *e = NULL;
    if (lienil_algebra_grassmann(3, 2, &e) != LIENIL_STATUS_FIELD) return 6;
    if (strlen(lienil_last_error()) == 0) return 7;
    return 0;
}
