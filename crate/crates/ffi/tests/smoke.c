#include <stdio.h>
#include <string.h>
#include "tjm.h"

int main(void) {
    TjmExpr *a = NULL, *b = NULL;
    TjmVerdict *v = NULL;
    if (tjm_expr_parse("char(2,chi)", &a) != TJM_ERROR_OK) return 1;
    if (tjm_expr_parse("char(2,mu)", &b) != TJM_ERROR_OK) return 2;
    if (tjm_filtration(2, 2, a, b, &v) != TJM_ERROR_OK) return 3;
    if (tjm_verdict_status(v) != TJM_STATUS_NON_ZERO) return 4;
    char *m = tjm_verdict_module(v);
    printf("%s\n", m);
    tjm_string_free(m);
    tjm_verdict_free(v);
    if (tjm_expr_parse("Z{[0..", &a) != TJM_ERROR_PARSE) return 5;
    if (strstr(tjm_last_error_message(), "parse error") == NULL) return 6;
    tjm_expr_free(b);
    return 0;
}
