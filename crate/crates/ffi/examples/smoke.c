#include <stdio.h>
#include "cod.h"

int main(void) {
    CodDesign *d = NULL;
    if (cod_design_construct(2, &d) != COD_STATUS_OK) {
        fprintf(stderr, "%s\n", cod_last_error_message());
        return 1;
    }
    bool ok = false;
    cod_is_bcod(d, &ok);
    char *text = NULL;
    cod_design_serialize(d, &text);
    printf("%s\nbcod=%d\n", text, ok);
    cod_string_free(text);
    cod_design_free(d);
    return ok ? 0 : 1;
}
