#include <math.h>
#include <stdio.h>
#include <string.h>

#include "magspec.h"

int main(int argc, char **argv) {
    if (argc != 2) {
        return 10;
    }
    MgsGraph *g = NULL;
    if (mgs_graph_load(argv[1], &g) != MGS_STATUS_OK) {
        fprintf(stderr, "%s\n", mgs_last_error_message());
        return 11;
    }
    size_t len = 0;
    if (mgs_spectrum(g, 0.0, NULL, 0, &len) != MGS_STATUS_BUFFER_TOO_SMALL || len != 5) {
        return 12;
    }
    double values[5];
    if (mgs_spectrum(g, 0.0, values, 5, &len) != MGS_STATUS_OK) {
        return 13;
    }
    double golden = (3.0 - sqrt(5.0)) / 2.0;
    if (fabs(values[1] - golden) > 1e-12) {
        return 14;
    }
    char *cert = NULL;
    if (mgs_certify(g, "{\"operation\": \"delete-vertex\", \"vertex\": 5}", &cert) != MGS_STATUS_OK) {
        fprintf(stderr, "%s\n", mgs_last_error_message());
        return 15;
    }
    int ok = strstr(cert, "\"operation\":\"delete-vertex\"") != NULL;
    mgs_string_free(cert);
    mgs_graph_free(g);
    printf("%s\n", ok ? "ok" : "bad certificate");
    return ok ? 0 : 16;
}
