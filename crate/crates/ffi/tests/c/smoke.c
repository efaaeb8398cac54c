#include <math.h>
#include <stdio.h>
#include "torfilter.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);        \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    const int64_t quincunx[4] = {1, 1, 1, -1};
    TfDilation *a = NULL;
    CHECK(tf_dilation_new(quincunx, 2, &a) == TF_STATUS_OK);
    uint64_t q = 0;
    CHECK(tf_dilation_q(a, &q) == TF_STATUS_OK && q == 2);

    int64_t num[4], den[4];
    CHECK(tf_dilation_dual_group(a, num, den, 4) == TF_STATUS_OK);
    CHECK(num[2] == 1 && den[2] == 2 && num[3] == 1 && den[3] == 2);

    const int64_t ks[4] = {0, 0, 1, 0};
    const double re[2] = {1.0, 1.0}, im[2] = {0.0, 0.0};
    TfFilter *m0 = NULL;
    CHECK(tf_filter_from_coeffs(2, ks, re, im, 2, &m0) == TF_STATUS_OK);
    double residual = 1.0;
    bool pass = false;
    CHECK(tf_validate_low_pass(m0, a, 1e-12, &residual, &pass) == TF_STATUS_OK && pass);

    const double origin[2] = {0.0, 0.0};
    double phi_re = 0.0, phi_im = 0.0;
    CHECK(tf_scaling_fourier(m0, a, origin, 2, 40, &phi_re, &phi_im) == TF_STATUS_OK);
    CHECK(phi_re == 1.0 && phi_im == 0.0);

    const int64_t singular[4] = {1, 1, 2, 2};
    TfDilation *bad = NULL;
    CHECK(tf_dilation_new(singular, 2, &bad) == TF_STATUS_SINGULAR && bad == NULL);
    CHECK(tf_last_error_message() != NULL);

    tf_filter_free(m0);
    tf_dilation_free(a);
    printf("ok %s\n", tf_version());
    return 0;
}
