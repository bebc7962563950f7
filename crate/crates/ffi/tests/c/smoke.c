#include <stdio.h>
#include <string.h>

#include "realform.h"

#define CHECK(call)                                                      \
  do {                                                                   \
    RfStatus s_ = (call);                                                \
    if (s_ != RF_STATUS_OK) {                                            \
      fprintf(stderr, "%s -> %d: %s\n", #call, s_, rf_last_error());     \
      return 1;                                                          \
    }                                                                    \
  } while (0)

int main(void) {
  RfForm *form = NULL;
  size_t dim = 0, rank = 0, ndim = 0, cls = 0, center = 0;
  CHECK(rf_form_from_catalog("AIV", 2, &form));
  CHECK(rf_form_dim(form, &dim));
  CHECK(rf_form_real_rank(form, &rank));
  CHECK(rf_form_verify_jacobi(form));

  RfNilpotent *n = NULL;
  CHECK(rf_nilpotent_from_form(form, 1, &n));
  CHECK(rf_nilpotent_dim(n, &ndim));
  CHECK(rf_nilpotent_class(n, &cls));
  CHECK(rf_nilpotent_center_dim(n, &center));

  int64_t xn[3] = {1, 0, 0}, xd[3] = {1, 1, 1};
  int64_t yn[3] = {0, 1, 0}, yd[3] = {1, 1, 1};
  int64_t zn[3], zd[3];
  CHECK(rf_nilpotent_multiply(n, xn, xd, yn, yd, 3, zn, zd));

  char *json = NULL;
  CHECK(rf_form_table_json(form, &json));
  int has_basis = strstr(json, "\"basis\"") != NULL;
  rf_string_free(json);

  RfForm *bad = NULL;
  RfStatus s = rf_form_from_diagram("type=A rank=3; shaded=0; arrows=;", &bad);

  printf("dim=%zu rank=%zu n=%zu class=%zu center=%zu z=%lld/%lld,%lld/%lld,%lld/%lld json=%d bad=%d\n", dim, rank,
         ndim, cls, center, (long long)zn[0], (long long)zd[0], (long long)zn[1], (long long)zd[1],
         (long long)zn[2], (long long)zd[2], has_basis, (int)s);
  rf_nilpotent_free(n);
  rf_form_free(form);
  return 0;
}
