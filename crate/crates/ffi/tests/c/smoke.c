#include <stdio.h>
#include <string.h>
#include "suffix_nsc.h"

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, \
              #cond);                                                  \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  SnscNfa *a = NULL, *b = NULL, *u = NULL;
  size_t states = 0;
  bool sf = false;
  char *witness = NULL;

  CHECK(snsc_witness("union-pair", 3, 3, &a, &b) == SNSC_STATUS_OK);
  CHECK(snsc_apply(SNSC_OPERATION_UNION, a, b, true, &u) == SNSC_STATUS_OK);
  CHECK(snsc_nfa_state_count(u, &states) == SNSC_STATUS_OK);
  CHECK(states == 5);
  CHECK(snsc_check_suffix_free(a, &sf, &witness) == SNSC_STATUS_OK);
  CHECK(sf && witness == NULL);
  /* b is a suffix of abb: the union itself need not be suffix-free */
  CHECK(snsc_check_suffix_free(u, &sf, &witness) == SNSC_STATUS_OK);
  CHECK(!sf && witness != NULL);
  CHECK(strcmp(witness, "[\"b\",\"abb\"]") == 0);
  snsc_string_free(witness);

  CHECK(snsc_nfa_from_json("{\"alphabet\":[\"a\"]", &a) == SNSC_STATUS_PARSE_ERROR);
  CHECK(snsc_last_error_message() != NULL);
  CHECK(snsc_nfa_state_count(NULL, &states) == SNSC_STATUS_NULL_POINTER);

  snsc_nfa_free(a);
  snsc_nfa_free(b);
  snsc_nfa_free(u);
  printf("ok %s\n", snsc_version());
  return 0;
}
