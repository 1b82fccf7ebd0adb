#include <stdio.h>

#include "plait/plait.h"

int main(void) {
  double a = 0.0;
  if (plait_threshold(4, &a) != PLAIT_OK) return 1;
  plait_system* sys = NULL;
  if (plait_system_builtin("plaiting", &sys) != PLAIT_OK) return 1;
  char* json = NULL;
  plait_status st = plait_stage_json(sys, 2, &json);
  plait_system_free(sys);
  if (st != PLAIT_OK) return 1;
  plait_string_free(json);
  printf("%s a*=%.9f\n", plait_version(), a);
  return 0;
}
