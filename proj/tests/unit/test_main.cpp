#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <omp.h>

// Several threads even on a single core, so the OpenMP paths really split
// their loops when compared against the serial ones.
int main(int argc, char** argv) {
  omp_set_num_threads(4);
  doctest::Context context(argc, argv);
  return context.run();
}
