/* Compile-only check that the public header is valid C. */

#include "meantest/meantest.h"

const char* meantest_header_check(void) { return meantest_version(); }
