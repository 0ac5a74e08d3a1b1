#include <doctest.h>

TEST_SUITE_BEGIN("correlations");
TEST_SUITE_END();
