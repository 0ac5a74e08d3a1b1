#include <doctest.h>

TEST_SUITE_BEGIN("twisted");
TEST_SUITE_END();
