#include <doctest.h>

TEST_SUITE_BEGIN("heataverage");
TEST_SUITE_END();
