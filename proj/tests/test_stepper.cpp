#include <doctest.h>
TEST_CASE("placeholder test_stepper") { CHECK(true); }
