#include <doctest.h>
TEST_CASE("placeholder test_boundary") { CHECK(true); }
