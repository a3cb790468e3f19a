#include <doctest.h>
TEST_CASE("placeholder test_runner") { CHECK(true); }
