#include <doctest.h>
TEST_CASE("placeholder test_operator") { CHECK(true); }
