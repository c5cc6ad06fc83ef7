#include <doctest.h>

#include "cscycle/syntax.hpp"

TEST_CASE("placeholder test_descent") { CHECK(true); }
