#include <doctest.h>

#include "cscycle/syntax.hpp"

TEST_CASE("placeholder test_normalize") { CHECK(true); }
