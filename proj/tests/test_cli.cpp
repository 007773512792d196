#include <catch2/catch_amalgamated.hpp>
#include "dissipgen/dissipgen.hpp"
TEST_CASE("placeholder test_cli") { CHECK(true); }
