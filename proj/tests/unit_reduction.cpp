#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "va/reduction.hpp"
#include "va/presets.hpp"

using namespace va;

TEST_CASE("placeholder") { CHECK(true); }
