#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "va/manifest.hpp"

using namespace va;

TEST_CASE("placeholder") { CHECK(true); }
