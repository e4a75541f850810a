#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "va/presets.hpp"

using namespace va;

TEST_CASE("catalog names build") {
  CHECK(PresetCatalog::names().size() == 5);
}
