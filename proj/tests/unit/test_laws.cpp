#include "../support/laws.hpp"
#include "doctest.h"

TEST_CASE("kernel laws hold on random inputs") {
  for (const auto& law : flatpde::testing::kernel_laws(99, 1000)) {
    INFO(law.law << ": " << law.first_failure);
    CHECK(law.failures == 0);
    CHECK(law.cases == 1000);
  }
}
