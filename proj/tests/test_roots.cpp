// Copyright 2026 The teamgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>

#include <gtest/gtest.h>

#include "teamgames/error.hpp"
#include "teamgames/roots.hpp"

namespace teamgames::roots {
namespace {

TEST(Bisect, FindsSquareRootOfTwo) {
  const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 0.0);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-15);
}

TEST(Bisect, RespectsTolerance) {
  const double r = bisect([](double x) { return x - 0.3; }, 0.0, 1.0, 1e-3);
  EXPECT_NEAR(r, 0.3, 1e-3);
}

TEST(Bisect, ReturnsExactEndpointRoot) {
  EXPECT_EQ(bisect([](double x) { return x; }, 0.0, 1.0, 0.0), 0.0);
  EXPECT_EQ(bisect([](double x) { return x - 1.0; }, 0.0, 1.0, 0.0), 1.0);
}

TEST(Bisect, RejectsIntervalWithoutSignChange) {
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 0.0), InputError);
}

TEST(Bisect, NeverEvaluatesSuppliedEndpoints) {
  // log is -inf at 0; the caller supplies the sign instead.
  const double r = bisect([](double x) { return std::log(x) + 1.0; }, 0.0, 1.0, -1, 0.0);
  EXPECT_NEAR(r, std::exp(-1.0), 1e-15);
}

TEST(ScanSignChanges, CountsRootsOfSine) {
  const auto nodes = linspace(0.1, 10.0, 1000);
  const auto brackets = scan_sign_changes([](double x) { return std::sin(x); }, nodes);
  ASSERT_EQ(brackets.size(), 3u);  // pi, 2 pi, 3 pi
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_LE(brackets[k].lo, M_PI * (k + 1));
    EXPECT_GE(brackets[k].hi, M_PI * (k + 1));
  }
}

TEST(ScanSignChanges, ExactZeroGivesDegenerateBracket) {
  const std::vector<double> nodes{-1.0, 0.0, 1.0};
  const auto brackets = scan_sign_changes([](double x) { return x; }, nodes);
  ASSERT_EQ(brackets.size(), 1u);
  EXPECT_EQ(brackets[0].lo, 0.0);
  EXPECT_EQ(brackets[0].hi, 0.0);
}

TEST(Linspace, EndsExactlyOnBounds) {
  const auto nodes = linspace(0.0, 0.3, 7);
  ASSERT_EQ(nodes.size(), 8u);
  EXPECT_EQ(nodes.front(), 0.0);
  EXPECT_EQ(nodes.back(), 0.3);
}

}  // namespace
}  // namespace teamgames::roots
