// Copyright 2026 The nosig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nosig/rng.h"

#include <set>

#include <gtest/gtest.h>

namespace {

using nosig::Philox4x32;

TEST(Philox4x32, KnownAnswers) {
    EXPECT_EQ(Philox4x32::generate({0, 0, 0, 0}, {0, 0}),
              (Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Philox4x32::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Philox4x32::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox4x32, SameSeedAndStreamReproduce) {
    Philox4x32 a(42, 7);
    Philox4x32 b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Philox4x32, StreamsDiffer) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 100; ++s) firsts.insert(Philox4x32(1, s)());
    EXPECT_EQ(firsts.size(), 100u);
    EXPECT_NE(Philox4x32(1, 0)(), Philox4x32(2, 0)());
}

TEST(Philox4x32, Uniform01Range) {
    Philox4x32 rng(3, 0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

TEST(RngSpec, EngineMatchesDirectConstruction) {
    nosig::RngSpec spec{9, 4};
    auto a = spec.engine();
    Philox4x32 b(9, 4);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
}

}  // namespace
