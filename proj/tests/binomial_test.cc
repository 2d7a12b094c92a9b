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

#include "nosig/binomial.h"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

namespace {

using nosig::BigInt;
using Wide = boost::multiprecision::cpp_bin_float_50;

// Pascal's triangle by repeated addition, independent of the multiplicative
// recurrence used by binomial_row.
std::vector<std::vector<BigInt>> pascal_triangle(int n_max) {
    std::vector<std::vector<BigInt>> rows(n_max + 1);
    rows[0] = {1};
    for (int n = 1; n <= n_max; ++n) {
        rows[n].assign(n + 1, 0);
        rows[n][0] = rows[n][n] = 1;
        for (int k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
    }
    return rows;
}

Wide exact_log_weight(int n, int k) {
    Wide c(nosig::binomial(n, k));
    return log(c) - n * log(Wide(2));
}

Wide lgamma_log_weight(std::int64_t n, std::int64_t k) {
    using boost::math::lgamma;
    return lgamma(Wide(n + 1)) - lgamma(Wide(k + 1)) - lgamma(Wide(n - k + 1)) - n * log(Wide(2));
}

TEST(LogBinomialWeight, SmallCases) {
    EXPECT_NEAR(nosig::log_binomial_weight(2, 1), std::log(0.5), 1e-15);
    EXPECT_EQ(nosig::log_binomial_weight(0, 0), 0.0);
    EXPECT_NEAR(nosig::log_binomial_weight(1, 0), std::log(0.5), 1e-15);
    EXPECT_EQ(nosig::log_binomial_weight(5, -1), -std::numeric_limits<double>::infinity());
    EXPECT_EQ(nosig::log_binomial_weight(5, 6), -std::numeric_limits<double>::infinity());
}

TEST(LogBinomialWeight, MatchesLogGammaAtThousand) {
    double got = nosig::log_binomial_weight(1000, 500);
    double want = static_cast<double>(lgamma_log_weight(1000, 500));
    EXPECT_NEAR(got, want, 1e-13);
    EXPECT_NEAR(std::exp(got) / std::exp(want), 1.0, 1e-13);
}

TEST(LogBinomialWeight, MatchesExactIntegersForEveryK) {
    for (int n : {1, 2, 3, 7, 15, 16, 17, 31, 36, 64, 81, 200, 501, 1200}) {
        for (int k = 0; k <= n; ++k) {
            Wide want = exact_log_weight(n, k);
            double got = nosig::log_binomial_weight(n, k);
            // |got - want| is the relative error of exp(got). Below the
            // smallest normal double exp(got) is meaningless; there ask for
            // the log itself to be accurate to 1e-15.
            Wide tol = want > -708 ? Wide(1e-13) : 1e-15 * abs(want);
            ASSERT_LT(abs(Wide(got) - want), tol) << "n=" << n << " k=" << k;
        }
    }
}

TEST(LogBinomialWeight, MatchesLogGammaUpToOneMillion) {
    for (std::int64_t n : {5000LL, 100000LL, 1000000LL}) {
        auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
        for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, n / 3, n / 2 - 5 * root, n / 2, n / 2 + 1,
                               n - 1, n}) {
            Wide want = lgamma_log_weight(n, k);
            double got = nosig::log_binomial_weight(n, k);
            // Tail values are ~ -n ln 2; ask for 1e-13 relative there.
            double scale = std::max(1.0, std::abs(got));
            EXPECT_LT(static_cast<double>(abs(Wide(got) - want)), 1e-13 * scale) << "n=" << n << " k=" << k;
        }
    }
}

TEST(LogBinomialPmf, GeneralProbability) {
    // C(10, 3) 0.3^3 0.7^7
    double want = std::log(120.0) + 3 * std::log(0.3) + 7 * std::log(0.7);
    EXPECT_NEAR(nosig::log_binomial_pmf(10, 3, 0.3, 0.7), want, 1e-14);
    EXPECT_EQ(nosig::log_binomial_pmf(4, 4, 1.0, 0.0), 0.0);
    EXPECT_EQ(nosig::log_binomial_pmf(4, 3, 1.0, 0.0), -std::numeric_limits<double>::infinity());
}

TEST(BinomialRow, MatchesPascal) {
    auto pascal = pascal_triangle(120);
    for (int n = 0; n <= 120; ++n) {
        ASSERT_EQ(nosig::binomial_row(n), pascal[n]) << n;
    }
    EXPECT_EQ(nosig::binomial(4, 5), 0);
    EXPECT_EQ(nosig::binomial(4, -1), 0);
}

TEST(Vandermonde, WorkedExample) {
    // C(3,0)C(1,2) + C(3,1)C(1,1) + C(3,2)C(1,0) = 0 + 3 + 3
    auto conv = nosig::vandermonde_convolution(3, 1);
    EXPECT_EQ(conv[2], 6);
    EXPECT_EQ(conv[2], nosig::binomial(4, 2));
}

TEST(Vandermonde, CollapsesWhenOneSideIsEmpty) {
    EXPECT_EQ(nosig::vandermonde_convolution(9, 0), nosig::binomial_row(9));
    EXPECT_EQ(nosig::vandermonde_convolution(0, 9), nosig::binomial_row(9));
}

TEST(ToDouble, RoundsExactly) {
    EXPECT_EQ(nosig::to_double(nosig::Rational(1, 4)), 0.25);
    EXPECT_EQ(nosig::to_double(nosig::Rational(1, 3)), 1.0 / 3.0);
}

}  // namespace
