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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace nosig {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(n!) - ln(sqrt(2 pi n) (n/e)^n) for n = 0..15.
const std::array<long double, 16>& small_stirling_errors() {
    static const std::array<long double, 16> table = [] {
        std::array<long double, 16> t{};
        t[0] = 0.0;
        for (int n = 1; n < 16; ++n) {
            long double ln = n;
            long double pi = std::numbers::pi_v<long double>;
            t[n] = std::lgamma(ln + 1.0L) - (ln + 0.5L) * std::log(ln) + ln - 0.5L * std::log(2.0L * pi);
        }
        return t;
    }();
    return table;
}

using Extended = long double;

Extended stirling_error(std::int64_t n) {
    if (n < 16) {
        return small_stirling_errors()[static_cast<std::size_t>(n)];
    }
    constexpr Extended s0 = 1.0L / 12.0L;
    constexpr Extended s1 = 1.0L / 360.0L;
    constexpr Extended s2 = 1.0L / 1260.0L;
    constexpr Extended s3 = 1.0L / 1680.0L;
    constexpr Extended s4 = 1.0L / 1188.0L;
    Extended x = static_cast<Extended>(n);
    Extended xx = x * x;
    if (n > 500) return (s0 - s1 / xx) / x;
    if (n > 80) return (s0 - (s1 - s2 / xx) / xx) / x;
    if (n > 35) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
    return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

// Deviance term x ln(x / np) + np - x, stable when x is close to np.
Extended deviance(Extended x, Extended np) {
    if (std::abs(x - np) < 0.1L * (x + np)) {
        Extended v = (x - np) / (x + np);
        Extended s = (x - np) * v;
        Extended ej = 2.0L * x * v;
        Extended v2 = v * v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v2;
            Extended next = s + ej / (2 * j + 1);
            if (next == s) return next;
            s = next;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

}  // namespace

// Terms are carried in extended precision: in the tails the deviances reach
// ~n while the result must stay accurate to ~1e-13 absolute.
double log_binomial_pmf(std::int64_t n, std::int64_t k, double p, double q) {
    if (k < 0 || k > n) return kNegInf;
    if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
    if (q == 0.0) return k == n ? 0.0 : kNegInf;
    Extended nd = static_cast<Extended>(n);
    Extended pe = p;
    Extended qe = q;
    if (k == 0) {
        if (n == 0) return 0.0;
        return static_cast<double>(p < 0.1 ? -deviance(nd, nd * qe) - nd * pe : nd * std::log(qe));
    }
    if (k == n) {
        return static_cast<double>(q < 0.1 ? -deviance(nd, nd * pe) - nd * qe : nd * std::log(pe));
    }
    Extended kd = static_cast<Extended>(k);
    Extended rest = nd - kd;
    Extended lc = stirling_error(n) - stirling_error(k) - stirling_error(n - k) - deviance(kd, nd * pe) -
                  deviance(rest, nd * qe);
    Extended lf = std::log(2.0L * std::numbers::pi_v<Extended>) + std::log(kd) + std::log1p(-kd / nd);
    return static_cast<double>(lc - 0.5L * lf);
}

double log_binomial_weight(std::int64_t n, std::int64_t k) {
    return log_binomial_pmf(n, k, 0.5, 0.5);
}

double log_choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return kNegInf;
    return log_binomial_weight(n, k) + static_cast<double>(n) * std::numbers::ln2;
}

std::vector<BigInt> binomial_row(int n) {
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    for (int k = 0; k < n; ++k) {
        row[k + 1] = row[k] * (n - k) / (k + 1);
    }
    return row;
}

BigInt binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);
    }
    return c;
}

std::vector<BigInt> vandermonde_convolution(int a, int b) {
    auto left = binomial_row(a);
    auto right = binomial_row(b);
    std::vector<BigInt> out(static_cast<std::size_t>(a + b) + 1);
    for (int j = 0; j <= a; ++j) {
        for (int k = 0; k <= b; ++k) {
            out[j + k] += left[j] * right[k];
        }
    }
    return out;
}

BigInt power_of_two(int n) {
    BigInt one = 1;
    return one << n;
}

double to_double(const Rational& r) {
    using Wide = boost::multiprecision::cpp_bin_float_100;
    Wide num(boost::multiprecision::numerator(r));
    Wide den(boost::multiprecision::denominator(r));
    return static_cast<double>(num / den);
}

}  // namespace nosig
