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

#ifndef NOSIG_BINOMIAL_H
#define NOSIG_BINOMIAL_H

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nosig {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Natural log of 2^(-n) * C(n, k). Returns -infinity when k < 0 or k > n.
///
/// Evaluated with Loader's saddle-point expansion rather than as a difference
/// of log-factorials, so the result keeps ~1e-15 relative accuracy even when
/// n is large and the log-factorials are ~1e6 in magnitude.
double log_binomial_weight(std::int64_t n, std::int64_t k);

/// Natural log of C(n, k) p^k q^(n-k), with q passed separately so callers
/// can avoid forming 1 - p. Requires p, q >= 0 and p + q == 1 (to rounding).
double log_binomial_pmf(std::int64_t n, std::int64_t k, double p, double q);

/// ln C(n, k); -infinity outside 0 <= k <= n.
double log_choose(std::int64_t n, std::int64_t k);

/// Exact row C(n, 0), ..., C(n, n).
std::vector<BigInt> binomial_row(int n);

/// Exact C(n, k) with the convention C(n, k) = 0 for k < 0 or k > n.
BigInt binomial(int n, int k);

/// sum_j C(a, j) C(b, s - j) for s = 0..a+b, computed by convolving the two
/// binomial rows with exact integers.
std::vector<BigInt> vandermonde_convolution(int a, int b);

/// 2^n as an exact integer.
BigInt power_of_two(int n);

double to_double(const Rational& r);

}  // namespace nosig

#endif
