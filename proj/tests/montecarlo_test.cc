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

#include "nosig/montecarlo.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nosig/errors.h"

namespace {

using namespace nosig::mc;
using nosig::Philox4x32;

// Independent normal source for calibrating the KS tests.
std::vector<double> box_muller(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> out;
    while (out.size() < n) {
        double r = std::sqrt(-2.0 * std::log(1.0 - u(gen)));
        double t = 2.0 * std::numbers::pi * u(gen);
        out.push_back(r * std::cos(t));
        if (out.size() < n) out.push_back(r * std::sin(t));
    }
    return out;
}

std::vector<double> scaled_alice_sums(int n_boxes, double v, int runs, std::uint64_t seed) {
    EnsembleConfig config{n_boxes, v, {{0, 0}}, runs, seed, 1};
    std::vector<double> out;
    for (const auto& r : run_ensembles(config)) out.push_back(r.result.a_sum / std::sqrt(double(n_boxes)));
    return out;
}

TEST(SampleBox, PerfectCorrelations) {
    Philox4x32 rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        auto o = sample_box(1.0, 1, 1, rng);
        ASSERT_EQ(o.a * o.b, -1);
        o = sample_box(-1.0, 0, 0, rng);
        ASSERT_EQ(o.a * o.b, -1);
        o = sample_box(1.0, 0, 1, rng);
        ASSERT_EQ(o.a * o.b, 1);
    }
}

TEST(SampleBox, AgreementRateAndMarginals) {
    Philox4x32 rng(2, 0);
    const int n = 1000000;
    int agree = 0;
    int a_plus = 0;
    int b_plus = 0;
    for (int i = 0; i < n; ++i) {
        auto o = sample_box(0.5, 1, 1, rng);
        agree += o.a * o.b == -1;
        a_plus += o.a == 1;
        b_plus += o.b == 1;
    }
    EXPECT_NEAR(agree / double(n), 0.75, 3.0 * std::sqrt(0.1875 / n));
    EXPECT_NEAR(a_plus / double(n), 0.5, 3.0 * std::sqrt(0.25 / n));
    EXPECT_NEAR(b_plus / double(n), 0.5, 3.0 * std::sqrt(0.25 / n));
}

TEST(SampleBox, RejectsBadInputs) {
    Philox4x32 rng(0, 0);
    EXPECT_THROW(sample_box(1.5, 0, 0, rng), nosig::UserError);
    EXPECT_THROW(sample_box(0.5, 2, 0, rng), nosig::UserError);
    EXPECT_THROW(run_ensemble(0, 0.5, 0, 0, rng), nosig::UserError);
}

TEST(RunEnsemble, BoundsAndParity) {
    Philox4x32 rng(4, 0);
    for (int n : {1, 2, 7, 100}) {
        for (int i = 0; i < 200; ++i) {
            auto r = run_ensemble(n, 0.3, 0, 1, rng);
            ASSERT_LE(std::abs(r.a_sum), n);
            ASSERT_LE(std::abs(r.b_sum), n);
            ASSERT_EQ((r.a_sum + n) % 2, 0);
            ASSERT_EQ((r.b_sum + n) % 2, 0);
            ASSERT_EQ(r.n_boxes, n);
        }
    }
}

TEST(RunEnsemble, CorrelatorWithinThreeStandardErrors) {
    for (auto [x, y, sign] : {std::tuple{0, 0, 1.0}, std::tuple{1, 1, -1.0}}) {
        EnsembleConfig config{10000, 0.5, {{x, y}}, 100, 11, 1};
        std::vector<EnsembleRunResult> runs;
        for (const auto& r : run_ensembles(config)) runs.push_back(r.result);
        auto est = estimate_correlator(runs);
        EXPECT_NEAR(est.mean, sign * 0.5, 3.0 * est.standard_error) << x << y;
        EXPECT_GT(est.standard_error, 0.0);
    }
    EnsembleConfig config{100, 0.0, {{0, 0}}, 2000, 12, 1};
    std::vector<EnsembleRunResult> runs;
    for (const auto& r : run_ensembles(config)) runs.push_back(r.result);
    auto est = estimate_correlator(runs);
    EXPECT_NEAR(est.mean, 0.0, 3.0 * est.standard_error);
}

TEST(RunEnsembles, IndependentOfThreadCount) {
    EnsembleConfig config{257, 0.3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 50, 99, 1};
    auto reference = run_ensembles(config);
    ASSERT_EQ(reference.size(), 200u);
    for (unsigned threads : {2u, 3u, 8u, 0u}) {
        config.threads = threads;
        auto got = run_ensembles(config);
        ASSERT_EQ(got.size(), reference.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(got[i].run_id, i);
            EXPECT_EQ(got[i].setting.x, reference[i].setting.x);
            EXPECT_EQ(got[i].setting.y, reference[i].setting.y);
            EXPECT_EQ(got[i].result.a_sum, reference[i].result.a_sum);
            EXPECT_EQ(got[i].result.b_sum, reference[i].result.b_sum);
        }
    }
}

TEST(KolmogorovCritical, Value) {
    EXPECT_NEAR(kolmogorov_critical_value(0.01), 1.628, 1e-3);
    EXPECT_NEAR(kolmogorov_critical_value(0.05), 1.358, 1e-3);
    EXPECT_THROW(kolmogorov_critical_value(0.0), nosig::UserError);
}

TEST(GaussianityCheck, ConstantSamplesFail) {
    std::vector<double> zeros(1000, 0.0);
    EXPECT_FALSE(gaussianity_check(zeros, 0.01).pass);
    EXPECT_NEAR(gaussianity_check(zeros, 0.01).statistic, 0.5, 1e-12);
}

TEST(GaussianityCheck, TooFewSamples) {
    std::vector<double> few(99, 0.0);
    EXPECT_THROW(gaussianity_check(few, 0.01), nosig::UserError);
}

TEST(GaussianityCheck, ExactNormalCalibrated) {
    int passes = 0;
    for (int trial = 0; trial < 1000; ++trial) passes += gaussianity_check(box_muller(500, trial), 0.01).pass;
    // False-fail rate alpha = 0.01: expect about 990 passes.
    EXPECT_GE(passes, 975);
    EXPECT_LE(passes, 1000);
}

TEST(GaussianityCheck, ShiftedNormalFails) {
    auto s = box_muller(10000, 5);
    for (double& x : s) x += 0.1;
    EXPECT_FALSE(gaussianity_check(s, 0.01).pass);
}

TEST(GaussianityCheck, LatticeVariantOnCoarseSums) {
    // N = 100 gives a lattice step of 0.2 in A/sqrt(N); the plain test sees the steps.
    const int n = 100;
    int plain = 0;
    int lattice = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto s = scaled_alice_sums(n, 0.3, 2000, 1000 + trial);
        plain += gaussianity_check(s, 0.01).pass;
        lattice += gaussianity_check(s, 0.01, 2.0 / std::sqrt(double(n))).pass;
    }
    EXPECT_GE(lattice, 95);
    EXPECT_LT(plain, 50);
}

TEST(TwoSampleKs, SameAndDifferent) {
    int passes = 0;
    for (int trial = 0; trial < 200; ++trial) {
        passes += two_sample_ks(box_muller(300, 2 * trial), box_muller(400, 2 * trial + 1), 0.01).pass;
    }
    EXPECT_GE(passes, 192);
    auto a = box_muller(2000, 1);
    auto b = box_muller(2000, 2);
    for (double& x : b) x *= 1.3;
    EXPECT_FALSE(two_sample_ks(a, b, 0.01).pass);
    EXPECT_NEAR(two_sample_ks(a, a, 0.01).statistic, 0.0, 0.0);
}

TEST(SingletSampler, SingleSpinZBasis) {
    SingletSampler sampler(1, nosig::pointer::PointerShape(0.2));
    Philox4x32 rng(8, 0);
    int plus = 0;
    for (int i = 0; i < 20000; ++i) {
        auto d = sampler.draw(Basis::kZ, rng);
        ASSERT_TRUE(d.mu == 1 || d.mu == -1);
        ASSERT_LT(std::abs(d.x_p - d.mu), 2.0);
        plus += d.mu == 1;
    }
    EXPECT_NEAR(plus / 20000.0, 0.5, 3.0 * std::sqrt(0.25 / 20000));
}

TEST(SingletSampler, MagnetizationMoments) {
    const int n = 64;
    SingletSampler sampler(n, nosig::pointer::PointerShape(1.0));
    Philox4x32 rng(9, 0);
    const int draws = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        int mu = sampler.draw(i % 2 ? Basis::kX : Basis::kZ, rng).mu;
        ASSERT_EQ((mu + n) % 2, 0);
        sum += mu;
        sum_sq += double(mu) * mu;
    }
    double mean = sum / draws;
    double var = sum_sq / draws - mean * mean;
    EXPECT_NEAR(mean, 0.0, 3.0 * std::sqrt(double(n) / draws));
    // Var of the sample variance for a binomial: (mu4 - sigma^4) / n with mu4 = 3N^2 - 2N.
    double se_var = std::sqrt((3.0 * n * n - 2.0 * n - double(n) * n) / draws);
    EXPECT_NEAR(var, double(n), 3.0 * se_var);
}

TEST(SingletSampler, BasesIndistinguishable) {
    SingletSampler sampler(32, nosig::pointer::PointerShape(2.0));
    const Basis bases[] = {Basis::kZ, Basis::kX};
    int passes = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto records = run_singlet_protocol(sampler, bases, 2000, 500 + trial);
        std::vector<double> z;
        std::vector<double> x;
        for (const auto& r : records) (r.basis == Basis::kZ ? z : x).push_back(r.draw.x_p);
        passes += two_sample_ks(z, x, 0.01).pass;
    }
    EXPECT_GE(passes, 95);
}

TEST(SingletSampler, ReproducibleRecords) {
    SingletSampler sampler(10, nosig::pointer::PointerShape(0.5));
    const Basis bases[] = {Basis::kX, Basis::kZ};
    auto a = run_singlet_protocol(sampler, bases, 50, 3);
    auto b = run_singlet_protocol(sampler, bases, 50, 3);
    ASSERT_EQ(a.size(), 100u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].run_id, i);
        EXPECT_EQ(a[i].draw.mu, b[i].draw.mu);
        EXPECT_EQ(a[i].draw.x_p, b[i].draw.x_p);
    }
    EXPECT_EQ(basis_name(Basis::kZ), "z");
    EXPECT_EQ(basis_name(Basis::kX), "x");
}

}  // namespace
