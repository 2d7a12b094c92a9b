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

#ifndef NOSIG_MONTECARLO_H
#define NOSIG_MONTECARLO_H

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nosig/pointer.h"
#include "nosig/rng.h"

/// Seeded simulation of noisy PR-box ensembles and of the N-singlet pointer
/// protocol, plus the goodness-of-fit tests used to check them.
namespace nosig::mc {

struct BoxOutcome {
    int a;
    int b;
};

/// One use of an isotropic box with correlator v: a is uniform +-1 and
/// b = (-1)^(x y) a with probability (1 + v) / 2, else the opposite sign.
BoxOutcome sample_box(double v, int x, int y, Philox4x32& rng);

struct EnsembleRunResult {
    std::int64_t a_sum;  ///< A_x
    std::int64_t b_sum;  ///< B_y
    int n_boxes;
};

/// Sums of n_boxes independent sample_box draws at fixed inputs.
EnsembleRunResult run_ensemble(int n_boxes, double v, int x, int y, Philox4x32& rng);

struct InputSetting {
    int x;
    int y;
};

struct EnsembleConfig {
    int n_boxes = 1;
    double v = 0.0;
    std::vector<InputSetting> settings;
    int runs = 1;
    std::uint64_t seed = 0;
    /// 0 picks the hardware concurrency.
    unsigned threads = 1;
};

struct EnsembleRecord {
    std::size_t run_id;
    InputSetting setting;
    EnsembleRunResult result;
};

/// Runs every setting `runs` times. Record i (setting-major order) draws from
/// stream i of the seed, so output is independent of the thread count.
std::vector<EnsembleRecord> run_ensembles(const EnsembleConfig& config);

struct CorrelatorEstimate {
    double mean;
    double standard_error;
};

/// Sample mean of A_x B_y / N with its standard error.
CorrelatorEstimate estimate_correlator(std::span<const EnsembleRunResult> runs);

struct KsResult {
    double statistic;
    double critical_value;
    bool pass;
};

/// Asymptotic Kolmogorov quantile sqrt(-ln(alpha / 2) / 2); 1.628 at 0.01.
double kolmogorov_critical_value(double alpha);

inline constexpr std::size_t kMinKsSamples = 100;

/// One-sample Kolmogorov-Smirnov test against the standard normal. Passes iff
/// statistic < c(alpha) / sqrt(n). Throws UserError for fewer than
/// kMinKsSamples samples.
///
/// When lattice_spacing > 0 the samples are taken to live on a lattice of
/// that spacing (A_x / sqrt(N) moves in steps of 2 / sqrt(N)), and the
/// empirical CDF is compared at the midpoints between occupied sites, where
/// it is flat. Comparing at the sites themselves would charge the test with
/// half a lattice jump that has nothing to do with non-Gaussianity.
KsResult gaussianity_check(std::span<const double> samples, double alpha, double lattice_spacing = 0.0);

/// Two-sample Kolmogorov-Smirnov test; passes iff
/// statistic < c(alpha) sqrt((n + m) / (n m)).
KsResult two_sample_ks(std::span<const double> a, std::span<const double> b, double alpha);

enum class Basis { kZ, kX };

std::string_view basis_name(Basis basis);

struct SingletDraw {
    int mu;
    double x_p;
};

/// Draws (mu, x_p) for Alice measuring all N of her singlet halves along one
/// basis: mu from the binomial magnetization law, then x_p from Bob's
/// conditional pointer distribution for that basis. Conditional mixtures for
/// every mu are built once at construction, so N is limited to
/// kMaxMarginalSpins.
class SingletSampler {
   public:
    SingletSampler(int n_spins, pointer::PointerShape shape);

    SingletDraw draw(Basis basis, Philox4x32& rng) const;
    int n_spins() const noexcept { return n_spins_; }

   private:
    int n_spins_;
    pointer::PointerShape shape_;
    struct CumulativeTable {
        std::vector<int> shifts;
        std::vector<double> cumulative;
    };
    /// x-basis conditional mixtures, one per j = (N + mu) / 2.
    std::vector<CumulativeTable> x_tables_;
};

/// Single draw; prefer SingletSampler for repeated sampling.
SingletDraw sample_singlet_protocol(int n_spins, Basis basis, const pointer::PointerShape& shape,
                                    Philox4x32& rng);

struct SingletRecord {
    std::size_t run_id;
    Basis basis;
    SingletDraw draw;
};

/// Record i (basis-major order) draws from stream i of the seed.
std::vector<SingletRecord> run_singlet_protocol(const SingletSampler& sampler,
                                                std::span<const Basis> bases, int runs,
                                                std::uint64_t seed);

}  // namespace nosig::mc

#endif
