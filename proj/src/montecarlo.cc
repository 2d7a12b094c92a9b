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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include <boost/random/normal_distribution.hpp>
#include <fmt/format.h>

#include "nosig/errors.h"

namespace nosig::mc {

namespace {

constexpr std::uint64_t kMantissaMask = (std::uint64_t{1} << 53) - 1;

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double standard_normal(Philox4x32& rng) {
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    return normal(rng);
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// processed by exactly one worker and results are written by index.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) body(i);
        });
    }
}

void require_inputs(int x, int y) {
    if ((x != 0 && x != 1) || (y != 0 && y != 1)) {
        throw UserError(fmt::format("box inputs must be 0 or 1, got x={} y={}", x, y));
    }
}

void require_correlator(double v) {
    if (!(std::abs(v) <= 1.0)) throw UserError(fmt::format("correlator v must lie in [-1, 1], got {}", v));
}

// Both outputs come from a single 64-bit draw: the top bit picks a, the low
// 53 bits decide agreement.
inline BoxOutcome draw_box(double visibility, int parity_sign, Philox4x32& rng) {
    std::uint64_t bits = rng();
    int a = (bits >> 63) != 0 ? -1 : 1;
    double u = static_cast<double>(bits & kMantissaMask) * 0x1.0p-53;
    int b = u < visibility ? parity_sign * a : -parity_sign * a;
    return {a, b};
}

int binomial_magnetization(int n_spins, Philox4x32& rng) {
    int ups = 0;
    int remaining = n_spins;
    while (remaining >= 64) {
        ups += std::popcount(rng());
        remaining -= 64;
    }
    if (remaining > 0) {
        std::uint64_t mask = (std::uint64_t{1} << remaining) - 1;
        ups += std::popcount(rng() & mask);
    }
    return 2 * ups - n_spins;
}

}  // namespace

BoxOutcome sample_box(double v, int x, int y, Philox4x32& rng) {
    require_correlator(v);
    require_inputs(x, y);
    return draw_box((1.0 + v) / 2.0, x * y == 1 ? -1 : 1, rng);
}

EnsembleRunResult run_ensemble(int n_boxes, double v, int x, int y, Philox4x32& rng) {
    if (n_boxes < 1) throw UserError(fmt::format("number of boxes must be >= 1, got {}", n_boxes));
    require_correlator(v);
    require_inputs(x, y);
    const double visibility = (1.0 + v) / 2.0;
    const int sign = x * y == 1 ? -1 : 1;
    EnsembleRunResult result{0, 0, n_boxes};
    for (int i = 0; i < n_boxes; ++i) {
        auto o = draw_box(visibility, sign, rng);
        result.a_sum += o.a;
        result.b_sum += o.b;
    }
    return result;
}

std::vector<EnsembleRecord> run_ensembles(const EnsembleConfig& config) {
    if (config.runs < 1) throw UserError(fmt::format("runs must be >= 1, got {}", config.runs));
    if (config.settings.empty()) throw UserError("at least one input setting is required");
    for (const auto& s : config.settings) require_inputs(s.x, s.y);
    const std::size_t runs = static_cast<std::size_t>(config.runs);
    std::vector<EnsembleRecord> records(config.settings.size() * runs);
    parallel_for(records.size(), config.threads, [&](std::size_t i) {
        const auto& setting = config.settings[i / runs];
        Philox4x32 rng = RngSpec{config.seed, i}.engine();
        records[i] = {i, setting, run_ensemble(config.n_boxes, config.v, setting.x, setting.y, rng)};
    });
    return records;
}

CorrelatorEstimate estimate_correlator(std::span<const EnsembleRunResult> runs) {
    if (runs.size() < 2) throw UserError("need at least two runs to estimate a standard error");
    double sum = 0.0;
    for (const auto& r : runs) sum += static_cast<double>(r.a_sum) * static_cast<double>(r.b_sum) / r.n_boxes;
    const double n = static_cast<double>(runs.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : runs) {
        double d = static_cast<double>(r.a_sum) * static_cast<double>(r.b_sum) / r.n_boxes - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double kolmogorov_critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw UserError(fmt::format("significance level must lie in (0, 1), got {}", alpha));
    }
    return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

KsResult gaussianity_check(std::span<const double> samples, double alpha, double lattice_spacing) {
    if (samples.size() < kMinKsSamples) {
        throw UserError(fmt::format("Kolmogorov-Smirnov test needs at least {} samples, got {}",
                                    kMinKsSamples, samples.size()));
    }
    if (!(lattice_spacing >= 0.0)) throw UserError("lattice spacing must be nonnegative");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    if (lattice_spacing == 0.0) {
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            double f = standard_normal_cdf(sorted[i]);
            d = std::max({d, (i + 1) / n - f, f - i / n});
        }
    } else {
        const double half = 0.5 * lattice_spacing;
        d = standard_normal_cdf(sorted.front() - half);
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
            double ecdf = j / n;
            d = std::max(d, std::abs(ecdf - standard_normal_cdf(sorted[i] + half)));
            if (j < sorted.size()) {
                d = std::max(d, std::abs(ecdf - standard_normal_cdf(sorted[j] - half)));
            } else {
                d = std::max(d, std::abs(1.0 - standard_normal_cdf(sorted[i] + half)));
            }
            i = j;
        }
    }
    double critical = kolmogorov_critical_value(alpha) / std::sqrt(n);
    return {d, critical, d < critical};
}

KsResult two_sample_ks(std::span<const double> a, std::span<const double> b, double alpha) {
    if (a.empty() || b.empty()) throw UserError("two-sample test needs nonempty samples");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double n = static_cast<double>(sa.size());
    const double m = static_cast<double>(sb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(i / n - j / m));
    }
    double critical = kolmogorov_critical_value(alpha) * std::sqrt((n + m) / (n * m));
    return {d, critical, d < critical};
}

std::string_view basis_name(Basis basis) { return basis == Basis::kZ ? "z" : "x"; }

SingletSampler::SingletSampler(int n_spins, pointer::PointerShape shape)
    : n_spins_(n_spins), shape_(shape) {
    if (n_spins < 1) throw UserError(fmt::format("number of spins must be >= 1, got {}", n_spins));
    if (n_spins > pointer::kMaxMarginalSpins) {
        throw UserError(fmt::format("singlet sampler supports N <= {}, got {}", pointer::kMaxMarginalSpins,
                                    n_spins));
    }
    x_tables_.reserve(static_cast<std::size_t>(n_spins) + 1);
    for (int j = 0; j <= n_spins; ++j) {
        auto mixture = pointer::rho_x_conditional(pointer::Magnetization(2 * j - n_spins, n_spins), shape);
        CumulativeTable table;
        double running = 0.0;
        for (const auto& c : mixture.components()) {
            running += c.weight;
            table.shifts.push_back(c.shift);
            table.cumulative.push_back(running);
        }
        x_tables_.push_back(std::move(table));
    }
}

SingletDraw SingletSampler::draw(Basis basis, Philox4x32& rng) const {
    const int mu = binomial_magnetization(n_spins_, rng);
    int shift = mu;
    if (basis == Basis::kX) {
        const auto& table = x_tables_[static_cast<std::size_t>((mu + n_spins_) / 2)];
        double u = rng.uniform01() * table.cumulative.back();
        auto it = std::upper_bound(table.cumulative.begin(), table.cumulative.end(), u);
        auto index = std::min<std::size_t>(static_cast<std::size_t>(it - table.cumulative.begin()),
                                           table.shifts.size() - 1);
        shift = table.shifts[index];
    }
    return {mu, shift + shape_.delta() * standard_normal(rng)};
}

SingletDraw sample_singlet_protocol(int n_spins, Basis basis, const pointer::PointerShape& shape,
                                    Philox4x32& rng) {
    return SingletSampler(n_spins, shape).draw(basis, rng);
}

std::vector<SingletRecord> run_singlet_protocol(const SingletSampler& sampler, std::span<const Basis> bases,
                                                int runs, std::uint64_t seed) {
    if (runs < 1) throw UserError(fmt::format("runs must be >= 1, got {}", runs));
    std::vector<SingletRecord> records;
    records.reserve(bases.size() * static_cast<std::size_t>(runs));
    for (Basis basis : bases) {
        for (int r = 0; r < runs; ++r) {
            std::size_t id = records.size();
            Philox4x32 rng = RngSpec{seed, id}.engine();
            records.push_back({id, basis, sampler.draw(basis, rng)});
        }
    }
    return records;
}

}  // namespace nosig::mc
