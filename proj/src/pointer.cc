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

#include "nosig/pointer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "nosig/errors.h"

namespace nosig::pointer {

namespace {

// Beyond this many standard deviations the Gaussian underflows to zero.
constexpr double kUnderflowSigmas = 39.0;
constexpr double kNormTolerance = 1e-12;

void require_spins(int n_spins) {
    if (n_spins < 1) {
        throw UserError(fmt::format("number of spins must be >= 1, got {}", n_spins));
    }
}

void require_exact_size(int n_spins) {
    if (n_spins > kMaxExactSpins) {
        throw UserError(fmt::format("exact arithmetic supports N <= {}, got N = {}", kMaxExactSpins,
                                    n_spins));
    }
}

std::vector<int> lattice_shifts(int n_spins) {
    std::vector<int> shifts(static_cast<std::size_t>(n_spins) + 1);
    for (int k = 0; k <= n_spins; ++k) shifts[k] = 2 * k - n_spins;
    return shifts;
}

std::vector<double> half_binomial_row(int n) {
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) row[k] = std::exp(log_binomial_weight(n, k));
    return row;
}

// Components whose weight is exactly zero are omitted.
ShiftMixture lattice_mixture(int n_spins, const std::vector<double>& weights, const PointerShape& shape) {
    std::vector<MixtureComponent> components;
    components.reserve(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] > 0.0) components.push_back({2 * static_cast<int>(k) - n_spins, weights[k]});
    }
    return ShiftMixture(n_spins, std::move(components), shape);
}

}  // namespace

PointerShape::PointerShape(double delta) : delta_(delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw UserError(fmt::format("pointer width delta must be positive and finite, got {}", delta));
    }
}

double PointerShape::log_amplitude(double x) const {
    return -0.25 * std::log(2.0 * std::numbers::pi * delta_ * delta_) - x * x / (4.0 * delta_ * delta_);
}

double PointerShape::amplitude(double x) const { return std::exp(log_amplitude(x)); }

double PointerShape::density(double x) const {
    double z = x / delta_;
    return std::exp(-0.5 * z * z) / (delta_ * std::sqrt(2.0 * std::numbers::pi));
}

double pointer_density(double x, const PointerShape& shape) { return shape.density(x); }

Magnetization::Magnetization(int mu, int n_spins) : mu_(mu), n_spins_(n_spins) {
    if (n_spins < 1) {
        throw InvalidMagnetization(fmt::format("number of spins must be >= 1, got {}", n_spins));
    }
    if (mu < -n_spins || mu > n_spins) {
        throw InvalidMagnetization(
            fmt::format("magnetization mu = {} out of range for N = {} (need |mu| <= N)", mu, n_spins));
    }
    if ((n_spins - mu) % 2 != 0) {
        throw InvalidMagnetization(fmt::format(
            "magnetization mu = {} has the wrong parity for N = {} (mu must be {} like N)", mu, n_spins,
            n_spins % 2 == 0 ? "even" : "odd"));
    }
}

SpinAmplitudes::SpinAmplitudes(int n_spins, std::vector<std::complex<double>> amplitudes)
    : n_spins_(n_spins), amplitudes_(std::move(amplitudes)) {
    require_spins(n_spins);
    if (amplitudes_.size() != static_cast<std::size_t>(n_spins) + 1) {
        throw UserError(fmt::format("expected {} amplitudes for N = {}, got {}", n_spins + 1, n_spins,
                                    amplitudes_.size()));
    }
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw UserError(fmt::format("spin state is not normalized: squared norm {:.17g}", norm2));
    }
}

SpinAmplitudes magnet_amplitudes(int n_spins, double theta) {
    require_spins(n_spins);
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw UserError(fmt::format("polar angle theta must lie in [0, pi], got {}", theta));
    }
    // Both factors via sine so that theta = 0 and theta = pi give exact zeros.
    double c = std::sin(0.5 * (std::numbers::pi - theta));
    double s = std::sin(0.5 * theta);
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(n_spins) + 1);
    for (int k = 0; k <= n_spins; ++k) {
        amps[k] = std::sqrt(std::exp(log_binomial_pmf(n_spins, k, c * c, s * s)));
    }
    return SpinAmplitudes(n_spins, std::move(amps));
}

double fidelity(const SpinAmplitudes& a, const SpinAmplitudes& b) {
    if (a.n_spins() != b.n_spins()) {
        throw UserError("fidelity requires states of the same size");
    }
    std::complex<double> overlap = 0.0;
    for (std::size_t k = 0; k < a.amplitudes().size(); ++k) {
        overlap += std::conj(a.amplitudes()[k]) * b.amplitudes()[k];
    }
    return std::norm(overlap);
}

std::size_t Grid::size() const {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw UserError(fmt::format("invalid grid [{}, {}] step {}", lo, hi, step));
    }
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

Grid default_grid(int n_spins, const PointerShape& shape) {
    double half = n_spins + 8.0 * shape.delta();
    return Grid{-half, half, std::min(shape.delta() / 8.0, 0.25)};
}

ShiftMixture::ShiftMixture(int n_spins, std::vector<MixtureComponent> components, PointerShape shape)
    : n_spins_(n_spins), components_(std::move(components)), shape_(shape) {
    validate_layout();
    double total = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight >= 0.0)) {
            throw UserError(fmt::format("mixture weight at shift {} is negative", c.shift));
        }
        total += c.weight;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw UserError(fmt::format("mixture weights sum to {:.17g}, expected 1", total));
    }
}

ShiftMixture::ShiftMixture(int n_spins, std::vector<int> shifts, std::vector<Rational> weights,
                           PointerShape shape)
    : n_spins_(n_spins), shape_(shape) {
    if (shifts.size() != weights.size()) {
        throw UserError("shift and weight lists differ in length");
    }
    Rational total = 0;
    components_.reserve(shifts.size());
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (weights[i] < 0) {
            throw UserError(fmt::format("mixture weight at shift {} is negative", shifts[i]));
        }
        total += weights[i];
        components_.push_back({shifts[i], to_double(weights[i])});
    }
    validate_layout();
    if (total != 1) {
        throw UserError("exact mixture weights do not sum to 1");
    }
    exact_weights_ = std::move(weights);
}

void ShiftMixture::validate_layout() const {
    require_spins(n_spins_);
    if (components_.empty()) {
        throw UserError("mixture has no components");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        int shift = components_[i].shift;
        if (shift < -n_spins_ || shift > n_spins_ || (shift - n_spins_) % 2 != 0) {
            throw UserError(fmt::format("shift {} is not on the lattice of N = {}", shift, n_spins_));
        }
        if (i > 0 && shift <= components_[i - 1].shift) {
            throw UserError("mixture shifts must be strictly increasing");
        }
    }
}

std::span<const Rational> ShiftMixture::exact_weights() const noexcept {
    if (!exact_weights_) return {};
    return *exact_weights_;
}

double ShiftMixture::density(double x) const {
    double total = 0.0;
    for (const auto& c : components_) total += c.weight * shape_.density(x - c.shift);
    return total;
}

std::vector<double> ShiftMixture::evaluate(const Grid& grid) const {
    const std::size_t n = grid.size();
    std::vector<double> out(n, 0.0);
    const double delta = shape_.delta();
    const double scale = 1.0 / (delta * std::sqrt(2.0 * std::numbers::pi));
    const double inv_two_var = 1.0 / (2.0 * delta * delta);
    const double reach = kUnderflowSigmas * delta;
    for (const auto& c : components_) {
        if (c.weight == 0.0) continue;
        double first = std::ceil((c.shift - reach - grid.lo) / grid.step);
        double last = std::floor((c.shift + reach - grid.lo) / grid.step);
        if (last < 0.0 || first > static_cast<double>(n - 1)) continue;
        auto i0 = static_cast<std::size_t>(std::max(first, 0.0));
        auto i1 = static_cast<std::size_t>(std::min(last, static_cast<double>(n - 1)));
        double w = c.weight * scale;
        for (std::size_t i = i0; i <= i1; ++i) {
            double d = grid.at(i) - c.shift;
            out[i] += w * std::exp(-d * d * inv_two_var);
        }
    }
    return out;
}

double ShiftMixture::mean() const {
    double m = 0.0;
    for (const auto& c : components_) m += c.weight * c.shift;
    return m;
}

double ShiftMixture::variance() const {
    double m = mean();
    double v = 0.0;
    for (const auto& c : components_) {
        double d = c.shift - m;
        v += c.weight * d * d;
    }
    return shape_.delta() * shape_.delta() + v;
}

ShiftMixture pointer_distribution_of_state(const SpinAmplitudes& state, const PointerShape& shape) {
    std::vector<double> weights(state.amplitudes().size());
    for (std::size_t k = 0; k < weights.size(); ++k) weights[k] = std::norm(state.amplitudes()[k]);
    return lattice_mixture(state.n_spins(), weights, shape);
}

Collapse collapse_posterior(const SpinAmplitudes& state, const PointerShape& shape, double x_p) {
    const int n = state.n_spins();
    auto amps = state.amplitudes();
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n; ++k) {
        if (amps[k] != 0.0) peak = std::max(peak, shape.log_amplitude(x_p - (2 * k - n)));
    }
    std::vector<std::complex<double>> scaled(amps.size());
    double norm2 = 0.0;
    for (int k = 0; k <= n; ++k) {
        if (amps[k] == 0.0) continue;
        scaled[k] = amps[k] * std::exp(shape.log_amplitude(x_p - (2 * k - n)) - peak);
        norm2 += std::norm(scaled[k]);
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : scaled) a *= inv;
    double density = norm2 * std::exp(2.0 * peak);
    return Collapse{SpinAmplitudes(n, std::move(scaled)), density};
}

ShiftMixture rho_z_conditional(const Magnetization& mu, const PointerShape& shape) {
    return ShiftMixture(mu.n_spins(), {MixtureComponent{mu.mu(), 1.0}}, shape);
}

ShiftMixture rho_z_marginal(int n_spins, const PointerShape& shape, Arithmetic mode) {
    require_spins(n_spins);
    if (mode == Arithmetic::kExact) {
        require_exact_size(n_spins);
        auto row = binomial_row(n_spins);
        BigInt denom = power_of_two(n_spins);
        std::vector<Rational> weights;
        weights.reserve(row.size());
        for (const auto& c : row) weights.emplace_back(c, denom);
        return ShiftMixture(n_spins, lattice_shifts(n_spins), std::move(weights), shape);
    }
    return lattice_mixture(n_spins, half_binomial_row(n_spins), shape);
}

Table<double> cjk_squared(const Magnetization& mu) {
    auto up = half_binomial_row(mu.up_count());
    auto down = half_binomial_row(mu.down_count());
    Table<double> t(up.size(), down.size());
    for (std::size_t j = 0; j < up.size(); ++j) {
        for (std::size_t k = 0; k < down.size(); ++k) t(j, k) = up[j] * down[k];
    }
    return t;
}

Table<Rational> cjk_squared_exact(const Magnetization& mu) {
    require_exact_size(mu.n_spins());
    auto up = binomial_row(mu.up_count());
    auto down = binomial_row(mu.down_count());
    BigInt denom = power_of_two(mu.n_spins());
    Table<Rational> t(up.size(), down.size());
    for (std::size_t j = 0; j < up.size(); ++j) {
        for (std::size_t k = 0; k < down.size(); ++k) {
            BigInt count = up[j] * down[k];
            t(j, k) = Rational(count, denom);
        }
    }
    return t;
}

ShiftMixture rho_x_conditional(const Magnetization& mu, const PointerShape& shape, Arithmetic mode) {
    const int n = mu.n_spins();
    if (mode == Arithmetic::kExact) {
        auto c2 = cjk_squared_exact(mu);
        std::vector<Rational> weights(static_cast<std::size_t>(n) + 1);
        for (std::size_t j = 0; j < c2.rows(); ++j) {
            for (std::size_t k = 0; k < c2.cols(); ++k) weights[j + k] += c2(j, k);
        }
        return ShiftMixture(n, lattice_shifts(n), std::move(weights), shape);
    }
    auto c2 = cjk_squared(mu);
    std::vector<double> weights(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t j = 0; j < c2.rows(); ++j) {
        for (std::size_t k = 0; k < c2.cols(); ++k) weights[j + k] += c2(j, k);
    }
    return lattice_mixture(n, weights, shape);
}

ShiftMixture rho_x_marginal(int n_spins, const PointerShape& shape, Arithmetic mode) {
    require_spins(n_spins);
    if (n_spins > kMaxMarginalSpins) {
        throw UserError(fmt::format("the x-basis marginal is limited to N <= {}; pass a magnetization",
                                    kMaxMarginalSpins));
    }
    const auto size = static_cast<std::size_t>(n_spins) + 1;
    if (mode == Arithmetic::kExact) {
        require_exact_size(n_spins);
        auto row = binomial_row(n_spins);
        BigInt denom = power_of_two(n_spins);
        std::vector<Rational> weights(size);
        for (int j = 0; j <= n_spins; ++j) {
            Rational p_mu(row[j], denom);
            auto cond = rho_x_conditional(Magnetization(2 * j - n_spins, n_spins), shape, mode);
            auto w = cond.exact_weights();
            for (std::size_t s = 0; s < size; ++s) weights[s] += p_mu * w[s];
        }
        return ShiftMixture(n_spins, lattice_shifts(n_spins), std::move(weights), shape);
    }
    auto row = half_binomial_row(n_spins);
    std::vector<double> weights(size, 0.0);
    for (int j = 0; j <= n_spins; ++j) {
        auto cond = rho_x_conditional(Magnetization(2 * j - n_spins, n_spins), shape);
        for (const auto& c : cond.components()) weights[(c.shift + n_spins) / 2] += row[j] * c.weight;
    }
    return lattice_mixture(n_spins, weights, shape);
}

std::vector<Rational> reduce_single_sum(const Magnetization& mu) {
    auto counts = vandermonde_convolution(mu.up_count(), mu.down_count());
    BigInt denom = power_of_two(mu.n_spins());
    std::vector<Rational> out;
    out.reserve(counts.size());
    for (const auto& c : counts) out.emplace_back(c, denom);
    return out;
}

double total_variation(const ShiftMixture& a, const ShiftMixture& b, const Grid& grid) {
    if (!(a.shape() == b.shape())) {
        throw UserError(fmt::format("total variation needs matching pointer shapes (delta {} vs {})",
                                    a.shape().delta(), b.shape().delta()));
    }
    auto da = a.evaluate(grid);
    auto db = b.evaluate(grid);
    // Trapezoid rule on |d|, except that a cell where d changes sign is
    // integrated through the interpolated zero crossing.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < da.size(); ++i) {
        double d0 = da[i] - db[i];
        double d1 = da[i + 1] - db[i + 1];
        if ((d0 < 0.0) != (d1 < 0.0) && d0 != 0.0 && d1 != 0.0) {
            sum += (d0 * d0 + d1 * d1) / (std::abs(d0) + std::abs(d1));
        } else {
            sum += std::abs(d0) + std::abs(d1);
        }
    }
    return 0.25 * grid.step * sum;
}

double total_variation(const ShiftMixture& a, const ShiftMixture& b) {
    return total_variation(a, b, default_grid(std::max(a.n_spins(), b.n_spins()), a.shape()));
}

}  // namespace nosig::pointer
