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

#ifndef NOSIG_POINTER_H
#define NOSIG_POINTER_H

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nosig/binomial.h"

/// Pointer-position statistics for a von Neumann measurement of the collective
/// z-magnetization of N spin-1/2 particles.
///
/// The coupling is represented by its integrated effect: the symmetric sector
/// with k spins up displaces the pointer by 2k - N. A pointer distribution is
/// therefore always a finite mixture of identical Gaussians sitting on the
/// lattice {-N, -N + 2, ..., N}, and is stored analytically as
/// (shift, weight) pairs. Densities are only gridded on request.
namespace nosig::pointer {

/// Gaussian pointer wavefunction of r.m.s. width delta, in units of the
/// single-spin eigenvalue step.
class PointerShape {
   public:
    explicit PointerShape(double delta);

    double delta() const noexcept { return delta_; }
    double amplitude(double x) const;
    double log_amplitude(double x) const;
    /// |amplitude(x)|^2, a normal density with standard deviation delta.
    double density(double x) const;

    bool operator==(const PointerShape&) const = default;

   private:
    double delta_;
};

double pointer_density(double x, const PointerShape& shape);

/// Net spin excess along one axis. |mu| <= N, mu = N (mod 2).
class Magnetization {
   public:
    Magnetization(int mu, int n_spins);

    int mu() const noexcept { return mu_; }
    int n_spins() const noexcept { return n_spins_; }
    /// (N + mu) / 2
    int up_count() const noexcept { return (n_spins_ + mu_) / 2; }
    /// (N - mu) / 2
    int down_count() const noexcept { return (n_spins_ - mu_) / 2; }

   private:
    int mu_;
    int n_spins_;
};

/// Amplitudes <k,N|psi> of a permutation-symmetric N-spin state, indexed by
/// the number k of spins up along z.
class SpinAmplitudes {
   public:
    /// Throws UserError unless amplitudes.size() == n_spins + 1 and the state
    /// is normalized to 1e-12.
    SpinAmplitudes(int n_spins, std::vector<std::complex<double>> amplitudes);

    int n_spins() const noexcept { return n_spins_; }
    std::span<const std::complex<double>> amplitudes() const noexcept { return amplitudes_; }
    double probability(int k) const { return std::norm(amplitudes_.at(static_cast<std::size_t>(k))); }

   private:
    int n_spins_;
    std::vector<std::complex<double>> amplitudes_;
};

/// N copies of the spin state with polar angle theta (azimuth 0), expanded in
/// the symmetric z-sectors: |amp_k|^2 = C(N,k) cos^2k(theta/2) sin^2(N-k)(theta/2).
SpinAmplitudes magnet_amplitudes(int n_spins, double theta);

/// |<a|b>|^2 for two states of equal size.
double fidelity(const SpinAmplitudes& a, const SpinAmplitudes& b);

struct MixtureComponent {
    int shift;
    double weight;

    bool operator==(const MixtureComponent&) const = default;
};

enum class Arithmetic { kFloating, kExact };

/// Largest N accepted in exact mode.
inline constexpr int kMaxExactSpins = 200;

/// Uniform evaluation grid lo, lo + step, ..., up to hi.
struct Grid {
    double lo;
    double hi;
    double step;

    std::size_t size() const;
    double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

/// [-(N + 8 delta), N + 8 delta] with step min(delta / 8, 0.25).
Grid default_grid(int n_spins, const PointerShape& shape);

/// Finite mixture sum_i w_i |Phi(x - shift_i)|^2.
class ShiftMixture {
   public:
    /// Validates: shifts strictly increasing, |shift| <= N with the parity of
    /// N, weights nonnegative and summing to 1 within 1e-12.
    ShiftMixture(int n_spins, std::vector<MixtureComponent> components, PointerShape shape);

    /// Exact-weight mixture. Weights must sum to exactly 1.
    ShiftMixture(int n_spins, std::vector<int> shifts, std::vector<Rational> weights,
                 PointerShape shape);

    int n_spins() const noexcept { return n_spins_; }
    const PointerShape& shape() const noexcept { return shape_; }
    std::span<const MixtureComponent> components() const noexcept { return components_; }
    bool is_exact() const noexcept { return exact_weights_.has_value(); }
    /// Exact weights aligned with components(); empty span in floating mode.
    std::span<const Rational> exact_weights() const noexcept;

    double density(double x) const;
    std::vector<double> evaluate(const Grid& grid) const;
    double mean() const;
    /// Pointer variance: delta^2 plus the variance of the shift distribution.
    double variance() const;

   private:
    void validate_layout() const;

    int n_spins_;
    std::vector<MixtureComponent> components_;
    PointerShape shape_;
    std::optional<std::vector<Rational>> exact_weights_;
};

/// Pointer marginal after the coupling: weight |amp_k|^2 at shift 2k - N.
ShiftMixture pointer_distribution_of_state(const SpinAmplitudes& state, const PointerShape& shape);

struct Collapse {
    /// Normalized post-measurement state.
    SpinAmplitudes posterior;
    /// Squared norm of the unnormalized collapsed state, i.e. the pointer
    /// density at the observed position.
    double probability_density;
};

/// Conditions the state on reading the pointer at x_p:
/// amp_k -> amp_k * Phi(x_p - (2k - N)).
Collapse collapse_posterior(const SpinAmplitudes& state, const PointerShape& shape, double x_p);

/// Bob's pointer given magnetization mu along z: one Gaussian centred at mu.
ShiftMixture rho_z_conditional(const Magnetization& mu, const PointerShape& shape);

/// Bob's pointer after Alice measures along z, averaged over her result:
/// weight 2^-N C(N, j) at shift 2j - N.
ShiftMixture rho_z_marginal(int n_spins, const PointerShape& shape,
                            Arithmetic mode = Arithmetic::kFloating);

/// Dense row-major matrix.
template <typename T>
class Table {
   public:
    Table(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const T> data() const noexcept { return data_; }

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

/// c_jk^2 = 2^-N C(j_m, j) C(k_m, k) for the product state of j_m spins
/// along +x and k_m along -x, expanded in z. Rows j = 0..j_m, columns
/// k = 0..k_m. The sign (-1)^(k_m - k) of c_jk never enters.
Table<double> cjk_squared(const Magnetization& mu);
Table<Rational> cjk_squared_exact(const Magnetization& mu);

/// Bob's pointer given magnetization mu along x, traced over the spins:
/// weight sum_{j+k=s} c_jk^2 at shift 2s - N.
ShiftMixture rho_x_conditional(const Magnetization& mu, const PointerShape& shape,
                               Arithmetic mode = Arithmetic::kFloating);

/// rho_x_conditional averaged over the binomial law of mu. Limited to
/// N <= kMaxMarginalSpins since it costs O(N^3).
inline constexpr int kMaxMarginalSpins = 1000;
ShiftMixture rho_x_marginal(int n_spins, const PointerShape& shape,
                            Arithmetic mode = Arithmetic::kFloating);

/// The s-grouped weights 2^-N sum_j C(j_m, j) C(k_m, s - j), s = 0..N,
/// obtained by exact convolution of the two binomial rows.
std::vector<Rational> reduce_single_sum(const Magnetization& mu);

/// (1/2) integral |rho_a - rho_b| by the trapezoid rule on grid.
/// Throws UserError if the two mixtures use different pointer shapes.
double total_variation(const ShiftMixture& a, const ShiftMixture& b, const Grid& grid);
/// Same, on the default grid for the larger of the two spin counts.
double total_variation(const ShiftMixture& a, const ShiftMixture& b);

}  // namespace nosig::pointer

#endif
