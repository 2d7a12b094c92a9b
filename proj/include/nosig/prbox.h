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

#ifndef NOSIG_PRBOX_H
#define NOSIG_PRBOX_H

#include <array>
#include <optional>
#include <span>
#include <vector>

/// Macroscopic limit of N i.i.d. bipartite boxes with binary inputs x, y and
/// outcomes a, b = +-1.
///
/// In the limit the four collective sums A0, A1, B0, B1 are jointly Gaussian,
/// and a nonnegative joint distribution exists iff their correlation matrix
/// (in units of N) is positive semidefinite. Everything here works with that
/// 4x4 matrix, ordered (A0, A1, B0, B1).
namespace nosig::prbox {

inline constexpr double kDefaultPsdTolerance = 1e-10;

/// Noisy PR-box weight V = P(a b = (-1)^(x y)) and correlator v = 2V - 1.
class IsotropicParams {
   public:
    explicit IsotropicParams(double visibility);
    static IsotropicParams from_correlator(double v);

    double visibility() const noexcept { return visibility_; }
    double correlator() const noexcept { return 2.0 * visibility_ - 1.0; }

   private:
    double visibility_;
};

enum Observable : int { kA0 = 0, kA1 = 1, kB0 = 2, kB1 = 3 };

/// Symmetric 4x4 correlation matrix divided by N.
class CorrMatrix {
   public:
    using Entries = std::array<std::array<double, 4>, 4>;

    /// Throws UserError unless entries is exactly symmetric and finite.
    explicit CorrMatrix(const Entries& entries);

    double operator()(int row, int col) const { return entries_[row][col]; }
    const Entries& entries() const noexcept { return entries_; }

    /// Ascending, from a general symmetric eigensolver.
    std::array<double, 4> eigenvalues() const;
    double min_eigenvalue() const { return eigenvalues()[0]; }

   private:
    Entries entries_;
};

/// Isotropic pattern: diagonal 1, same-side correlators s, cross
/// correlators v except <A1 B1> = -v.
CorrMatrix build_isotropic_K(double v, double s);

/// Closed forms {1 + r+, 1 - r+, 1 + r-, 1 - r-} with
/// r+- = sqrt(2v^2 + s^2 +- 2vs).
std::array<double, 4> analytic_eigenvalues(double v, double s);

/// True iff the smallest closed-form eigenvalue is >= -tol.
bool is_macroscopically_local(double v, double s, double tol = kDefaultPsdTolerance);

struct Interval {
    double lo;
    double hi;
};

/// All s for which the isotropic matrix is PSD: |s| <= sqrt(1 - v^2) - |v|.
/// Empty when 2 v^2 > 1.
std::optional<Interval> admissible_s_interval(double v);

enum class ScanCriterion {
    /// Nonempty admissible_s_interval.
    kInterval,
    /// Some s on a grid of the given resolution passes is_macroscopically_local.
    kSGrid,
    /// s = 0 passes is_macroscopically_local.
    kSZero,
};

struct ScanRow {
    double v;
    std::optional<Interval> s_interval;
    bool feasible;
};

struct TsirelsonScan {
    double v_star;
    double visibility_star;
    std::vector<ScanRow> rows;
};

/// Scans v = 0, step, 2 step, ... <= 1 and reports the largest feasible v.
TsirelsonScan tsirelson_scan(double v_step, double s_resolution,
                             ScanCriterion criterion = ScanCriterion::kInterval);

/// p[x][y][a][b]; outcome index 0 is +1, index 1 is -1.
class BoxDistribution {
   public:
    using Table = std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2>;

    /// Throws InvalidBox naming the violated constraint (range,
    /// normalization, or no-signaling) and its indices.
    explicit BoxDistribution(const Table& p);

    double p(int x, int y, int a, int b) const { return p_[x][y][a][b]; }
    const Table& table() const noexcept { return p_; }

    /// E[a | x]; well defined by no-signaling.
    double mean_a(int x) const;
    double mean_b(int y) const;
    /// E[a b | x, y]
    double correlator(int x, int y) const;

   private:
    Table p_;
};

constexpr int outcome_value(int index) { return index == 0 ? 1 : -1; }

/// Random marginals, P(a b = (-1)^(x y)) = (1 + v) / 2.
BoxDistribution isotropic_box(double v);
/// Local deterministic strategy; outcomes are +-1.
BoxDistribution deterministic_box(int a0, int a1, int b0, int b1);
BoxDistribution white_noise_box();
/// Convex mixture of the 16 deterministic strategies. Strategy i has
/// a0 = bit 3, a1 = bit 2, b0 = bit 1, b1 = bit 0 of i, with bit set = -1.
BoxDistribution local_box(std::span<const double, 16> weights);

/// Per-box moments; multiply by N for the collective sums.
struct MacroscopicSummary {
    /// E[a|0], E[a|1], E[b|0], E[b|1]
    std::array<double, 4> means;
    /// 1 - mean^2
    std::array<double, 4> variances;
    /// E[a b | x y], indexed [x][y]
    std::array<std::array<double, 2>, 2> raw_cross;
    /// E[a b | x y] - E[a|x] E[b|y]
    std::array<std::array<double, 2>, 2> centered_cross;
};

MacroscopicSummary correlators_from_box(const BoxDistribution& box);

/// E[ab|00] + E[ab|01] + E[ab|10] - E[ab|11]
double chsh_value(const BoxDistribution& box);

/// Centered covariance matrix with the unknown same-side entries filled in.
CorrMatrix centered_matrix(const MacroscopicSummary& summary, double s_a, double s_b);

struct Witness {
    double s_a;
    double s_b;
};

struct FeasibilityReport {
    bool feasible;
    std::optional<Witness> witness;
    /// Largest minimum eigenvalue found over (s_a, s_b).
    double min_eigenvalue;
};

/// Searches (s_a, s_b) in [-1, 1]^2 for a completion making the centered
/// matrix PSD: a grid at step 1/64, then pattern-search refinement down to a
/// step of 1e-6 around the best grid point. The objective (smallest
/// eigenvalue) is concave in (s_a, s_b), so the refined point is the global
/// maximizer up to the final step size. Ties keep the lexicographically
/// smallest point.
FeasibilityReport psd_completion_feasible(const MacroscopicSummary& summary,
                                          double tol = kDefaultPsdTolerance);

}  // namespace nosig::prbox

#endif
