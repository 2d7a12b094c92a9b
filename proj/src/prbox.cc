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

#include "nosig/prbox.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "nosig/errors.h"

namespace nosig::prbox {

namespace {

constexpr double kBoxTolerance = 1e-12;
constexpr double kCoarseStep = 1.0 / 64.0;
constexpr double kFinestStep = 1e-6;

void require_unit_range(const char* name, double value) {
    if (!(std::abs(value) <= 1.0)) {
        throw UserError(fmt::format("{} must lie in [-1, 1], got {}", name, value));
    }
}

const char* sign_label(int index) { return index == 0 ? "+1" : "-1"; }

}  // namespace

IsotropicParams::IsotropicParams(double visibility) : visibility_(visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw UserError(fmt::format("visibility V must lie in [0, 1], got {}", visibility));
    }
}

IsotropicParams IsotropicParams::from_correlator(double v) {
    require_unit_range("correlator v", v);
    return IsotropicParams((1.0 + v) / 2.0);
}

CorrMatrix::CorrMatrix(const Entries& entries) : entries_(entries) {
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (!std::isfinite(entries[r][c])) {
                throw UserError(fmt::format("correlation matrix entry ({}, {}) is not finite", r, c));
            }
            if (entries[r][c] != entries[c][r]) {
                throw UserError(fmt::format("correlation matrix is not symmetric at ({}, {})", r, c));
            }
        }
    }
}

std::array<double, 4> CorrMatrix::eigenvalues() const {
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m(r, c) = entries_[r][c];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(1), ev(2), ev(3)};
}

CorrMatrix build_isotropic_K(double v, double s) {
    require_unit_range("correlator v", v);
    require_unit_range("same-side correlator s", s);
    return CorrMatrix(CorrMatrix::Entries{{
        {1.0, s, v, v},
        {s, 1.0, v, -v},
        {v, v, 1.0, s},
        {v, -v, s, 1.0},
    }});
}

std::array<double, 4> analytic_eigenvalues(double v, double s) {
    require_unit_range("correlator v", v);
    require_unit_range("same-side correlator s", s);
    double plus = std::sqrt(2.0 * v * v + s * s + 2.0 * v * s);
    double minus = std::sqrt(2.0 * v * v + s * s - 2.0 * v * s);
    return {1.0 + plus, 1.0 - plus, 1.0 + minus, 1.0 - minus};
}

bool is_macroscopically_local(double v, double s, double tol) {
    auto ev = analytic_eigenvalues(v, s);
    return *std::min_element(ev.begin(), ev.end()) >= -tol;
}

std::optional<Interval> admissible_s_interval(double v) {
    require_unit_range("correlator v", v);
    double room = 1.0 - 2.0 * v * v;
    if (room < 0.0) return std::nullopt;
    double half_width = std::min(1.0, std::sqrt(1.0 - v * v) - std::abs(v));
    return Interval{-half_width, half_width};
}

TsirelsonScan tsirelson_scan(double v_step, double s_resolution, ScanCriterion criterion) {
    if (!(v_step > 0.0) || !(v_step <= 1.0)) {
        throw UserError(fmt::format("v grid step must lie in (0, 1], got {}", v_step));
    }
    if (!(s_resolution > 0.0) || !(s_resolution <= 1.0)) {
        throw UserError(fmt::format("s resolution must lie in (0, 1], got {}", s_resolution));
    }
    const auto v_count = static_cast<long>(std::floor(1.0 / v_step + 1e-9));
    const auto s_count = static_cast<long>(std::floor(1.0 / s_resolution + 1e-9));

    TsirelsonScan scan{0.0, 0.5, {}};
    scan.rows.reserve(static_cast<std::size_t>(v_count) + 1);
    bool any = false;
    for (long i = 0; i <= v_count; ++i) {
        double v = std::min(1.0, static_cast<double>(i) * v_step);
        auto interval = admissible_s_interval(v);
        bool feasible = false;
        switch (criterion) {
            case ScanCriterion::kInterval:
                feasible = interval.has_value();
                break;
            case ScanCriterion::kSZero:
                feasible = is_macroscopically_local(v, 0.0);
                break;
            case ScanCriterion::kSGrid:
                // Walk outward from s = 0 so feasible rows exit early.
                for (long j = 0; j <= s_count && !feasible; ++j) {
                    double s = std::min(1.0, static_cast<double>(j) * s_resolution);
                    feasible = is_macroscopically_local(v, s) || is_macroscopically_local(v, -s);
                }
                break;
        }
        scan.rows.push_back({v, interval, feasible});
        if (feasible) {
            any = true;
            scan.v_star = v;
        }
    }
    if (!any) {
        throw InvariantViolation("no feasible correlator found; v = 0 must always be feasible");
    }
    scan.visibility_star = (1.0 + scan.v_star) / 2.0;
    return scan;
}

BoxDistribution::BoxDistribution(const Table& p) : p_(p) {
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double total = 0.0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    double value = p[x][y][a][b];
                    if (!(value >= 0.0 && value <= 1.0)) {
                        throw InvalidBox(fmt::format(
                            "range: p[x={}][y={}][a={}][b={}] = {} is not in [0, 1]", x, y,
                            sign_label(a), sign_label(b), value));
                    }
                    total += value;
                }
            }
            if (std::abs(total - 1.0) > kBoxTolerance) {
                throw InvalidBox(fmt::format(
                    "normalization: probabilities for inputs (x={}, y={}) sum to {:.17g}, expected 1", x,
                    y, total));
            }
        }
    }
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            double m0 = p[x][0][a][0] + p[x][0][a][1];
            double m1 = p[x][1][a][0] + p[x][1][a][1];
            if (std::abs(m0 - m1) > kBoxTolerance) {
                throw InvalidBox(fmt::format(
                    "no-signaling: Alice marginal P(a={}|x={}) is {:.17g} for y=0 but {:.17g} for y=1 "
                    "(pair x={}, a={})",
                    sign_label(a), x, m0, m1, x, sign_label(a)));
            }
        }
    }
    for (int y = 0; y < 2; ++y) {
        for (int b = 0; b < 2; ++b) {
            double m0 = p[0][y][0][b] + p[0][y][1][b];
            double m1 = p[1][y][0][b] + p[1][y][1][b];
            if (std::abs(m0 - m1) > kBoxTolerance) {
                throw InvalidBox(fmt::format(
                    "no-signaling: Bob marginal P(b={}|y={}) is {:.17g} for x=0 but {:.17g} for x=1 "
                    "(pair y={}, b={})",
                    sign_label(b), y, m0, m1, y, sign_label(b)));
            }
        }
    }
}

double BoxDistribution::mean_a(int x) const {
    double m = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) m += outcome_value(a) * p_[x][0][a][b];
    }
    return m;
}

double BoxDistribution::mean_b(int y) const {
    double m = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) m += outcome_value(b) * p_[0][y][a][b];
    }
    return m;
}

double BoxDistribution::correlator(int x, int y) const {
    double e = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) e += outcome_value(a) * outcome_value(b) * p_[x][y][a][b];
    }
    return e;
}

BoxDistribution isotropic_box(double v) {
    require_unit_range("correlator v", v);
    BoxDistribution::Table t{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            int sign = (x * y == 1) ? -1 : 1;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    t[x][y][a][b] = 0.25 * (1.0 + sign * outcome_value(a) * outcome_value(b) * v);
                }
            }
        }
    }
    return BoxDistribution(t);
}

BoxDistribution deterministic_box(int a0, int a1, int b0, int b1) {
    for (int o : {a0, a1, b0, b1}) {
        if (o != 1 && o != -1) throw UserError(fmt::format("deterministic outcome must be +-1, got {}", o));
    }
    auto index = [](int outcome) { return outcome == 1 ? 0 : 1; };
    std::array<int, 2> as{a0, a1};
    std::array<int, 2> bs{b0, b1};
    BoxDistribution::Table t{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) t[x][y][index(as[x])][index(bs[y])] = 1.0;
    }
    return BoxDistribution(t);
}

BoxDistribution white_noise_box() { return isotropic_box(0.0); }

BoxDistribution local_box(std::span<const double, 16> weights) {
    BoxDistribution::Table t{};
    for (int i = 0; i < 16; ++i) {
        std::array<int, 2> a{(i >> 3) & 1, (i >> 2) & 1};
        std::array<int, 2> b{(i >> 1) & 1, i & 1};
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) t[x][y][a[x]][b[y]] += weights[i];
        }
    }
    return BoxDistribution(t);
}

MacroscopicSummary correlators_from_box(const BoxDistribution& box) {
    MacroscopicSummary s{};
    s.means = {box.mean_a(0), box.mean_a(1), box.mean_b(0), box.mean_b(1)};
    for (int i = 0; i < 4; ++i) s.variances[i] = std::max(0.0, 1.0 - s.means[i] * s.means[i]);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            s.raw_cross[x][y] = box.correlator(x, y);
            s.centered_cross[x][y] = s.raw_cross[x][y] - s.means[x] * s.means[2 + y];
        }
    }
    return s;
}

double chsh_value(const BoxDistribution& box) {
    return box.correlator(0, 0) + box.correlator(0, 1) + box.correlator(1, 0) - box.correlator(1, 1);
}

CorrMatrix centered_matrix(const MacroscopicSummary& summary, double s_a, double s_b) {
    const auto& v = summary.variances;
    const auto& c = summary.centered_cross;
    return CorrMatrix(CorrMatrix::Entries{{
        {v[kA0], s_a, c[0][0], c[0][1]},
        {s_a, v[kA1], c[1][0], c[1][1]},
        {c[0][0], c[1][0], v[kB0], s_b},
        {c[0][1], c[1][1], s_b, v[kB1]},
    }});
}

FeasibilityReport psd_completion_feasible(const MacroscopicSummary& summary, double tol) {
    for (double var : summary.variances) {
        if (!(var >= 0.0)) throw UserError("summary variances must be nonnegative");
    }
    for (const auto& row : summary.centered_cross) {
        for (double e : row) require_unit_range("centered cross-correlator", e);
    }
    auto objective = [&](double sa, double sb) {
        return centered_matrix(summary, sa, sb).min_eigenvalue();
    };

    const int half = static_cast<int>(std::lround(1.0 / kCoarseStep));
    double best_a = 0.0;
    double best_b = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = -half; i <= half; ++i) {
        for (int j = -half; j <= half; ++j) {
            double sa = i * kCoarseStep;
            double sb = j * kCoarseStep;
            double value = objective(sa, sb);
            if (value > best) {
                best = value;
                best_a = sa;
                best_b = sb;
            }
        }
    }

    constexpr std::array<std::array<int, 2>, 8> kMoves{
        {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
    for (double step = kCoarseStep / 2.0; step >= kFinestStep;) {
        bool moved = false;
        for (const auto& mv : kMoves) {
            double sa = std::clamp(best_a + mv[0] * step, -1.0, 1.0);
            double sb = std::clamp(best_b + mv[1] * step, -1.0, 1.0);
            double value = objective(sa, sb);
            if (value > best) {
                best = value;
                best_a = sa;
                best_b = sb;
                moved = true;
            }
        }
        if (!moved) step /= 2.0;
    }

    FeasibilityReport report{best >= -tol, std::nullopt, best};
    if (report.feasible) report.witness = Witness{best_a, best_b};
    return report;
}

}  // namespace nosig::prbox
