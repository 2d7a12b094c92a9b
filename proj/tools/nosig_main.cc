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


#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "nosig/box_json.h"
#include "nosig/errors.h"
#include "nosig/mixture_io.h"
#include "nosig/montecarlo.h"
#include "nosig/pointer.h"
#include "nosig/prbox.h"
#include "nosig/svg_plot.h"

namespace {

using nlohmann::json;
using namespace nosig;

constexpr int kExitUser = 2;
constexpr int kExitInternal = 3;
constexpr std::size_t kMaxPlotPoints = 4000;

struct CommonOptions {
    std::string out;
    std::string format = "csv";
    std::string plot;
};

void add_common(CLI::App* cmd, CommonOptions& common, bool with_format = true) {
    cmd->add_option("--out", common.out, "Output file (default: stdout)");
    if (with_format) {
        cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    }
    cmd->add_option("--plot", common.plot, "Write an SVG plot to this path");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw UserError(fmt::format("cannot open '{}' for writing", path));
    file << text;
    if (!file) throw UserError(fmt::format("failed writing '{}'", path));
}

std::string read_text(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UserError(fmt::format("cannot open '{}' for reading", path));
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json mixture_json(const pointer::ShiftMixture& mixture) {
    json components = json::array();
    auto exact = mixture.exact_weights();
    for (std::size_t i = 0; i < mixture.components().size(); ++i) {
        const auto& c = mixture.components()[i];
        json entry{{"shift", c.shift}, {"weight", c.weight}};
        if (!exact.empty()) entry["exact"] = exact[i].str();
        components.push_back(std::move(entry));
    }
    return components;
}

std::string mixture_csv(const pointer::ShiftMixture& mixture) {
    std::ostringstream out;
    if (!mixture.is_exact()) {
        write_mixture_csv(out, mixture);
        return out.str();
    }
    out << "shift,weight,exact\n";
    auto exact = mixture.exact_weights();
    for (std::size_t i = 0; i < mixture.components().size(); ++i) {
        const auto& c = mixture.components()[i];
        out << c.shift << ',' << format_real(c.weight) << ',' << exact[i].str() << '\n';
    }
    return out.str();
}

pointer::Grid plot_grid(int n_spins, const pointer::PointerShape& shape) {
    auto grid = pointer::default_grid(n_spins, shape);
    grid.step = std::max(grid.step, (grid.hi - grid.lo) / static_cast<double>(kMaxPlotPoints));
    return grid;
}

PlotSeries density_series(const std::string& label, const pointer::ShiftMixture& mixture,
                                const pointer::Grid& grid, bool fill) {
    PlotSeries series{label, {}, mixture.evaluate(grid), fill};
    series.x.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) series.x.push_back(grid.at(i));
    return series;
}

// pointer-dist

struct PointerDistOptions {
    CommonOptions common;
    int n = 0;
    std::string basis = "z";
    std::optional<int> mu;
    double delta = 1.0;
    bool compare = false;
    bool rational = false;
    std::string density;
};

pointer::ShiftMixture pointer_mixture(const PointerDistOptions& o, const std::string& basis,
                                      const pointer::PointerShape& shape, pointer::Arithmetic mode) {
    if (!o.mu) {
        return basis == "z" ? pointer::rho_z_marginal(o.n, shape, mode) : pointer::rho_x_marginal(o.n, shape, mode);
    }
    pointer::Magnetization mu(*o.mu, o.n);
    if (basis == "z") return pointer::rho_z_conditional(mu, shape);
    return pointer::rho_x_conditional(mu, shape, mode);
}

std::string compare_csv(const pointer::ShiftMixture& z, const pointer::ShiftMixture& x) {
    std::ostringstream out;
    out << "shift,z_weight,x_weight\n";
    auto zc = z.components();
    auto xc = x.components();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < zc.size() || j < xc.size()) {
        int shift = std::min(i < zc.size() ? zc[i].shift : INT32_MAX, j < xc.size() ? xc[j].shift : INT32_MAX);
        double zw = 0.0;
        double xw = 0.0;
        if (i < zc.size() && zc[i].shift == shift) zw = zc[i++].weight;
        if (j < xc.size() && xc[j].shift == shift) xw = xc[j++].weight;
        out << shift << ',' << format_real(zw) << ',' << format_real(xw) << '\n';
    }
    return out.str();
}

void run_pointer_dist(const PointerDistOptions& o) {
    pointer::PointerShape shape(o.delta);
    if (o.n < 1) throw UserError(fmt::format("--n must be >= 1, got {}", o.n));
    if (o.mu) pointer::Magnetization(*o.mu, o.n);
    const auto mode = o.rational ? pointer::Arithmetic::kExact : pointer::Arithmetic::kFloating;
    if (o.rational && o.n > pointer::kMaxExactSpins) {
        throw UserError(fmt::format("--rational supports --n <= {}, got {}", pointer::kMaxExactSpins, o.n));
    }
    if (!o.mu && o.basis == "x" && o.n > pointer::kMaxMarginalSpins) {
        throw UserError(fmt::format("x-basis marginal supports --n <= {}, got {}", pointer::kMaxMarginalSpins, o.n));
    }

    if (o.compare) {
        // The x-basis state, conditional or averaged, against the z marginal.
        if (o.n > pointer::kMaxMarginalSpins && !o.mu) {
            throw UserError(fmt::format("--compare without --mu supports --n <= {}", pointer::kMaxMarginalSpins));
        }
        PointerDistOptions x_opts = o;
        auto x = pointer_mixture(x_opts, "x", shape, mode);
        auto z = pointer::rho_z_marginal(o.n, shape, mode);
        double distance = pointer::total_variation(x, z);
        if (o.common.format == "json") {
            json doc{{"n", o.n}, {"delta", o.delta}, {"mu", o.mu ? json(*o.mu) : json(nullptr)},
                     {"z_marginal", mixture_json(z)}, {"x", mixture_json(x)}, {"total_variation", distance}};
            write_text(o.common.out, dump(doc));
        } else {
            write_text(o.common.out, compare_csv(z, x));
        }
        std::cerr << "total_variation " << format_real(distance) << '\n';
        if (!o.common.plot.empty()) {
            auto grid = plot_grid(o.n, shape);
            std::vector<PlotSeries> series{density_series("z marginal", z, grid, true),
                                                 density_series(o.mu ? "x given mu" : "x marginal", x, grid, false)};
            write_text(o.common.plot, render_svg({"Pointer density", "x", "density"}, series));
        }
        return;
    }

    auto mixture = pointer_mixture(o, o.basis, shape, mode);
    if (o.common.format == "json") {
        json doc{{"n", o.n}, {"basis", o.basis}, {"delta", o.delta}, {"mu", o.mu ? json(*o.mu) : json(nullptr)},
                 {"mean", mixture.mean()}, {"variance", mixture.variance()}, {"components", mixture_json(mixture)}};
        write_text(o.common.out, dump(doc));
    } else {
        write_text(o.common.out, mixture_csv(mixture));
    }
    std::cerr << "mean " << format_real(mixture.mean()) << "\nvariance " << format_real(mixture.variance()) << '\n';
    if (!o.common.plot.empty() || !o.density.empty()) {
        auto grid = plot_grid(o.n, shape);
        if (!o.density.empty()) {
            std::ostringstream out;
            write_density_csv(out, grid, mixture.evaluate(grid));
            write_text(o.density, out.str());
        }
        if (!o.common.plot.empty()) {
            std::vector<PlotSeries> series{density_series(o.basis + " basis", mixture, grid, true)};
            write_text(o.common.plot, render_svg({"Pointer density", "x", "density"}, series));
        }
    }
}

// magnet

struct MagnetOptions {
    CommonOptions common;
    int n = 0;
    double theta = 0.0;
    double delta = 1.0;
};

void run_magnet(const MagnetOptions& o) {
    if (o.n < 1) throw UserError(fmt::format("--n must be >= 1, got {}", o.n));
    if (!(o.theta >= 0.0 && o.theta <= std::numbers::pi)) {
        throw UserError(fmt::format("--theta must lie in [0, pi], got {}", o.theta));
    }
    pointer::PointerShape shape(o.delta);
    auto mixture = pointer::pointer_distribution_of_state(pointer::magnet_amplitudes(o.n, o.theta), shape);
    if (o.common.format == "json") {
        json doc{{"n", o.n}, {"theta", o.theta}, {"delta", o.delta}, {"mean", mixture.mean()},
                 {"variance", mixture.variance()}, {"components", mixture_json(mixture)}};
        write_text(o.common.out, dump(doc));
    } else {
        write_text(o.common.out, mixture_csv(mixture));
    }
    std::cerr << "mean " << format_real(mixture.mean()) << "\nvariance " << format_real(mixture.variance()) << '\n';
    if (!o.common.plot.empty()) {
        auto grid = plot_grid(o.n, shape);
        std::vector<PlotSeries> series{density_series("pointer", mixture, grid, true)};
        write_text(o.common.plot, render_svg({"Magnet pointer density", "x", "density"}, series));
    }
}

// tsirelson

struct TsirelsonOptions {
    CommonOptions common;
    double v_step = 1e-5;
    double s_step = 1e-3;
    std::string criterion = "interval";
};

void run_tsirelson(const TsirelsonOptions& o) {
    auto criterion = o.criterion == "interval" ? prbox::ScanCriterion::kInterval
                     : o.criterion == "s-grid" ? prbox::ScanCriterion::kSGrid
                                               : prbox::ScanCriterion::kSZero;
    auto scan = prbox::tsirelson_scan(o.v_step, o.s_step, criterion);
    if (o.common.format == "json") {
        json rows = json::array();
        for (const auto& r : scan.rows) {
            json interval = r.s_interval ? json::array({r.s_interval->lo, r.s_interval->hi}) : json(nullptr);
            rows.push_back({{"v", r.v}, {"s_interval", interval}, {"feasible", r.feasible}});
        }
        json doc{{"v_star", scan.v_star}, {"visibility_star", scan.visibility_star}, {"rows", rows}};
        write_text(o.common.out, dump(doc));
    } else {
        std::ostringstream out;
        out << "v,s_lo,s_hi,feasible\n";
        for (const auto& r : scan.rows) {
            out << format_real(r.v) << ',';
            if (r.s_interval) out << format_real(r.s_interval->lo) << ',' << format_real(r.s_interval->hi);
            else out << ',';
            out << ',' << (r.feasible ? 1 : 0) << '\n';
        }
        write_text(o.common.out, out.str());
    }
    std::cerr << "v_star " << format_real(scan.v_star) << "\nvisibility_star " << format_real(scan.visibility_star)
              << '\n';
    if (!o.common.plot.empty()) {
        PlotSeries hi{"s upper", {}, {}, false};
        PlotSeries lo{"s lower", {}, {}, false};
        std::size_t stride = std::max<std::size_t>(1, scan.rows.size() / kMaxPlotPoints);
        for (std::size_t i = 0; i < scan.rows.size(); i += stride) {
            const auto& r = scan.rows[i];
            if (!r.s_interval) break;
            hi.x.push_back(r.v);
            hi.y.push_back(r.s_interval->hi);
            lo.x.push_back(r.v);
            lo.y.push_back(r.s_interval->lo);
        }
        std::vector<PlotSeries> series{hi, lo};
        write_text(o.common.plot, render_svg({"Admissible s interval", "v", "s"}, series));
    }
}

// box-check

struct BoxCheckOptions {
    CommonOptions common;
    std::string input;
    double tolerance = prbox::kDefaultPsdTolerance;
};

void run_box_check(const BoxCheckOptions& o) {
    auto box = parse_box_json(read_text(o.input));
    auto summary = prbox::correlators_from_box(box);
    double chsh = prbox::chsh_value(box);
    auto report = prbox::psd_completion_feasible(summary, o.tolerance);
    json doc{{"valid", true}};
    doc.update(feasibility_report_json(report, chsh));
    json correlators = json::array();
    for (const auto& row : summary.raw_cross) correlators.push_back({row[0], row[1]});
    doc["correlators"] = correlators;
    doc["means"] = {{"A0", summary.means[0]}, {"A1", summary.means[1]}, {"B0", summary.means[2]},
                    {"B1", summary.means[3]}};
    write_text(o.common.out, dump(doc));
    std::cerr << "chsh " << format_real(chsh) << "\nfeasible " << (report.feasible ? "true" : "false") << '\n';
}

// prbox-sim

struct PrboxSimOptions {
    CommonOptions common;
    int n = 10000;
    double v = 0.0;
    int runs = 100;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> settings;
    unsigned threads = 1;
    double alpha = 0.01;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    std::random_device device;
    std::uint64_t value = (std::uint64_t(device()) << 32) ^ device();
    std::cerr << "seed " << value << " (randomly chosen; pass --seed to reproduce)\n";
    return value;
}

std::vector<mc::InputSetting> parse_settings(const std::vector<std::string>& raw) {
    if (raw.empty()) return {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    std::vector<mc::InputSetting> out;
    for (const auto& s : raw) {
        if (s.size() != 2 || (s[0] != '0' && s[0] != '1') || (s[1] != '0' && s[1] != '1')) {
            throw UserError(fmt::format("--setting expects two bits such as 01, got '{}'", s));
        }
        out.push_back({s[0] - '0', s[1] - '0'});
    }
    return out;
}

void run_prbox_sim(const PrboxSimOptions& o) {
    if (o.n < 1) throw UserError(fmt::format("--n must be >= 1, got {}", o.n));
    if (o.runs < 1) throw UserError(fmt::format("--runs must be >= 1, got {}", o.runs));
    if (!(std::abs(o.v) <= 1.0)) throw UserError(fmt::format("--v must lie in [-1, 1], got {}", o.v));
    mc::EnsembleConfig config{o.n, o.v, parse_settings(o.settings), o.runs, resolve_seed(o.seed), o.threads};
    auto records = mc::run_ensembles(config);

    json summary = json::array();
    std::vector<PlotSeries> series;
    const double scale = std::sqrt(static_cast<double>(o.n));
    for (const auto& setting : config.settings) {
        std::vector<mc::EnsembleRunResult> runs;
        std::vector<double> scaled;
        for (const auto& r : records) {
            if (r.setting.x != setting.x || r.setting.y != setting.y) continue;
            runs.push_back(r.result);
            scaled.push_back(r.result.a_sum / scale);
        }
        auto est = mc::estimate_correlator(runs);
        double expected = (setting.x * setting.y == 1 ? -1.0 : 1.0) * o.v;
        json entry{{"x", setting.x}, {"y", setting.y}, {"runs", runs.size()}, {"correlator", est.mean},
                   {"standard_error", est.standard_error}, {"expected", expected}};
        std::string ks_text = "skipped (fewer than 100 runs)";
        if (scaled.size() >= mc::kMinKsSamples) {
            auto ks = mc::gaussianity_check(scaled, o.alpha, 2.0 / scale);
            entry["ks"] = {{"statistic", ks.statistic}, {"critical_value", ks.critical_value}, {"pass", ks.pass}};
            ks_text = fmt::format("D={} crit={} {}", format_real(ks.statistic), format_real(ks.critical_value),
                                  ks.pass ? "pass" : "fail");
        } else {
            entry["ks"] = nullptr;
        }
        std::cerr << fmt::format("x={} y={} <AB>/N={} +- {} (expected {}) ks {}\n", setting.x, setting.y,
                                 format_real(est.mean), format_real(est.standard_error), format_real(expected),
                                 ks_text);
        summary.push_back(std::move(entry));
        if (!o.common.plot.empty()) {
            std::sort(scaled.begin(), scaled.end());
            PlotSeries ecdf{fmt::format("x={} y={}", setting.x, setting.y), {}, {}, false};
            std::size_t stride = std::max<std::size_t>(1, scaled.size() / kMaxPlotPoints);
            for (std::size_t i = 0; i < scaled.size(); i += stride) {
                ecdf.x.push_back(scaled[i]);
                ecdf.y.push_back((i + 1.0) / scaled.size());
            }
            series.push_back(std::move(ecdf));
        }
    }

    if (o.common.format == "json") {
        json rows = json::array();
        for (const auto& r : records) {
            rows.push_back({{"run_id", r.run_id}, {"x", r.setting.x}, {"y", r.setting.y}, {"A", r.result.a_sum},
                            {"B", r.result.b_sum}});
        }
        json doc{{"n", o.n}, {"v", o.v}, {"seed", config.seed}, {"runs", rows}, {"summary", summary}};
        write_text(o.common.out, dump(doc));
    } else {
        std::ostringstream out;
        out << "run_id,x,y,A,B\n";
        for (const auto& r : records) {
            out << r.run_id << ',' << r.setting.x << ',' << r.setting.y << ',' << r.result.a_sum << ','
                << r.result.b_sum << '\n';
        }
        write_text(o.common.out, out.str());
    }
    if (!o.common.plot.empty()) {
        PlotSeries normal{"standard normal", {}, {}, false};
        for (int i = 0; i <= 400; ++i) {
            double z = -4.0 + 0.02 * i;
            normal.x.push_back(z);
            normal.y.push_back(0.5 * std::erfc(-z / std::numbers::sqrt2));
        }
        series.push_back(std::move(normal));
        write_text(o.common.plot, render_svg({"Empirical CDF of A/sqrt(N)", "A/sqrt(N)", "CDF"}, series));
    }
}

// singlet-sim

struct SingletSimOptions {
    CommonOptions common;
    int n = 16;
    double delta = 1.0;
    int runs = 1000;
    std::string basis = "both";
    std::optional<std::uint64_t> seed;
};

void run_singlet_sim(const SingletSimOptions& o) {
    if (o.n < 1) throw UserError(fmt::format("--n must be >= 1, got {}", o.n));
    mc::SingletSampler sampler(o.n, pointer::PointerShape(o.delta));
    std::vector<mc::Basis> bases;
    if (o.basis != "x") bases.push_back(mc::Basis::kZ);
    if (o.basis != "z") bases.push_back(mc::Basis::kX);
    auto records = mc::run_singlet_protocol(sampler, bases, o.runs, resolve_seed(o.seed));
    if (o.common.format == "json") {
        json rows = json::array();
        for (const auto& r : records) {
            rows.push_back({{"run_id", r.run_id}, {"basis", mc::basis_name(r.basis)}, {"mu", r.draw.mu},
                            {"x_p", r.draw.x_p}});
        }
        write_text(o.common.out, dump(json{{"n", o.n}, {"delta", o.delta}, {"records", rows}}));
    } else {
        std::ostringstream out;
        out << "run_id,basis,mu,x_p\n";
        for (const auto& r : records) {
            out << r.run_id << ',' << mc::basis_name(r.basis) << ',' << r.draw.mu << ',' << format_real(r.draw.x_p)
                << '\n';
        }
        write_text(o.common.out, out.str());
    }
    if (bases.size() == 2) {
        std::vector<double> z;
        std::vector<double> x;
        for (const auto& r : records) (r.basis == mc::Basis::kZ ? z : x).push_back(r.draw.x_p);
        auto ks = mc::two_sample_ks(z, x, 0.01);
        std::cerr << fmt::format("two-sample ks D={} crit={} {}\n", format_real(ks.statistic),
                                 format_real(ks.critical_value), ks.pass ? "pass" : "fail");
    }
    if (!o.common.plot.empty()) {
        std::vector<PlotSeries> series;
        for (auto basis : bases) {
            std::vector<double> xs;
            for (const auto& r : records) {
                if (r.basis == basis) xs.push_back(r.draw.x_p);
            }
            std::sort(xs.begin(), xs.end());
            PlotSeries ecdf{std::string(mc::basis_name(basis)) + " basis", {}, {}, false};
            std::size_t stride = std::max<std::size_t>(1, xs.size() / kMaxPlotPoints);
            for (std::size_t i = 0; i < xs.size(); i += stride) {
                ecdf.x.push_back(xs[i]);
                ecdf.y.push_back((i + 1.0) / xs.size());
            }
            series.push_back(std::move(ecdf));
        }
        write_text(o.common.plot, render_svg({"Empirical CDF of the pointer reading", "x_p", "CDF"}, series));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pointer statistics, macroscopic box correlators and box ensemble simulation"};
    app.require_subcommand(1);

    PointerDistOptions pd;
    auto* pointer_dist = app.add_subcommand("pointer-dist", "Pointer distribution after measuring N spins");
    add_common(pointer_dist, pd.common);
    pointer_dist->add_option("--n", pd.n, "Number of spins")->required();
    pointer_dist->add_option("--basis", pd.basis, "Alice's measurement basis")->check(CLI::IsMember({"z", "x"}));
    pointer_dist->add_option("--mu", pd.mu, "Alice's magnetization (omit to average over it)");
    pointer_dist->add_option("--delta", pd.delta, "Pointer width");
    pointer_dist->add_flag("--compare", pd.compare, "Compare the x-basis state with the z-basis marginal");
    pointer_dist->add_flag("--rational", pd.rational, "Exact rational weights (N <= 200)");
    pointer_dist->add_option("--density", pd.density, "Write the gridded density CSV to this path");
    pointer_dist->callback([&] { run_pointer_dist(pd); });

    MagnetOptions mg;
    auto* magnet = app.add_subcommand("magnet", "Pointer distribution for N spins through a tilted magnet");
    add_common(magnet, mg.common);
    magnet->add_option("--n", mg.n, "Number of spins")->required();
    magnet->add_option("--theta", mg.theta, "Tilt angle in [0, pi]")->required();
    magnet->add_option("--delta", mg.delta, "Pointer width");
    magnet->callback([&] { run_magnet(mg); });

    TsirelsonOptions ts;
    auto* tsirelson = app.add_subcommand("tsirelson", "Scan the correlator for macroscopic locality");
    add_common(tsirelson, ts.common);
    tsirelson->add_option("--v-step", ts.v_step, "Correlator grid step");
    tsirelson->add_option("--s-step", ts.s_step, "Grid step in s for the s-grid criterion");
    tsirelson->add_option("--criterion", ts.criterion, "Feasibility criterion")
        ->check(CLI::IsMember({"interval", "s-grid", "s-zero"}));
    tsirelson->callback([&] { run_tsirelson(ts); });

    BoxCheckOptions bc;
    auto* box_check = app.add_subcommand("box-check", "Validate a box and test macroscopic locality");
    add_common(box_check, bc.common, false);
    box_check->add_option("input", bc.input, "Box JSON file")->required();
    box_check->add_option("--tol", bc.tolerance, "Eigenvalue tolerance");
    box_check->callback([&] { run_box_check(bc); });

    PrboxSimOptions ps;
    auto* prbox_sim = app.add_subcommand("prbox-sim", "Simulate ensembles of isotropic boxes");
    add_common(prbox_sim, ps.common);
    prbox_sim->add_option("--n", ps.n, "Boxes per run");
    prbox_sim->add_option("--v", ps.v, "Correlator v in [-1, 1]");
    prbox_sim->add_option("--runs", ps.runs, "Runs per input setting");
    prbox_sim->add_option("--seed", ps.seed, "RNG seed (random and logged if omitted)");
    prbox_sim->add_option("--setting", ps.settings, "Input pair xy, repeatable (default: all four)");
    prbox_sim->add_option("--threads", ps.threads, "Worker threads (0: all cores)");
    prbox_sim->add_option("--alpha", ps.alpha, "Significance level of the Gaussianity test");
    prbox_sim->callback([&] { run_prbox_sim(ps); });

    SingletSimOptions ss;
    auto* singlet_sim = app.add_subcommand("singlet-sim", "Sample the pointer reading for the singlet protocol");
    add_common(singlet_sim, ss.common);
    singlet_sim->add_option("--n", ss.n, "Number of spins");
    singlet_sim->add_option("--delta", ss.delta, "Pointer width");
    singlet_sim->add_option("--runs", ss.runs, "Runs per basis");
    singlet_sim->add_option("--basis", ss.basis, "Basis to sample")->check(CLI::IsMember({"z", "x", "both"}));
    singlet_sim->add_option("--seed", ss.seed, "RNG seed (random and logged if omitted)");
    singlet_sim->callback([&] { run_singlet_sim(ss); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUser;
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
