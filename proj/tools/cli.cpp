// Copyright 2026 The natspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "natspec/decomposition.hpp"
#include "natspec/errors.hpp"
#include "natspec/hausdorff.hpp"
#include "natspec/io.hpp"
#include "natspec/kronecker.hpp"
#include "natspec/parallel.hpp"
#include "natspec/spectrum.hpp"
#include "suite.hpp"

namespace natspec::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string out = ".";
    int workers = 1;
};

struct DecomposeArgs {
    std::string input;
    std::int64_t N = 10'000;
    int grid = 256;
    int refine = 64;
    double tol = 0.05;
    double density_tol = 0.1;
    int kmax = 4;
    std::string radius_mode = "fekete";
    std::vector<double> manual_radii;
    std::string generators = "default";
    bool no_spectrum = false;
};

struct ScanArgs {
    double alpha = std::sqrt(2.0);
    double beta = std::sqrt(3.0);
    int max_log2 = 16;
    double tol = 0.05;
};

struct RadiusArgs {
    std::string input;
    int kmax = 4;
    int grid = 512;
    int refine = 64;
    double rel_tol = 0.0;
    bool spectrum_csv = false;
    std::int64_t transform_N = 0;
};

struct KroneckerArgs {
    double alpha = std::sqrt(2.0);
    double beta = std::sqrt(3.0);
    double x = 0.0;
    double y = 0.0;
    double eps = 0.1;
    std::int64_t nmax = 1'000'000;
    std::int64_t min_abs_n = 0;
    std::string method = "scan";
    std::string parity = "any";
    std::vector<double> target;
};

struct VerifyArgs {
    std::uint64_t seed = 42;
    int cases = 20;
    std::int64_t N = 1024;
};

fs::path prepare_out(const Common& c) {
    const fs::path dir(c.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InvalidArgument("output directory '" + c.out + "' is not writable");
    return dir;
}

int cmd_decompose(const Common& c, const DecomposeArgs& a, std::ostream& out) {
    const MixedMeasure mu = io::read_measure(a.input);
    DecompositionOptions o;
    o.N = a.N;
    o.grid = a.grid;
    o.refine = a.refine;
    o.tol = a.tol;
    o.density_tol = a.density_tol;
    o.k_max = a.kmax;
    o.radius_mode = parse_radius_mode(a.radius_mode);
    o.check_spectrum = !a.no_spectrum;
    if (a.generators == "fresh") {
        o.generator_strategy = GeneratorStrategy::Fresh;
    } else if (a.generators != "default") {
        throw InvalidArgument("--generators must be 'default' or 'fresh'");
    }
    if (o.radius_mode == RadiusMode::Manual) {
        if (a.manual_radii.size() != 2) throw InvalidArgument("--radius-mode manual needs --manual-radii R0,R1");
        o.manual_r0 = a.manual_radii[0];
        o.manual_r1 = a.manual_radii[1];
    }
    const fs::path dir = prepare_out(c);
    DecompositionResult r = decompose(mu, o);
    r.report = verify_decomposition(mu, r, o);

    io::write_text(dir / "nu0.json", io::measure_to_json(r.nu0).dump(2) + "\n");
    io::write_text(dir / "nu1.json", io::measure_to_json(r.nu1).dump(2) + "\n");
    io::write_text(dir / "nu2.json", io::measure_to_json(MixedMeasure(r.nu2)).dump(2) + "\n");
    io::write_text(dir / "report.json", io::dump_with_timestamp(io::decomposition_to_json(r, o), io::utc_timestamp()));

    out << "R0 = " << io::format_double(r.r0.value) << ", R1 = " << io::format_double(r.r1.value) << "\n";
    for (const auto& ch : r.report.checks) {
        out << (ch.skipped ? "SKIP" : ch.passed ? "PASS" : "FAIL") << "  " << ch.name << "  residual "
            << io::format_double(ch.residual) << " (threshold " << io::format_double(ch.threshold) << ")";
        if (!ch.detail.empty()) out << "  " << ch.detail;
        out << "\n";
    }
    return r.report.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_density_scan(const Common& c, const ScanArgs& a, std::ostream& out) {
    if (a.max_log2 < 4 || a.max_log2 > 24) throw InvalidArgument("--max-log2 must be in [4, 24]");
    const GeneratorBasis basis({{"alpha", a.alpha}, {"beta", a.beta}});
    const MixedMeasure rho(make_rho(basis, Angle::generator(2, 0), Angle::generator(2, 1)));
    const auto disk = disk_grid(1.0, a.tol);
    const fs::path dir = prepare_out(c);
    std::string csv = "N,covering_radius_all,covering_radius_even,covering_radius_odd\n";
    for (int e = 4; e <= a.max_log2; ++e) {
        const std::int64_t N = std::int64_t{1} << e;
        csv += std::to_string(N);
        for (const auto s : {Subset::All, Subset::Even, Subset::Odd}) {
            csv += ',';
            csv += io::format_double(directed_hausdorff(disk, transform_closure_sample(rho, N, s).points));
        }
        csv += '\n';
    }
    io::write_text(dir / "density_scan.csv", csv);
    out << csv;
    return kExitOk;
}

int cmd_spectral_radius(const Common& c, const RadiusArgs& a, std::ostream& out) {
    const MixedMeasure mu = io::read_measure(a.input);
    const fs::path dir = prepare_out(c);
    const FeketeReport rep = fekete_bound(mu, a.kmax, a.rel_tol);
    io::Json j;
    j["fekete"] = io::fekete_to_json(rep);
    std::optional<double> lower;
    std::string why;
    if (!mu.is_discrete()) {
        why = "density part present: only the Fekete upper bound is available";
    } else if (mu.disc.empty()) {
        lower = 0.0;
    } else {
        const auto p = char_polynomial(mu.disc);
        if (p.free_dims() > kMaxFreeDims) {
            why = "more than " + std::to_string(kMaxFreeDims) + " generators in use";
        } else {
            const auto tm = torus_max_point(p, a.grid, a.refine);
            lower = tm.value;
            j["torus_max"] = io::Json{{"value", tm.value}, {"torsion", tm.torsion}, {"phi", tm.phi}, {"grid", a.grid}};
            if (a.spectrum_csv) {
                const auto s = spectrum_sample(mu.disc, a.grid, a.refine);
                io::write_text(dir / "spectrum.csv", io::points_to_csv(s.points));
            }
        }
    }
    if (a.transform_N > 0) {
        io::write_text(dir / "transform.csv", io::points_to_csv(transform_closure_sample(mu, a.transform_N).points));
    }
    j["bracket"] = io::Json{{"lower", lower ? io::Json(*lower) : io::Json(nullptr)}, {"upper", rep.final_bound}};
    if (!why.empty()) j["note"] = why;
    io::write_text(dir / "spectral_radius.json", j.dump(2) + "\n");

    for (const auto& s : rep.steps) {
        out << "k=" << s.k << "  ||mu^(2^k)|| <= " << io::format_double(s.norm) << "  r=" << io::format_double(s.r)
            << "\n";
    }
    if (rep.budget_hit) out << "convolution budget reached\n";
    if (lower) {
        out << "bracket [" << io::format_double(*lower) << ", " << io::format_double(rep.final_bound) << "] width "
            << io::format_double(rep.final_bound - *lower) << "\n";
    } else {
        out << "upper bound " << io::format_double(rep.final_bound) << " (" << why << ")\n";
    }
    return kExitOk;
}

int cmd_kronecker(const Common& c, const KroneckerArgs& a, std::ostream& out) {
    const KroneckerMethod method = parse_method(a.method);
    io::Json j;
    if (!a.target.empty()) {
        if (a.target.size() != 2) throw InvalidArgument("--target takes re,im");
        const Complex w{a.target[0], a.target[1]};
        const auto h = hit_target(a.alpha, a.beta, w, a.eps, parse_parity(a.parity), a.nmax, method);
        j = io::Json{{"alpha", a.alpha},
                     {"beta", a.beta},
                     {"target", {w.real(), w.imag()}},
                     {"epsilon", a.eps},
                     {"parity", std::string(to_string(parse_parity(a.parity)))},
                     {"n", h.n},
                     {"value", {h.value.real(), h.value.imag()}},
                     {"error", h.error},
                     {"evaluations", h.evaluations}};
    } else {
        KroneckerProblem p;
        p.alpha = a.alpha;
        p.beta = a.beta;
        p.target_x = a.x;
        p.target_y = a.y;
        p.epsilon = a.eps;
        p.n_max = a.nmax;
        p.method = method;
        p.min_abs_n = a.min_abs_n;
        const auto s = solve(p);
        j = io::Json{{"problem",
                      {{"alpha", p.alpha},
                       {"beta", p.beta},
                       {"target_x", p.target_x},
                       {"target_y", p.target_y},
                       {"epsilon", p.epsilon},
                       {"n_max", p.n_max},
                       {"method", std::string(to_string(p.method))},
                       {"min_abs_n", p.min_abs_n}}},
                     {"solution",
                      {{"n", s.n},
                       {"err_alpha", s.err_alpha},
                       {"err_beta", s.err_beta},
                       {"evaluations", s.evaluations},
                       {"method", std::string(to_string(s.method))}}}};
    }
    const fs::path dir = prepare_out(c);
    io::write_text(dir / "kronecker.json", j.dump(2) + "\n");
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out) {
    if (a.cases < 1) throw InvalidArgument("--cases must be >= 1");
    const fs::path dir = prepare_out(c);
    SuiteOptions o;
    o.seed = a.seed;
    o.random_cases = a.cases;
    o.N = a.N;
    const auto checks = run_suite(o);
    bool all = true;
    for (const auto& ch : checks) {
        all = all && ch.passed;
        out << (ch.passed ? "PASS" : "FAIL") << "  " << ch.name << "  residual " << io::format_double(ch.residual)
            << "  cases " << ch.cases << "\n";
    }
    io::write_text(dir / "verify_report.json", io::dump_with_timestamp(suite_to_json(checks, o), io::utc_timestamp()));
    out << (all ? "all checks passed" : "verification FAILED") << "\n";
    return all ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"natspec: measures on the circle, natural spectra and the three-part decomposition"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--out", common.out, "Output directory")->capture_default_str();
    app.add_option("--workers", common.workers, "Worker threads (results do not depend on it)")
        ->capture_default_str()
        ->check(CLI::Range(1, 1024));

    DecomposeArgs dec;
    auto* d = app.add_subcommand("decompose", "Split a measure into two natural-spectrum parts and a discrete part");
    d->add_option("--input", dec.input, "Measure JSON")->required();
    d->add_option("--N", dec.N, "Transform range |n| <= N for verification")->capture_default_str();
    d->add_option("--grid", dec.grid, "Torus grid per dimension")->capture_default_str();
    d->add_option("--refine", dec.refine, "Refinement iterations")->capture_default_str();
    d->add_option("--tol", dec.tol, "Disk grid spacing and spectrum tolerance")->capture_default_str();
    d->add_option("--density-tol", dec.density_tol, "Density check tolerance (relative to R)")->capture_default_str();
    d->add_option("--kmax", dec.kmax, "Fekete squarings")->capture_default_str();
    d->add_option("--radius-mode", dec.radius_mode, "fekete | exact_discrete | manual")->capture_default_str();
    d->add_option("--manual-radii", dec.manual_radii, "R0,R1 for --radius-mode manual")->delimiter(',');
    d->add_option("--generators", dec.generators, "default | fresh")->capture_default_str();
    d->add_flag("--no-spectrum-check", dec.no_spectrum, "Skip the spectrum sample check");

    ScanArgs scan;
    auto* s = app.add_subcommand("density-scan", "Covering radius of {rho^(n)} in the unit disk for N = 2^4 ...");
    s->add_option("--alpha", scan.alpha)->capture_default_str();
    s->add_option("--beta", scan.beta)->capture_default_str();
    s->add_option("--max-log2", scan.max_log2, "Largest N is 2^max")->capture_default_str();
    s->add_option("--tol", scan.tol, "Disk grid spacing")->capture_default_str();

    RadiusArgs rad;
    auto* r = app.add_subcommand("spectral-radius", "Bracket the spectral radius of a measure");
    r->add_option("--input", rad.input, "Measure JSON")->required();
    r->add_option("--kmax", rad.kmax)->capture_default_str();
    r->add_option("--grid", rad.grid)->capture_default_str();
    r->add_option("--refine", rad.refine)->capture_default_str();
    r->add_option("--tol", rad.rel_tol, "Relative improvement that stops squaring (0: never)")->capture_default_str();
    r->add_flag("--spectrum-csv", rad.spectrum_csv, "Write the spectrum sample to spectrum.csv");
    r->add_option("--transform-N", rad.transform_N, "Write {mu^(n): |n| <= N} to transform.csv");

    KroneckerArgs kr;
    auto* k = app.add_subcommand("kronecker", "Simultaneous approximation, or hit a disk target with rho^(n)");
    k->add_option("--alpha", kr.alpha)->capture_default_str();
    k->add_option("--beta", kr.beta)->capture_default_str();
    k->add_option("--x", kr.x)->capture_default_str();
    k->add_option("--y", kr.y)->capture_default_str();
    k->add_option("--eps", kr.eps)->capture_default_str();
    k->add_option("--nmax", kr.nmax)->capture_default_str();
    k->add_option("--min-abs-n", kr.min_abs_n)->capture_default_str();
    k->add_option("--method", kr.method, "scan | lattice")->capture_default_str();
    k->add_option("--parity", kr.parity, "any | even | odd (with --target)")->capture_default_str();
    k->add_option("--target", kr.target, "re,im: find n with |rho^(n) - w| < eps")->delimiter(',');

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Run the invariant suite on seeded random measures and fixtures");
    v->add_option("--seed", ver.seed)->capture_default_str();
    v->add_option("--cases", ver.cases, "Random cases per property")->capture_default_str();
    v->add_option("--N", ver.N, "Transform range for decomposition checks")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    const int previous_workers = workers();
    set_workers(common.workers);
    int code = kExitOk;
    try {
        if (d->parsed()) code = cmd_decompose(common, dec, out);
        else if (s->parsed()) code = cmd_density_scan(common, scan, out);
        else if (r->parsed()) code = cmd_spectral_radius(common, rad, out);
        else if (k->parsed()) code = cmd_kronecker(common, kr, out);
        else if (v->parsed()) code = cmd_verify(common, ver, out);
    } catch (const NotFound& e) {
        err << "not found: " << e.what() << " (best n = " << e.best_n() << ", error " << e.best_error() << ")\n";
        code = kExitVerificationFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        code = kExitInputError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        code = kExitInputError;
    }
    set_workers(previous_workers);
    return code;
}

}  // namespace natspec::cli
