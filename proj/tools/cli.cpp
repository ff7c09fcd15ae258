#include "cli.hpp"

#include "grassproj/dset.hpp"
#include "grassproj/error.hpp"
#include "grassproj/lab.hpp"
#include "grassproj/randgrass.hpp"
#include "grassproj/suites.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace grassproj {

namespace {

struct Common {
    unsigned threads = 0;
    std::uint64_t seed = 0;
    std::string output;
};

struct GenConfig {
    bool ball = false;
    bool cantor = false;
    bool slice_union = false;
    int n = 2;
    int k = 10;
    double theta = 0.5;
    int base = 4;
    std::vector<int> digits{0, 3};
    int levels = 5;
    int side = 4;
};

struct SweepConfig {
    std::string set_path;
    std::string mu_path;
    std::size_t haar = 64;
    int m = 1;
    double alpha = 1.0;
    double eps = 0.05;
};

struct VerifyConfig {
    std::string suite;
    std::size_t trials = 1000;
    int exhaustive_cube = 3;
    std::string reproducer = "grassproj-reproducer.txt";
};

struct HaarConfig {
    int n = 2;
    int m = 1;
    std::size_t count = 64;
};

struct StatsConfig {
    std::string set_path;
    std::optional<double> kappa;
    std::string mu_path;
    double kappa_mu = 1.0;
    int k = 10;
    std::size_t probes = 16;
};

void add_common(CLI::App* cmd, Common& c, bool with_output) {
    cmd->add_option("--threads", c.threads, "worker threads (0: GRASSPROJ_THREADS or all cores)");
    cmd->add_option("--seed", c.seed, "random seed");
    if (with_output) cmd->add_option("-o,--output", c.output, "output path");
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return in;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
    body(f);
    f.flush();
    if (!f) throw Error(ErrorCode::Io, "write failed for " + path);
}

DiscretizedSet load_set(const std::string& path) {
    auto in = open_in(path);
    return read_discretized_set(in);
}

GrassmannSample load_sample(const std::string& path) {
    auto in = open_in(path);
    return read_grassmann_sample(in);
}

int cmd_gen(const GenConfig& g, const Common& c, std::ostream& out, std::ostream& err) {
    if (int(g.ball) + int(g.cantor) + int(g.slice_union) != 1)
        throw Error(ErrorCode::InvalidArgument, "choose exactly one of --ball, --cantor, --slice-union");
    GeneratorSpec spec = g.ball     ? GeneratorSpec(BallSpec{g.n, g.k, g.theta})
                         : g.cantor ? GeneratorSpec(CantorProductSpec{g.base, g.digits, g.n, g.levels})
                                    : GeneratorSpec(SliceUnionSpec{g.k, g.side});
    const auto set = generate(spec);
    std::ostream& summary = c.output.empty() ? err : out;
    if (c.output.empty())
        write_discretized_set(out, set);
    else
        write_file(c.output, [&](std::ostream& f) { write_discretized_set(f, set); });
    summary << "cells " << set.size() << "\n";
    summary << "k " << set.k() << "\n";
    summary << "box_dimension_proxy " << format_real(box_dimension_proxy(set)) << "\n";
    return kExitOk;
}

int cmd_sweep(const SweepConfig& s, const Common& c, std::ostream& out) {
    const auto set = load_set(s.set_path);
    std::optional<GrassmannSample> mu;
    if (!s.mu_path.empty()) {
        try {
            mu.emplace(load_sample(s.mu_path));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Io) throw;
            throw Error(ErrorCode::Format, std::string("invalid measure file: ") + e.what());
        }
    } else {
        if (s.m < 1 || s.m >= set.dim()) throw Error(ErrorCode::InvalidArgument, "need 0 < m < n");
        if (s.haar == 0) throw Error(ErrorCode::InvalidArgument, "--haar must be positive");
        mu.emplace(GrassmannSample::haar(set.dim(), s.m, s.haar, Rng(c.seed)));
    }
    if (mu->m() >= set.dim()) throw Error(ErrorCode::InvalidArgument, "need m < n");
    const auto report = projection_sweep(set, *mu, s.eps, s.alpha, c.threads);
    const std::string prefix = c.output.empty() ? "sweep" : c.output;
    write_file(prefix + ".json", [&](std::ostream& f) { write_sweep_json(f, report); });
    write_file(prefix + ".csv", [&](std::ostream& f) { write_sweep_csv(f, report); });
    std::size_t flagged = 0;
    for (const auto& d : report.directions) flagged += d.flagged;
    out << "directions " << report.directions.size() << "\n";
    out << "flagged " << flagged << "\n";
    out << "threshold " << format_real(report.threshold) << "\n";
    out << "exceptional_fraction " << format_real(report.exceptional_fraction) << "\n";
    return kExitOk;
}

int cmd_verify(const VerifyConfig& v, const Common& c, std::ostream& out, std::ostream& err) {
    SuiteConfig cfg;
    cfg.trials = v.trials;
    cfg.seed = c.seed;
    cfg.exhaustive_cube = v.exhaustive_cube;
    cfg.threads = c.threads;
    const auto r = run_suite(v.suite, cfg);
    out << "suite " << r.name << ": checked " << r.checked << ", violations " << r.violations << "\n";
    if (r.violations == 0) return kExitOk;
    write_file(v.reproducer, [&](std::ostream& f) { f << "suite " << r.name << " seed " << c.seed << "\n" << r.reproducer; });
    err << "violation; reproducer written to " << v.reproducer << "\n";
    return kExitViolation;
}

int cmd_haar(const HaarConfig& h, const Common& c, std::ostream& out) {
    if (h.count == 0) throw Error(ErrorCode::InvalidArgument, "--count must be positive");
    const auto mu = GrassmannSample::haar(h.n, h.m, h.count, Rng(c.seed));
    if (c.output.empty())
        write_grassmann_sample(out, mu);
    else
        write_file(c.output, [&](std::ostream& f) { write_grassmann_sample(f, mu); });
    return kExitOk;
}

int cmd_stats(const StatsConfig& s, const Common& c, std::ostream& out) {
    if (s.set_path.empty() && s.mu_path.empty())
        throw Error(ErrorCode::InvalidArgument, "give --set and/or --mu");
    if (!s.set_path.empty()) {
        const auto set = load_set(s.set_path);
        const double box = box_dimension_proxy(set);
        const double kappa = s.kappa.value_or(box);
        out << "cells " << set.size() << "\n";
        out << "k " << set.k() << "\n";
        out << "box_dimension_proxy " << format_real(box) << "\n";
        out << "frostman_kappa " << format_real(kappa) << "\n";
        out << "frostman_stat " << format_real(frostman_stat(set, kappa, c.threads)) << "\n";
    }
    if (!s.mu_path.empty()) {
        const auto mu = load_sample(s.mu_path);
        out << "atoms " << mu.size() << "\n";
        out << "noncon_kappa " << format_real(s.kappa_mu) << "\n";
        out << "noncon_stat " << format_real(noncon_stat(mu, s.kappa_mu, s.k, s.probes, Rng(c.seed), c.threads))
            << "\n";
    }
    return kExitOk;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Io: return kExitIo;
        case ErrorCode::Format: return kExitFormat;
        default: return kExitConfig;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discretised projection experiments on the Grassmannian", "grassproj"};
    app.require_subcommand(1);

    Common common;
    GenConfig gen;
    SweepConfig sweep;
    VerifyConfig verify;
    HaarConfig haar;
    StatsConfig stats;

    auto* g = app.add_subcommand("gen", "generate a discretised set file");
    add_common(g, common, true);
    g->add_flag("--ball", gen.ball, "cells meeting B(0, 2^(-k theta))");
    g->add_flag("--cantor", gen.cantor, "n-fold Cantor product");
    g->add_flag("--slice-union", gen.slice_union, "plane square plus axis segment in R^3");
    g->add_option("--n", gen.n, "ambient dimension")->check(CLI::Range(1, 8));
    g->add_option("--k", gen.k, "scale exponent, delta = 2^-k")->check(CLI::Range(0, 50));
    g->add_option("--theta", gen.theta, "ball radius exponent")->check(CLI::Range(0.0, 1.0));
    g->add_option("--base", gen.base, "Cantor base (power of two)");
    g->add_option("--digits", gen.digits, "Cantor digit set")->delimiter(',');
    g->add_option("--levels", gen.levels, "Cantor construction levels")->check(CLI::NonNegativeNumber);
    g->add_option("--side", gen.side, "slice-union side length")->check(CLI::PositiveNumber);

    auto* s = app.add_subcommand("sweep", "projection sweep with heavy-fiber certificates");
    add_common(s, common, true);
    s->add_option("--set", sweep.set_path, "set file")->required();
    s->add_option("--mu", sweep.mu_path, "Grassmann sample file (default: Haar draws)");
    s->add_option("--haar", sweep.haar, "number of Haar directions when --mu is absent");
    s->add_option("--m", sweep.m, "subspace dimension for Haar directions");
    s->add_option("--alpha", sweep.alpha, "dimension parameter")->required();
    s->add_option("--eps", sweep.eps, "exceptional-set slack")->check(CLI::NonNegativeNumber);

    auto* v = app.add_subcommand("verify", "run an invariant suite");
    add_common(v, common, false);
    v->add_option("--suite", verify.suite, "suite name")->required()->check(CLI::IsMember(std::vector<std::string>(
        suite_names().begin(), suite_names().end())));
    v->add_option("--trials", verify.trials, "randomised trials");
    v->add_option("--exhaustive-cube", verify.exhaustive_cube, "cube dimension for exhaustive parts")
        ->check(CLI::Range(2, 4));
    v->add_option("--reproducer", verify.reproducer, "where to dump a violating instance");

    auto* h = app.add_subcommand("haar", "write a Haar Grassmann sample");
    add_common(h, common, true);
    h->add_option("--n", haar.n, "ambient dimension")->required()->check(CLI::PositiveNumber);
    h->add_option("--m", haar.m, "subspace dimension")->required()->check(CLI::PositiveNumber);
    h->add_option("--count", haar.count, "number of atoms");

    auto* st = app.add_subcommand("stats", "Frostman and non-concentration statistics");
    add_common(st, common, false);
    st->add_option("--set", stats.set_path, "set file");
    st->add_option("--kappa", stats.kappa, "Frostman exponent (default: box-dimension proxy)");
    st->add_option("--mu", stats.mu_path, "Grassmann sample file");
    st->add_option("--kappa-mu", stats.kappa_mu, "non-concentration exponent");
    st->add_option("--k", stats.k, "finest radius 2^-k for the non-concentration scan")->check(CLI::Range(0, 50));
    st->add_option("--probes", stats.probes, "extra Haar probes");

    std::vector<std::string> argv_store{"grassproj"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (g->parsed()) return cmd_gen(gen, common, out, err);
        if (s->parsed()) return cmd_sweep(sweep, common, out);
        if (v->parsed()) return cmd_verify(verify, common, out, err);
        if (h->parsed()) return cmd_haar(haar, common, out);
        return cmd_stats(stats, common, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::logic_error& e) {
        err << "internal check failed: " << e.what() << "\n";
        return kExitViolation;
    }
}

}  // namespace grassproj
