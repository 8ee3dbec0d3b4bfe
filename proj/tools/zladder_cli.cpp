// Command-line front end: builds/caches Z^2 grids, tabulates the ladder and
// reverse chains, emits Gram reports, and runs the verification suites.
//
// Exit codes: 0 success, 2 usage, 3 numeric failure, 4 I/O failure.

#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zladder/grid.hpp"
#include "zladder/iterations.hpp"
#include "zladder/ladder.hpp"
#include "zladder/orthosys.hpp"
#include "zladder/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CommonOpts {
    double t_max = 2e4;
    double solve_t_max = -1.0;  // default: t_max
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int ppo = 8;
    double a = 7.0;
    int threads = 0;
    std::string cache_dir;
    std::string format = "csv";

    std::string resolved_cache_dir() const {
        if (!cache_dir.empty()) return cache_dir;
        if (const char* env = std::getenv("ZLADDER_CACHE_DIR")) return env;
        return ".";
    }

    zladder::hlgrid::GridConfig grid_config() const {
        zladder::hlgrid::GridConfig cfg;
        cfg.t_max = t_max;
        cfg.solve_t_max = solve_t_max < 0.0 ? t_max : solve_t_max;
        cfg.spec.rel_tol = rel_tol;
        cfg.spec.abs_tol = abs_tol;
        cfg.spec.panels_per_oscillation = ppo;
        cfg.threads = threads;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--t-max", o.t_max, "grid F(T) coverage");
    cmd->add_option("--solve-t-max", o.solve_t_max,
                    "ladder solve coverage (default: --t-max)");
    cmd->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
    cmd->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance");
    cmd->add_option("--ppo", o.ppo, "panels per oscillation (>= 4)");
    cmd->add_option("--a", o.a, "mu-family parameter in [7,8]");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    cmd->add_option("--cache", o.cache_dir,
                    "cache directory (or ZLADDER_CACHE_DIR)");
    cmd->add_option("--format", o.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

// Load the cache keyed by the spec hash, or build and persist it.
zladder::hlgrid::CumulativeZGrid load_or_build(const CommonOpts& o,
                                               bool force_rebuild,
                                               bool quiet) {
    using zladder::hlgrid::CumulativeZGrid;
    const auto cfg = o.grid_config();
    const std::string path =
        zladder::verify::Context::cache_path_for(cfg, o.resolved_cache_dir());
    if (!force_rebuild) {
        if (std::ifstream probe(path); probe) {
            try {
                auto g = CumulativeZGrid::load(path);
                if (g.config.compatible(cfg)) {
                    if (!quiet)
                        std::fprintf(stderr, "loaded cache %s\n", path.c_str());
                    return g;
                }
                std::fprintf(stderr,
                             "warning: cache %s was built with a different "
                             "spec; rebuilding\n",
                             path.c_str());
            } catch (const std::exception& e) {
                std::fprintf(stderr, "warning: cache %s unreadable (%s); "
                                     "rebuilding\n",
                             path.c_str(), e.what());
            }
        }
    }
    auto g = CumulativeZGrid::build(cfg);
    g.save(path);
    if (!quiet) std::fprintf(stderr, "built and saved cache %s\n", path.c_str());
    return g;
}

// Rows of (column -> value); serialized as RFC-style CSV or a JSON array
// with identical field names and values.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;   // stringified values
    std::vector<std::vector<double>> numeric;     // parallel, NaN for blanks

    void add_row(const std::vector<double>& vals,
                 const std::vector<bool>& valid = {}) {
        std::vector<std::string> srow;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const bool ok = valid.empty() || valid[i];
            srow.push_back(ok ? fmt17(vals[i]) : "");
        }
        rows.push_back(std::move(srow));
        numeric.push_back(vals);
    }

    void print(const std::string& format) const {
        if (format == "json") {
            nlohmann::json out = nlohmann::json::array();
            for (std::size_t r = 0; r < rows.size(); ++r) {
                nlohmann::json obj;
                for (std::size_t c = 0; c < columns.size(); ++c) {
                    if (rows[r][c].empty())
                        obj[columns[c]] = nullptr;
                    else
                        obj[columns[c]] = numeric[r][c];
                }
                out.push_back(obj);
            }
            std::cout << out.dump(2) << "\n";
            return;
        }
        for (std::size_t c = 0; c < columns.size(); ++c)
            std::cout << columns[c] << (c + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                std::cout << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
};

int cmd_grid(const CommonOpts& o, bool force) {
    const auto g = load_or_build(o, force, /*quiet=*/false);
    Table t;
    t.columns = {"panels", "head_nodes", "hl_t_max", "damp_t_max", "F_t_max"};
    t.add_row({static_cast<double>(g.panel_lo.size() - 1),
               static_cast<double>(g.node_t.size()), g.hl_t_max(),
               g.panel_lo.back(), g.hl_integral(g.config.t_max)});
    t.print(o.format);
    return kExitOk;
}

int cmd_ladder(const CommonOpts& o, const std::vector<double>& Ts,
               bool fit_c0) {
    const auto g = load_or_build(o, false, /*quiet=*/true);
    zladder::ladder::LadderConfig lc;
    lc.a = o.a;
    zladder::ladder::Ladder lad(g, lc);
    if (fit_c0) {
        std::vector<double> sample;
        for (double T = 0.1 * g.config.solve_t_max;
             T <= 0.8 * g.config.solve_t_max; T *= 1.45)
            sample.push_back(T);
        lad.fit_c0(sample);
    }
    Table t;
    t.columns = {"T",          "phi",   "phi1",        "T_minus_phi1",
                 "complement", "ratio", "omega_ln_t",  "hl_residual",
                 "error"};
    bool any_error = false;
    for (const double T : Ts) {
        try {
            const double phi = lad.solve_phi(T);
            const double p1 = 0.5 * phi;
            const double comp =
                zladder::kConst.one_minus_c *
                static_cast<double>(zladder::specfun::prime_count(T));
            t.add_row({T, phi, p1, T - p1, comp, (T - p1) / comp,
                       lad.omega(T) / std::log(T),
                       lad.hl_representation_residual(T), 0.0});
        } catch (const std::exception& e) {
            any_error = true;
            std::fprintf(stderr, "row T=%s failed: %s\n", fmt17(T).c_str(),
                         e.what());
            t.add_row({T, 0, 0, 0, 0, 0, 0, 0, 1.0},
                      {true, false, false, false, false, false, false, false,
                       true});
        }
    }
    t.print(o.format);
    return any_error ? kExitNumeric : kExitOk;
}

int cmd_chain(const CommonOpts& o, double T, double U, int k) {
    const auto g = load_or_build(o, false, /*quiet=*/true);
    zladder::ladder::LadderConfig lc;
    lc.a = o.a;
    zladder::ladder::Ladder lad(g, lc);
    if (U <= 0.0) U = T / (20.0 * std::log(T));
    const auto chain = zladder::iters::ReverseChain::build(T, U, k, lad);
    Table t;
    t.columns = {"k", "lo", "hi", "length", "gap", "gap_ratio"};
    const double gap_scale =
        zladder::kConst.one_minus_c * T / std::log(T);
    for (int j = 0; j <= k; ++j) {
        const auto& s = chain.segments[static_cast<std::size_t>(j)];
        if (j == 0)
            t.add_row({0.0, s.lo, s.hi, s.length(), 0.0, 0.0},
                      {true, true, true, true, false, false});
        else
            t.add_row({static_cast<double>(j), s.lo, s.hi, s.length(),
                       chain.gap(j), chain.gap(j) / gap_scale});
    }
    t.print(o.format);
    return kExitOk;
}

int cmd_gram(const CommonOpts& o, const std::string& base_name, int p,
             double T, int N, double l) {
    const auto g = load_or_build(o, false, /*quiet=*/true);
    zladder::ladder::LadderConfig lc;
    lc.a = o.a;
    zladder::ladder::Ladder lad(g, lc);
    const auto base = base_name == "trig"
                          ? zladder::orthosys::BaseSystem::trigonometric(-1.0, l)
                          : zladder::orthosys::BaseSystem::legendre();
    zladder::orthosys::GramReport rep;
    if (p == 0) {
        rep = zladder::orthosys::gram_of_base(base, N);
    } else {
        const auto spec = zladder::orthosys::make_iterated_spec(base, p, T, lad);
        rep = zladder::orthosys::gram_of_iterated(spec, N, lad);
    }
    Table t;
    t.columns = {"kind", "m", "n", "value"};
    // kind: 0 = entry, 1 = max_offdiag_ratio, 2 = diag_scale,
    //       3 = diag norm-transport ratio (known base norms only)
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            t.add_row({0.0, static_cast<double>(m), static_cast<double>(n),
                       rep.at(m, n)});
    t.add_row({1.0, -1.0, -1.0, rep.max_offdiag_ratio});
    t.add_row({2.0, -1.0, -1.0, rep.diag_scale});
    for (int n = 0; n < N; ++n) {
        const double norm = base.norm_sq(n);
        if (std::isnan(norm)) continue;
        t.add_row({3.0, static_cast<double>(n), static_cast<double>(n),
                   rep.at(n, n) / (rep.diag_scale * norm)});
    }
    t.print(o.format);
    return kExitOk;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, bool slow) {
    zladder::verify::Context ctx;
    ctx.cache_dir = o.resolved_cache_dir();
    ctx.threads = o.threads;
    ctx.slow = slow;
    const auto results = zladder::verify::run_suites(suite, ctx);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << zladder::verify::format_result(r) << "\n";
        all_pass = all_pass && r.pass;
    }
    if (ctx.grid_seconds > 0.0)
        std::fprintf(stderr, "(shared grid build/load: %.1fs)\n",
                     ctx.grid_seconds);
    return all_pass ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"ladder-function toolkit for the Hardy Z-function"};
    app.require_subcommand(0, 1);

    CommonOpts o;
    bool force = false, fit_c0 = false, slow = false;
    std::vector<double> Ts;
    double T = 1e4, U = -1.0, l = 1.0;
    int k = 3, p = 1, N = 6;
    std::string base_name = "legendre", suite = "all", flag_suite;

    auto* grid = app.add_subcommand("grid", "build or refresh the Z^2 cache");
    add_common(grid, o);
    grid->add_flag("--force", force, "rebuild even if the cache matches");

    auto* lad = app.add_subcommand("ladder", "tabulate phi, phi1 and friends");
    add_common(lad, o);
    lad->add_option("--T", Ts, "heights to solve (repeatable)")->required();
    lad->add_flag("--fit-c0", fit_c0, "refit the representation constant");

    auto* chain = app.add_subcommand("chain", "reverse-iteration segments");
    add_common(chain, o);
    chain->add_option("--T", T, "base height")->required();
    chain->add_option("--U", U, "segment length (default T/(20 ln T))");
    chain->add_option("--k", k, "reverse depth");

    auto* gram = app.add_subcommand("gram", "Gram matrix of an iterated system");
    add_common(gram, o);
    gram->add_option("--base", base_name, "legendre | trig")
        ->check(CLI::IsMember({"legendre", "trig"}));
    gram->add_option("--p", p, "iteration depth (0: base system)");
    gram->add_option("--T", T, "anchor height");
    gram->add_option("--N", N, "system size");
    gram->add_option("--l", l, "half-length for the trig base");

    auto* ver = app.add_subcommand("verify", "run verification suites");
    add_common(ver, o);
    ver->add_option("suite", suite, "suite name or 'all'");
    ver->add_flag("--slow", slow, "include the slow large-T extensions");

    add_common(&app, o);
    app.add_option("--verify", flag_suite, "run a verification suite and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!flag_suite.empty()) return cmd_verify(o, flag_suite, slow);
        if (grid->parsed()) return cmd_grid(o, force);
        if (lad->parsed()) return cmd_ladder(o, Ts, fit_c0);
        if (chain->parsed()) return cmd_chain(o, T, U, k);
        if (gram->parsed()) return cmd_gram(o, base_name, p, T, N, l);
        if (ver->parsed()) return cmd_verify(o, suite, slow);
        std::cout << app.help() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        const std::string what = e.what();
        if (what.find("cannot open") != std::string::npos ||
            what.find("write failed") != std::string::npos ||
            what.find("truncated") != std::string::npos) {
            std::fprintf(stderr, "io error: %s\n", what.c_str());
            return kExitIo;
        }
        std::fprintf(stderr, "numeric error: %s\n", what.c_str());
        return kExitNumeric;
    }
}
