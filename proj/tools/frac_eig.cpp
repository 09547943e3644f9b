// frac-eig: first-eigenvalue computations for nonlocal p-Laplace energies
// with exterior Dirichlet data. Subcommands: solve, verify, sweep, oracle.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fraceig/config.hpp"
#include "fraceig/properties.hpp"
#include "fraceig/serialize.hpp"

using namespace fraceig;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Problem {
    RunConfig cfg;
    Kernel kernel;
    Grid grid;
    Assembly assembly;
};

Problem build_problem(const std::string& config_path, const std::string& fault = "") {
    Problem pr;
    pr.cfg = load_config(config_path);
    pr.kernel = make_kernel(pr.cfg);
    pr.grid = make_grid(pr.cfg);
    pr.assembly = assemble(pr.grid, pr.kernel, pr.cfg.assembly);
    if (fault == "negate-tails") {
        for (double& t : pr.assembly.tails) t = -t;
    } else if (!fault.empty()) {
        throw ConfigError("unknown fault '" + fault + "'");
    }
    return pr;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

void write_eigenfunction_csv(const RunConfig& cfg, const Grid& g, const GridFunction& u) {
    std::ostringstream os;
    os << "node_index,x" << (g.dim == 2 ? ",y" : "") << ",u\n";
    for (int i = 0; i < g.size(); ++i) {
        os << i << "," << csv_double(g.nodes[i].x);
        if (g.dim == 2) os << "," << csv_double(g.nodes[i].y);
        os << "," << csv_double(u[i]) << "\n";
    }
    atomic_write(out_path(cfg, "eigenfunction.csv"), os.str());
}

json result_record(const Problem& pr, const EigenResult& res, double wall_time_s) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["config"] = config_echo(pr.cfg);
    j["config_hash"] = config_hash(pr.cfg);
    j["lambda"] = res.lambda;
    j["grid_size"] = pr.grid.size();
    j["iterations"] = res.iterations;
    j["grad_norm"] = res.grad_norm;
    j["residual"] = res.residual;
    j["converged"] = res.converged;
    j["wall_time_s"] = wall_time_s;
    return j;
}

int cmd_solve(const std::string& config_path) {
    Problem pr = build_problem(config_path);
    const auto t0 = std::chrono::steady_clock::now();
    EigenResult res = minimize_rayleigh(pr.assembly, pr.cfg.solve);
    res.residual = std::max(res.residual, 0.0);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    atomic_write(out_path(pr.cfg, "result.json"), result_record(pr, res, wall).dump(2) + "\n");
    if (pr.cfg.dump_eigenfunction) write_eigenfunction_csv(pr.cfg, pr.grid, res.u);
    std::cout << "lambda = " << res.lambda << " (iterations " << res.iterations
              << ", grad_norm " << res.grad_norm << ")\n";
    return res.converged ? 0 : 2;
}

// Central sub-domain of roughly half the cells, at the same spacing.
Grid half_domain(const RunConfig& cfg, const Grid& g) {
    if (g.dim == 1) {
        const int n2 = std::max(1, g.size() / 2);
        const int off = (g.size() - n2) / 2;
        const double a2 = g.a + off * g.h;
        return build_grid_1d(a2, a2 + n2 * g.h, n2);
    }
    const int nx2 = std::max(1, g.nx / 2), ny2 = std::max(1, g.ny / 2);
    const int ox = (g.nx - nx2) / 2, oy = (g.ny - ny2) / 2;
    Box sub{g.box.x0 + ox * g.h, g.box.y0 + oy * g.h,
            g.box.x0 + (ox + nx2) * g.h, g.box.y0 + (oy + ny2) * g.h};
    return build_grid_2d(sub, g.h, builtin_mask(cfg.mask, g.box), cfg.mask + "-half");
}

Grid scaled_domain(const RunConfig& cfg, const Grid& g, double c) {
    if (g.dim == 1) return build_grid_1d(c * g.a, c * g.b, g.size());
    Box sb{c * g.box.x0, c * g.box.y0, c * g.box.x1, c * g.box.y1};
    return build_grid_2d(sb, c * g.h, builtin_mask(cfg.mask, sb), cfg.mask);
}

int cmd_verify(const std::string& config_path, const std::string& fault) {
    Problem pr = build_problem(config_path, fault);
    const RunConfig& cfg = pr.cfg;
    const double p = cfg.p;
    const std::uint64_t seed = cfg.solve.seed;
    std::vector<PropertyReport> reports;

    // Assertable properties ---------------------------------------------
    const double t_grid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    reports.push_back(check_hidden_convexity(pr.assembly, 200, t_grid, seed));
    reports.push_back(check_truncation_inequality(10000, p, seed));
    reports.push_back(check_abs_decrease(pr.assembly, 100, seed));

    std::vector<EigenResult> seed_runs;
    for (int k = 0; k < 10; ++k) {
        SolveOptions so = cfg.solve;
        so.mode = SolveOptions::Mode::First;
        so.enforce_sign = true;
        so.seed = seed + static_cast<std::uint64_t>(k);
        seed_runs.push_back(minimize_rayleigh(pr.assembly, so));
    }
    const EigenResult& res = seed_runs.front();

    reports.push_back(check_first_mode_minimality(pr.assembly, res, 10000, seed));

    {
        PropertyReport rep;
        rep.name = "proportionality_across_seeds";
        rep.worst_slack = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < seed_runs.size(); ++i) {
            if (!seed_runs[i].converged) {
                ++rep.violations;
                rep.details.push_back("seed run " + std::to_string(i) + " did not converge");
            }
            for (std::size_t j = i + 1; j < seed_runs.size(); ++j) {
                auto pairrep = check_proportionality(pr.grid, seed_runs[i].u,
                                                     seed_runs[j].u, p, 1e-6);
                ++rep.trials;
                rep.violations += pairrep.violations;
                rep.worst_slack = std::min(rep.worst_slack, pairrep.worst_slack);
                if (!pairrep.passed && rep.details.size() < 8)
                    rep.details.push_back("pair (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") " + pairrep.details[0]);
            }
        }
        rep.passed = rep.violations == 0;
        reports.push_back(rep);
    }

    if (pr.grid.has_symmetry()) {
        PropertyReport rep;
        rep.name = "sign_changing_margin";
        rep.trials = 1;
        SolveOptions so = cfg.solve;
        so.seed = seed;
        EigenResult odd = solve_odd(pr.assembly, so);
        const double margin = odd.lambda / res.lambda - 1.0;
        rep.worst_slack = margin;
        if (!(margin > 0.0) || !(odd.u.maxCoeff() > 0.0 && odd.u.minCoeff() < 0.0))
            ++rep.violations;
        rep.details.push_back("lambda_odd_over_lambda1_minus_1=" + std::to_string(margin));
        rep.passed = rep.violations == 0;
        reports.push_back(rep);
    }

    {
        // Exact assembly homogeneity: lambda_1 on c*Omega is c^{-sp} lambda_1.
        PropertyReport rep;
        rep.name = "scaling";
        rep.trials = 1;
        const double c = 2.0;
        const double sp = cfg.s * cfg.p;
        AssemblyOptions opts = cfg.assembly;
        opts.near_field_radius = 0;  // the invariant needs pure collocation
        Assembly base = assemble(pr.grid, pr.kernel, opts);
        Assembly scaled = assemble(scaled_domain(cfg, pr.grid, c), pr.kernel, opts);
        if (fault == "negate-tails") {
            for (double& t : base.tails) t = -t;
            for (double& t : scaled.tails) t = -t;
        }
        SolveOptions so = cfg.solve;
        so.mode = SolveOptions::Mode::First;
        so.enforce_sign = true;
        EigenResult r1 = minimize_rayleigh(base, so);
        EigenResult rc = minimize_rayleigh(scaled, so);
        const double rel = std::abs(rc.lambda * std::pow(c, sp) - r1.lambda) /
                           std::abs(r1.lambda);
        rep.worst_slack = 1e-12 - rel;
        if (!(rel <= 1e-12)) ++rep.violations;
        rep.details.push_back("relative_defect=" + std::to_string(rel));
        rep.passed = rep.violations == 0;
        reports.push_back(rep);
    }

    if (pr.grid.size() >= 2) {
        PropertyReport rep;
        rep.name = "domain_monotonicity";
        rep.trials = 1;
        Assembly sub = assemble(half_domain(cfg, pr.grid), pr.kernel, cfg.assembly);
        if (fault == "negate-tails")
            for (double& t : sub.tails) t = -t;
        SolveOptions so = cfg.solve;
        so.mode = SolveOptions::Mode::First;
        so.enforce_sign = true;
        EigenResult rs = minimize_rayleigh(sub, so);
        rep.worst_slack = rs.lambda - res.lambda;
        if (!(rs.lambda > res.lambda)) ++rep.violations;
        rep.details.push_back("lambda_sub=" + std::to_string(rs.lambda) +
                              " lambda_full=" + std::to_string(res.lambda));
        rep.passed = rep.violations == 0;
        reports.push_back(rep);
    }

    // Diagnostics (tables, finiteness only) -----------------------------
    json diagnostics;
    {
        GridFunction u = res.u.cwiseAbs();
        const double umax = u.maxCoeff();
        std::vector<double> ks;
        for (int i = 0; i < 20; ++i)
            ks.push_back(umax * std::pow(10.0, -3.0 + 3.0 * i / 19.0));
        diagnostics["level_decay"] = to_json(level_decay_diagnostic(pr.assembly, u, ks));
        diagnostics["truncation_sequence"] =
            to_json(truncation_sequence_diagnostic(pr.grid, u, p));
        std::vector<LinftyRow> linfty;
        for (std::size_t k = 0; k < seed_runs.size(); ++k)
            linfty.push_back(linfty_bound_row(pr.grid, seed_runs[k].u,
                                              "seed" + std::to_string(k)));
        diagnostics["linfty_bound"] = to_json(linfty);
    }

    // Persist reports ----------------------------------------------------
    const std::string hash = config_hash(cfg);
    bool all_passed = true;
    std::string first_failure;
    for (const auto& rep : reports) {
        json j = to_json(rep);
        j["config_hash"] = hash;
        atomic_write(out_path(cfg, "reports/" + rep.name + ".json"), j.dump(2) + "\n");
        std::cout << (rep.passed ? "[PASS] " : "[FAIL] ") << rep.name
                  << " (violations " << rep.violations << ")\n";
        if (!rep.passed && all_passed) {
            all_passed = false;
            first_failure = rep.name +
                            (rep.details.empty() ? "" : (": " + rep.details.front()));
        }
    }
    {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["config_hash"] = hash;
        j["tables"] = diagnostics;
        atomic_write(out_path(cfg, "reports/diagnostics.json"), j.dump(2) + "\n");
    }
    if (!all_passed) {
        std::cerr << "verify: property violation in " << first_failure << "\n";
        return 3;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& s_list,
              const std::vector<double>& p_list, int jobs) {
    RunConfig cfg = load_config(config_path);
    if (s_list.empty() || p_list.empty())
        throw ConfigError("sweep: --s and --p lists must be nonempty");
    for (double s : s_list)
        if (!(s > 0.0 && s < 1.0)) throw ConfigError("sweep: s values must lie in (0,1)");
    for (double pv : p_list)
        if (!(pv > 1.0)) throw ConfigError("sweep: p values must be > 1");
    if (jobs < 1) jobs = 1;

    struct Row {
        double s, p, lambda;
        long iterations;
        bool converged, failed;
    };
    std::vector<std::pair<double, double>> pairs;
    for (double s : s_list)
        for (double pv : p_list) pairs.emplace_back(s, pv);
    std::vector<Row> rows(pairs.size());

    auto worker = [&](std::size_t idx) {
        const auto [s, pv] = pairs[idx];
        Row row{s, pv, std::nan(""), 0, false, false};
        try {
            RunConfig c = cfg;
            c.s = s;
            c.p = pv;
            Kernel k = make_kernel(c);
            Grid g = make_grid(c);
            Assembly A = assemble(g, k, c.assembly);
            EigenResult r = minimize_rayleigh(A, c.solve);
            row.lambda = r.lambda;
            row.iterations = r.iterations;
            row.converged = r.converged;
        } catch (const std::exception&) {
            row.failed = true;  // recorded, run continues
        }
        rows[idx] = row;
    };
    for (std::size_t base = 0; base < pairs.size(); base += static_cast<std::size_t>(jobs)) {
        std::vector<std::future<void>> batch;
        for (std::size_t k = base; k < std::min(pairs.size(), base + jobs); ++k)
            batch.push_back(std::async(std::launch::async, worker, k));
        for (auto& f : batch) f.get();
    }

    std::ostringstream os;
    os << "s,p,N,lambda,iterations,converged\n";
    const int N = cfg.dim == 1 ? cfg.N : -1;
    for (const auto& row : rows) {
        os << csv_double(row.s) << "," << csv_double(row.p) << "," << N << ","
           << (row.failed ? "nan" : csv_double(row.lambda)) << "," << row.iterations
           << "," << (row.converged ? 1 : 0) << "\n";
    }
    atomic_write(out_path(cfg, "sweep.csv"), os.str());
    std::cout << "sweep: " << rows.size() << " rows written\n";
    return 0;
}

int cmd_oracle(const std::string& config_path) {
    RunConfig cfg = load_config(config_path);
    if (cfg.p != 2.0) {
        std::cerr << "oracle: requires kernel.p = 2\n";
        return 1;
    }
    Problem pr = build_problem(config_path);
    EigenResult res = minimize_rayleigh(pr.assembly, pr.cfg.solve);
    OracleResult orc = dense_oracle_p2(pr.assembly);
    const double rel = std::abs(res.lambda - orc.lambda_min) / orc.lambda_min;

    json j;
    j["schema_version"] = kSchemaVersion;
    j["config_hash"] = config_hash(cfg);
    j["lambda_solver"] = res.lambda;
    j["lambda_oracle"] = orc.lambda_min;
    j["relative_difference"] = rel;
    if (orc.lambda_min_odd) {
        SolveOptions so = cfg.solve;
        EigenResult odd = solve_odd(pr.assembly, so);
        j["lambda_odd_solver"] = odd.lambda;
        j["lambda_odd_oracle"] = *orc.lambda_min_odd;
        j["relative_difference_odd"] =
            std::abs(odd.lambda - *orc.lambda_min_odd) / *orc.lambda_min_odd;
    }
    atomic_write(out_path(cfg, "oracle.json"), j.dump(2) + "\n");
    std::cout << "solver " << res.lambda << " vs oracle " << orc.lambda_min
              << " (rel " << rel << ")\n";
    return rel <= 1e-8 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal p-Laplace first-eigenvalue toolkit"};
    app.require_subcommand(1);

    std::string config_path, fault;
    std::vector<double> s_list, p_list;
    int jobs = 1;

    auto* solve = app.add_subcommand("solve", "assemble, minimize, write result.json");
    solve->add_option("config", config_path)->required();

    auto* verify = app.add_subcommand("verify", "run the property and diagnostic suite");
    verify->add_option("config", config_path)->required();
    verify->add_option("--fault", fault, "test hook; corrupts the assembly");

    auto* sweep = app.add_subcommand("sweep", "solve over an (s,p) list, write sweep.csv");
    sweep->add_option("config", config_path)->required();
    sweep->add_option("--s", s_list, "s values")->delimiter(',');
    sweep->add_option("--p", p_list, "p values")->delimiter(',');
    sweep->add_option("--jobs", jobs, "concurrent solves");

    auto* oracle = app.add_subcommand("oracle", "compare against the dense p=2 oracle");
    oracle->add_option("config", config_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(config_path);
        if (verify->parsed()) return cmd_verify(config_path, fault);
        if (sweep->parsed()) return cmd_sweep(config_path, s_list, p_list, jobs);
        if (oracle->parsed()) return cmd_oracle(config_path);
    } catch (const std::exception& e) {
        std::cerr << "frac-eig: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
