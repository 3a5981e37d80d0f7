#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "proxkit/cli.hpp"

using namespace proxkit;

namespace {

std::string default_cache_dir() {
    if (const char* env = std::getenv("PROXKIT_CACHE")) return env;
    return "cache";
}

void add_solver_flags(CLI::App* cmd, cli::SolveOptions& opt, std::string& lip_mode,
                      bool& no_monotone) {
    cmd->add_option("--alpha", opt.alpha, "l1 regularization weight");
    cmd->add_option("--max-iters", opt.cfg.max_iters, "iteration budget N");
    cmd->add_option("--grad-tol", opt.cfg.grad_tol, "stop when ||grad f|| drops below this");
    cmd->add_option("--lambda0", opt.cfg.lambda0, "initial step size (variable-step method)");
    cmd->add_option("--mu0", opt.cfg.mu0, "step controller shrink trigger");
    cmd->add_option("--mu1", opt.cfg.mu1, "step controller shrink target");
    cmd->add_option("--eta-rho", opt.cfg.eta_rho, "growth sequence base, eta_k = eta_rho^k");
    cmd->add_option("--lipschitz-mode", lip_mode, "paper|analytic")
        ->check(CLI::IsMember({"paper", "analytic"}));
    cmd->add_flag("--no-monotone-stop", no_monotone,
                  "keep iterating through non-monotone objective values");
    cmd->add_option("--adam-step", opt.adam.step, "Adam step size");
    cmd->add_option("--adam-beta1", opt.adam.beta1, "Adam first-moment decay");
    cmd->add_option("--adam-beta2", opt.adam.beta2, "Adam second-moment decay");
    cmd->add_option("--adam-eps", opt.adam.epsilon, "Adam denominator guard");
}

void apply_solver_flags(cli::SolveOptions& opt, const std::string& lip_mode, bool no_monotone) {
    opt.cfg.lipschitz_mode =
        lip_mode == "analytic" ? LipschitzMode::Analytic : LipschitzMode::Paper;
    if (no_monotone) opt.cfg.monotone_stop = false;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proxkit - proximal gradient descent toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags take precedence");

    cli::GenOptions gen;
    gen.spec = {300, 30000, 30, 1, 0.5};
    gen.out_dir = default_cache_dir();
    auto* cmd_gen = app.add_subcommand("gen", "generate a synthetic benchmark dataset");
    cmd_gen->add_option("--d", gen.spec.d, "dimension");
    cmd_gen->add_option("--m", gen.spec.m, "sample count");
    cmd_gen->add_option("--s", gen.spec.s, "planted support size");
    cmd_gen->add_option("--seed", gen.spec.seed, "master RNG seed");
    cmd_gen->add_option("--rho", gen.spec.rho, "correlation base for c_ij = rho^|i-j|");
    cmd_gen->add_option("--out", gen.out_dir, "cache directory (default $PROXKIT_CACHE or ./cache)");

    cli::SolveOptions solve;
    std::string solve_lip_mode = "paper";
    bool solve_no_monotone = false;
    auto* cmd_solve = app.add_subcommand("solve", "run one solver on a dataset");
    cmd_solve->add_option("--dataset", solve.dataset, "dataset file (.bin cache or .csv)")
        ->required();
    cmd_solve->add_option("--target", solve.target, "target column for CSV input");
    cmd_solve->add_option("--method", solve.method, "gd|prox-const|prox-var|adam");
    cmd_solve->add_flag("--standardize", solve.standardize_csv,
                        "standardize CSV columns before solving");
    cmd_solve->add_flag("--log-target", solve.log_target,
                        "log-transform the target before standardization");
    cmd_solve->add_option("--out", solve.out_prefix, "output prefix for .json and .csv");
    add_solver_flags(cmd_solve, solve, solve_lip_mode, solve_no_monotone);

    cli::BenchOptions bench;
    cli::SolveOptions bench_flags;
    std::string bench_lip_mode = "paper";
    bool bench_no_monotone = false;
    auto* cmd_bench = app.add_subcommand("bench", "benchmark solvers over datasets");
    cmd_bench->add_option("--dataset", bench.datasets, "dataset file(s)")->required();
    cmd_bench->add_option("--methods", bench.methods, "methods to compare")->delimiter(',');
    cmd_bench->add_option("--repeats", bench.repeats, "timing repetitions per cell");
    cmd_bench->add_option("--out", bench.out_csv, "machine-readable CSV output path");
    cmd_bench->add_flag("--parallel", bench.parallel,
                        "run cells concurrently (distorts timings)");
    add_solver_flags(cmd_bench, bench_flags, bench_lip_mode, bench_no_monotone);

    cli::VerifyOptions verify;
    auto* cmd_verify = app.add_subcommand("verify", "check the convergence bounds numerically");
    cmd_verify->add_flag("--random-suite", verify.random_suite,
                         "run the checks on generated random instances");
    cmd_verify->add_option("--dataset", verify.dataset, "check against a dataset file");
    cmd_verify->add_option("--target", verify.target, "target column for CSV input");
    cmd_verify->add_option("--seed", verify.seed, "base seed for the random suite");
    cmd_verify->add_option("--instances", verify.instances, "random instances to test");
    cmd_verify->add_option("--checks", verify.checks,
                           "subset of max-decrease,gd-sublinear,gd-geometric,prox-lemma,"
                           "prox-sublinear,prox-exponential")
        ->delimiter(',');
    cmd_verify->add_option("--json", verify.json_out, "write detailed reports as JSON");

    cli::ExportOptions exp;
    auto* cmd_export = app.add_subcommand("export", "merge run traces for plotting");
    cmd_export->add_option("--runs", exp.runs, "solve result JSON files")->required();
    cmd_export->add_option("--format", exp.format, "csv|json");
    cmd_export->add_option("--out", exp.out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return cli::kExitUsage;
    }

    if (cmd_gen->parsed()) return cli::cmd_gen(gen, std::cout, std::cerr);
    if (cmd_solve->parsed()) {
        apply_solver_flags(solve, solve_lip_mode, solve_no_monotone);
        return cli::cmd_solve(solve, std::cout, std::cerr);
    }
    if (cmd_bench->parsed()) {
        apply_solver_flags(bench_flags, bench_lip_mode, bench_no_monotone);
        bench.alpha = bench_flags.alpha;
        bench.cfg = bench_flags.cfg;
        bench.adam = bench_flags.adam;
        return cli::cmd_bench(bench, std::cout, std::cerr);
    }
    if (cmd_verify->parsed()) return cli::cmd_verify(verify, std::cout, std::cerr);
    if (cmd_export->parsed()) return cli::cmd_export(exp, std::cout, std::cerr);
    return cli::kExitUsage;
}
