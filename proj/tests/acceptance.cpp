// Acceptance gate: nine criteria, one verdict line each, nonzero exit on any
// failure. Criteria 4 to 7 share one batch of ten d=300 benchmark instances.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

#include "proxkit/cli.hpp"
#include "proxkit/rng.hpp"

using namespace proxkit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void verdict(int idx, const std::string& name, bool pass, double secs,
             const std::string& detail = "") {
    std::printf("[%d] %-28s %s  (%.1f s)%s%s\n", idx, name.c_str(),
                pass ? "PASS" : "FAIL", secs, detail.empty() ? "" : "  ",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---- criterion 1: prox vs scalar grid search ----

void criterion_prox_oracle() {
    const auto t0 = Clock::now();
    Rng rng(1001);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double z = 6.0 * rng.uniform01() - 3.0;
        const double lambda = 0.01 + 1.99 * rng.uniform01();
        const double alpha = 0.5 * rng.uniform_open01();
        const double theta = alpha * lambda;

        const double lo = z - 3.0 * theta, hi = z + 3.0 * theta;
        double best_y = 0.0;
        double best_val = 0.5 * z * z;  // objective at y = 0
        const long steps = std::lround((hi - lo) / 1e-4);
        for (long i = 0; i <= steps; ++i) {
            const double y = lo + 1e-4 * double(i);
            const double val = 0.5 * (y - z) * (y - z) + theta * std::abs(y);
            if (val < best_val) {
                best_val = val;
                best_y = y;
            }
        }
        worst = std::max(worst, std::abs(soft_threshold(Vec{z}, theta)[0] - best_y));
    }
    const double secs = seconds_since(t0);
    char detail[64];
    std::snprintf(detail, sizeof detail, "max |dev| = %.2e", worst);
    verdict(1, "prox grid oracle", worst < 2e-4 && secs < 5.0, secs, detail);
}

// ---- criterion 2: gradient vs central finite differences ----

void criterion_gradient_fd() {
    const auto t0 = Clock::now();
    Rng rng(1002);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 2 + rng.next() % 19;  // d <= 20
        const std::size_t m = d + rng.next() % 40;
        Mat A(m, d);
        for (double& v : A.data) v = rng.normal();
        Vec b(m);
        for (double& v : b) v = rng.normal();
        const LassoProblem p(std::move(A), std::move(b), 0.0);

        Vec x(d);
        for (double& v : x) v = rng.normal();
        const Vec g = smooth_gradient(p, x);
        Vec fd(d);
        for (std::size_t i = 0; i < d; ++i) {
            const double h = 1e-6 * (1.0 + std::abs(x[i]));
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            fd[i] = (smooth_value(p, xp) - smooth_value(p, xm)) / (2.0 * h);
        }
        Vec diff(d);
        for (std::size_t i = 0; i < d; ++i) diff[i] = fd[i] - g[i];
        worst = std::max(worst, norm2(diff) / std::max(norm2(g), 1e-12));
    }
    const double secs = seconds_since(t0);
    char detail[64];
    std::snprintf(detail, sizeof detail, "max rel err = %.2e", worst);
    verdict(2, "finite-difference gradient", worst < 1e-5 && secs < 5.0, secs, detail);
}

// ---- criterion 3: the six bound checks over 20 seeds ----

void criterion_verify_suite() {
    const auto t0 = Clock::now();
    cli::VerifyOptions opt;
    opt.random_suite = true;
    opt.seed = 7;
    opt.instances = 20;
    std::ostringstream out, err;
    const int rc = cli::cmd_verify(opt, out, err);
    const double secs = seconds_since(t0);
    const bool pass = rc == cli::kExitOk && secs < 60.0;
    verdict(3, "verify --random-suite x20", pass, secs,
            pass ? "" : err.str() + out.str());
}

// ---- criteria 4 to 7: shared d=300 benchmark batch ----

struct BenchSeed {
    std::size_t const_iters = 0, var_iters = 0;
    double const_secs = 0, var_secs = 0;
    double var_final_F = 0, adam_final_F = 0;
    double inv_L_paper = 0;
    bool lambda_above = false, lambda_below = false;
};

// batch_secs counts only the iteration-ordering workload (generation plus the
// two prox runs); the Adam runs for criterion 7 are timed outside it.
std::vector<BenchSeed> run_benchmark_batch(double& batch_secs) {
    batch_secs = 0;
    std::vector<BenchSeed> rows;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto t0 = Clock::now();
        SyntheticSpec spec{300, 30000, 30, seed, 0.5};
        LabeledDataset ds = generate_synthetic(spec);
        ds.problem.alpha = 0.01;
        BenchSeed row;
        row.inv_L_paper = 1.0 / lipschitz_constant(ds.problem);

        SolverConfig cfg;  // defaults match the benchmark protocol
        {
            const auto s0 = Clock::now();
            const SolveResult r = prox_gd_constant_solve(ds.problem, cfg);
            row.const_secs = seconds_since(s0);
            row.const_iters = r.iterations;
        }
        {
            const auto s0 = Clock::now();
            const SolveResult r = prox_gd_variable_solve(ds.problem, cfg);
            row.var_secs = seconds_since(s0);
            row.var_iters = r.iterations;
            row.var_final_F = composite_value(ds.problem, r.final_x);
            for (const auto& rec : r.trace.records) {
                if (rec.step > row.inv_L_paper) row.lambda_above = true;
                if (rec.step < row.inv_L_paper) row.lambda_below = true;
            }
        }
        batch_secs += seconds_since(t0);
        {
            const SolveResult r = adam_l1_solve(ds.problem, cfg, AdamConfig{});
            row.adam_final_F = composite_value(ds.problem, r.final_x);
        }
        rows.push_back(row);
    }
    return rows;
}

void criteria_benchmark(const std::vector<BenchSeed>& rows, double batch_secs) {
    int var_wins = 0;
    std::vector<double> ratios, const_speed, var_speed;
    for (const auto& r : rows) {
        if (r.var_iters < r.const_iters) ++var_wins;
        ratios.push_back(double(r.const_iters) / double(r.var_iters));
        const_speed.push_back(double(r.const_iters) / r.const_secs);
        var_speed.push_back(double(r.var_iters) / r.var_secs);
    }
    const double med_ratio = median(ratios);
    {
        char detail[96];
        std::snprintf(detail, sizeof detail, "var wins %d/10, median ratio %.2f",
                      var_wins, med_ratio);
        verdict(4, "iteration ordering", var_wins >= 9 && med_ratio > 1.5 &&
                batch_secs < 180.0, batch_secs, detail);
    }
    {
        const double cs = median(const_speed), vs = median(var_speed);
        char detail[96];
        std::snprintf(detail, sizeof detail, "const %.0f it/s vs var %.0f it/s", cs, vs);
        verdict(5, "per-iteration speed ordering", cs >= vs, 0.0, detail);
    }
    {
        bool ok = true;
        for (const auto& r : rows)
            ok = ok && r.inv_L_paper >= 0.5 && r.inv_L_paper <= 0.8 &&
                 r.lambda_above && r.lambda_below;
        char detail[64];
        std::snprintf(detail, sizeof detail, "1/L in [%.3f, %.3f]",
                      std::min_element(rows.begin(), rows.end(),
                                       [](auto& a, auto& b) {
                                           return a.inv_L_paper < b.inv_L_paper;
                                       })->inv_L_paper,
                      std::max_element(rows.begin(), rows.end(),
                                       [](auto& a, auto& b) {
                                           return a.inv_L_paper < b.inv_L_paper;
                                       })->inv_L_paper);
        verdict(6, "step trace straddles 1/L", ok, 0.0, detail);
    }
    {
        int adam_worse = 0;
        for (const auto& r : rows)
            if (r.adam_final_F >= r.var_final_F) ++adam_worse;
        char detail[48];
        std::snprintf(detail, sizeof detail, "adam worse on %d/10", adam_worse);
        verdict(7, "adam objective ordering", adam_worse >= 8, 0.0, detail);
    }
}

// ---- criterion 8: monotone analytic traces ----

void criterion_monotone() {
    const auto t0 = Clock::now();
    bool ok = true;
    Rng rng(1008);
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t d = 5 + rng.next() % 16;
        const std::size_t m = 5 * d + rng.next() % 200;
        Mat A(m, d);
        for (double& v : A.data) v = rng.normal();
        Vec b(m);
        for (double& v : b) v = rng.normal();
        const LassoProblem p(std::move(A), std::move(b), 0.01);

        SolverConfig cfg;
        cfg.lipschitz_mode = LipschitzMode::Analytic;
        cfg.max_iters = 300;
        const SolveResult r = prox_gd_constant_solve(p, cfg);
        const auto& recs = r.trace.records;
        const std::size_t last =
            r.stop_reason == StopReason::NonMonotone ? recs.size() - 2 : recs.size() - 1;
        for (std::size_t i = 0; i < last; ++i)
            if (recs[i + 1].objective > recs[i].objective) ok = false;
    }
    verdict(8, "monotone analytic traces", ok, seconds_since(t0));
}

// ---- criterion 9: byte-level determinism through the CLI binary ----

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string strip_elapsed_column(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        out << (pos == std::string::npos ? line : line.substr(0, pos)) << '\n';
    }
    return out.str();
}

void criterion_determinism() {
    const auto t0 = Clock::now();
#ifndef PROXKIT_BIN
    verdict(9, "cli determinism", false, 0.0, "PROXKIT_BIN not defined");
    return;
#else
    const fs::path tmp = fs::temp_directory_path() /
                         ("proxkit-acc-" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    const std::string bin = PROXKIT_BIN;
    bool ok = true;
    std::string detail;

    auto run = [&](const std::string& args) {
        const std::string cmd = "\"" + bin + "\" " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };

    const std::string gen_args = "gen --d 40 --m 400 --s 6 --seed 11";
    if (!run(gen_args + " --out " + (tmp / "c1").string()) ||
        !run(gen_args + " --out " + (tmp / "c2").string())) {
        ok = false;
        detail = "gen failed";
    }
    std::string ds1, ds2;
    if (ok) {
        for (const auto& e : fs::directory_iterator(tmp / "c1"))
            if (e.path().extension() == ".bin") ds1 = e.path().string();
        for (const auto& e : fs::directory_iterator(tmp / "c2"))
            if (e.path().extension() == ".bin") ds2 = e.path().string();
        if (ds1.empty() || ds2.empty() || slurp(ds1) != slurp(ds2)) {
            ok = false;
            detail = "dataset bytes differ";
        }
    }
    if (ok) {
        const std::string solve_args = " --method prox-var --max-iters 300";
        if (!run("solve --dataset " + ds1 + solve_args + " --out " +
                 (tmp / "r1").string()) ||
            !run("solve --dataset " + ds1 + solve_args + " --out " +
                 (tmp / "r2").string())) {
            ok = false;
            detail = "solve failed";
        } else if (strip_elapsed_column(slurp(tmp / "r1.csv")) !=
                   strip_elapsed_column(slurp(tmp / "r2.csv"))) {
            ok = false;
            detail = "trace csvs differ";
        }
    }
    std::error_code ec;
    fs::remove_all(tmp, ec);
    verdict(9, "cli determinism", ok, seconds_since(t0), detail);
#endif
}

}  // namespace

int main() {
    criterion_prox_oracle();
    criterion_gradient_fd();
    criterion_verify_suite();

    double batch_secs = 0;
    const std::vector<BenchSeed> rows = run_benchmark_batch(batch_secs);
    criteria_benchmark(rows, batch_secs);

    criterion_monotone();
    criterion_determinism();

    if (g_failures) {
        std::printf("%d criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
