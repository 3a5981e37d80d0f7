#include "proxkit/cli.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "proxkit/rng.hpp"

namespace proxkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "' for checksum");
    std::uint64_t h = 0xCBF29CE484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001B3ULL;
        }
        if (!in) break;
    }
    return h;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct LoadedDataset {
    LabeledDataset ds;
    std::string id;  // spec hash for synthetic, path#checksum for CSV
};

LoadedDataset load_any_dataset(const SolveOptions& opt) {
    LoadedDataset out;
    if (ends_with(opt.dataset, ".csv")) {
        out.ds = load_csv(opt.dataset, opt.target);
        if (opt.log_target) {
            for (double& v : out.ds.problem.b) {
                if (!(v > 0.0))
                    throw DataError("log target transform needs strictly positive targets");
                v = std::log(v);
            }
        }
        if (opt.standardize_csv) out.ds = standardize(out.ds).first;
        char hex[17];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(file_checksum(opt.dataset)));
        out.id = opt.dataset + "#" + hex;
    } else {
        out.ds = load_dataset(opt.dataset);
        out.id = spec_hash(*out.ds.spec);
    }
    out.ds.problem.alpha = opt.alpha;
    return out;
}

json config_json(const SolverConfig& cfg, const AdamConfig& adam) {
    return json{{"max_iters", cfg.max_iters},
                {"grad_tol", cfg.grad_tol},
                {"lambda0", cfg.lambda0},
                {"mu0", cfg.mu0},
                {"mu1", cfg.mu1},
                {"eta_rho", cfg.eta_rho},
                {"monotone_stop", cfg.monotone_stop},
                {"lipschitz_mode",
                 cfg.lipschitz_mode == LipschitzMode::Paper ? "paper" : "analytic"},
                {"adam", {{"step", adam.step},
                          {"beta1", adam.beta1},
                          {"beta2", adam.beta2},
                          {"epsilon", adam.epsilon}}}};
}

SolveResult run_method(const std::string& method, const LassoProblem& p,
                       const SolverConfig& cfg, const AdamConfig& adam,
                       const Vec* x_star, const TraceCallback& cb = {}) {
    if (method == "gd") return gd_solve(p, cfg, x_star, cb);
    if (method == "prox-const") return prox_gd_constant_solve(p, cfg, x_star, cb);
    if (method == "prox-var") return prox_gd_variable_solve(p, cfg, x_star, cb);
    if (method == "adam") return adam_l1_solve(p, cfg, adam, x_star, cb);
    throw std::invalid_argument("unknown method '" + method +
                                "' (expected gd|prox-const|prox-var|adam)");
}

void write_trace_header(std::ofstream& out) {
    out << "k,F,grad_norm,lambda,dist_to_opt,elapsed_s\n";
    out.flush();
}

void write_trace_record(std::ofstream& out, const TraceRecord& rec) {
    out << rec.k << ',' << fmt17(rec.objective) << ',' << fmt17(rec.grad_norm) << ','
        << fmt17(rec.step) << ',';
    if (rec.dist_to_opt) out << fmt17(*rec.dist_to_opt);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", rec.elapsed_s);
    out << ',' << buf << '\n';
    out.flush();
}

}  // namespace

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.spec.s > opt.spec.d) {
            err << "gen: s (" << opt.spec.s << ") must be <= d (" << opt.spec.d << ")\n";
            return kExitData;
        }
        if (!(opt.spec.s < opt.spec.d && opt.spec.d < opt.spec.m))
            err << "gen: warning: outside the s << d << m regime\n";

        fs::create_directories(opt.out_dir);
        LabeledDataset ds = generate_synthetic(opt.spec);
        const std::string hash = spec_hash(opt.spec);
        const fs::path bin = fs::path(opt.out_dir) / (hash + ".bin");
        const fs::path manifest = fs::path(opt.out_dir) / (hash + ".json");
        save_dataset(ds, bin.string());

        json j{{"format", "PXG1"},
               {"version", kVersion},
               {"d", opt.spec.d},
               {"m", opt.spec.m},
               {"s", opt.spec.s},
               {"seed", opt.spec.seed},
               {"rho", opt.spec.rho},
               {"hash", hash},
               {"file", bin.filename().string()},
               {"created", timestamp_utc()}};
        std::ofstream mf(manifest);
        mf << j.dump(2) << '\n';

        out << bin.string() << '\n';
        return kExitOk;
    } catch (const DataError& e) {
        err << "gen: " << e.what() << '\n';
        return kExitData;
    } catch (const std::invalid_argument& e) {
        err << "gen: " << e.what() << '\n';
        return kExitData;
    }
}

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
    LoadedDataset loaded;
    try {
        loaded = load_any_dataset(opt);
    } catch (const std::exception& e) {
        err << "solve: " << e.what() << '\n';
        return kExitData;
    }

    const Vec* x_star = loaded.ds.ground_truth ? &*loaded.ds.ground_truth : nullptr;
    const std::string trace_path = opt.out_prefix + ".csv";
    const std::string json_path = opt.out_prefix + ".json";

    std::ofstream trace_out(trace_path);
    if (!trace_out) {
        err << "solve: cannot open '" << trace_path << "' for writing\n";
        return kExitData;
    }
    write_trace_header(trace_out);
    TraceCallback cb = [&trace_out](const TraceRecord& rec) {
        write_trace_record(trace_out, rec);
    };

    SolveResult res;
    try {
        res = run_method(opt.method, loaded.ds.problem, opt.cfg, opt.adam, x_star, cb);
    } catch (const std::invalid_argument& e) {
        err << "solve: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "solve: " << e.what() << '\n';
        return kExitSolver;
    }

    std::size_t nnz = 0;
    for (double v : res.final_x)
        if (v != 0.0) ++nnz;

    json j;
    j["version"] = kVersion;
    j["timestamp"] = timestamp_utc();
    j["method"] = opt.method;
    j["alpha"] = opt.alpha;
    j["dataset"] = {{"path", opt.dataset}, {"id", loaded.id}};
    if (loaded.ds.spec) {
        j["dataset"]["seed"] = loaded.ds.spec->seed;
        j["dataset"]["d"] = loaded.ds.spec->d;
        j["dataset"]["m"] = loaded.ds.spec->m;
        j["dataset"]["s"] = loaded.ds.spec->s;
    }
    j["config"] = config_json(opt.cfg, opt.adam);
    j["result"] = {{"iterations", res.iterations},
                   {"stop_reason", to_string(res.stop_reason)},
                   {"final_objective", res.trace.records.back().objective},
                   {"final_grad_norm", res.trace.records.back().grad_norm},
                   {"final_x_nnz", nnz}};
    j["result"]["final_x"] = res.final_x;
    j["trace_csv"] = trace_path;

    std::ofstream jf(json_path);
    jf << j.dump(2) << '\n';

    out << opt.method << ": " << to_string(res.stop_reason) << " after " << res.iterations
        << " iterations, F = " << res.trace.records.back().objective << ", ||grad f|| = "
        << res.trace.records.back().grad_norm << '\n';
    return kExitOk;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
    struct Row {
        std::string dataset;
        std::size_t d = 0;
        std::string method;
        std::size_t iterations = 0;
        double time_s = 0.0;
        double speed = 0.0;
        bool failed = false;
        std::string error;
    };
    if (opt.repeats < 1) {
        err << "bench: repeats must be >= 1\n";
        return kExitUsage;
    }

    std::vector<Row> rows;
    auto run_cell = [&](const std::string& path, const std::string& method) {
        Row row;
        row.dataset = path;
        row.method = method;
        try {
            SolveOptions so;
            so.dataset = path;
            so.alpha = opt.alpha;
            LoadedDataset loaded = load_any_dataset(so);
            row.d = loaded.ds.problem.d();
            const Vec* xs = loaded.ds.ground_truth ? &*loaded.ds.ground_truth : nullptr;
            double total = 0.0;
            for (std::size_t r = 0; r < opt.repeats; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                SolveResult res = run_method(method, loaded.ds.problem, opt.cfg, opt.adam, xs);
                total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                             .count();
                if (r == 0)
                    row.iterations = res.iterations;
                else if (res.iterations != row.iterations)
                    throw std::runtime_error("non-deterministic iteration count");
            }
            row.time_s = total / static_cast<double>(opt.repeats);
            row.speed = static_cast<double>(row.iterations) / row.time_s;
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        return row;
    };

    if (opt.parallel) {
        err << "bench: warning: --parallel distorts timing columns\n";
        std::vector<std::future<Row>> futs;
        for (const auto& d : opt.datasets)
            for (const auto& m : opt.methods)
                futs.push_back(std::async(std::launch::async, run_cell, d, m));
        for (auto& f : futs) rows.push_back(f.get());
    } else {
        for (const auto& d : opt.datasets)
            for (const auto& m : opt.methods) rows.push_back(run_cell(d, m));
    }

    out << std::left << std::setw(12) << "Dimension" << std::setw(12) << "Method"
        << std::right << std::setw(8) << "Iter" << std::setw(12) << "Time" << std::setw(12)
        << "Speed" << '\n';
    for (const Row& r : rows) {
        if (r.failed) {
            out << std::left << std::setw(12) << r.d << std::setw(12) << r.method
                << "  FAILED: " << r.error << '\n';
            continue;
        }
        char time_buf[32], speed_buf[32];
        std::snprintf(time_buf, sizeof(time_buf), "%.3f", r.time_s);
        std::snprintf(speed_buf, sizeof(speed_buf), "%.2f", r.speed);
        out << std::left << std::setw(12) << r.d << std::setw(12) << r.method << std::right
            << std::setw(8) << r.iterations << std::setw(12) << time_buf << std::setw(12)
            << speed_buf << '\n';
    }

    if (!opt.out_csv.empty()) {
        std::ofstream cf(opt.out_csv);
        cf << "dataset,d,method,iterations,time_s,speed_iters_per_s,status\n";
        for (const Row& r : rows)
            cf << r.dataset << ',' << r.d << ',' << r.method << ',' << r.iterations << ','
               << fmt17(r.time_s) << ',' << fmt17(r.speed) << ','
               << (r.failed ? "failed" : "ok") << '\n';
    }

    for (const Row& r : rows)
        if (r.failed) return kExitSolver;
    return kExitOk;
}

namespace {

struct SuiteInstance {
    LassoProblem smooth;  // alpha = 0
    LassoProblem lasso;   // alpha = 0.01
};

SuiteInstance make_suite_instance(std::uint64_t seed) {
    Rng rng(derive_stream(seed, 11));
    const std::size_t d = 5 + rng.next() % 16;   // <= 20
    const std::size_t m = 5 * d + rng.next() % (400 - 5 * d);  // strongly convex, <= 500
    Mat A(m, d);
    for (double& v : A.data) v = rng.normal();
    Vec x_true(d, 0.0);
    for (std::size_t i = 0; i < d / 2 + 1; ++i) x_true[i] = rng.uniform_open01();
    Vec b = matvec(A, x_true);
    for (double& v : b) v += 0.1 * rng.normal();
    SuiteInstance inst;
    inst.smooth = LassoProblem(A, b, 0.0);
    inst.lasso = LassoProblem(std::move(A), std::move(b), 0.01);
    return inst;
}

SolverConfig compliant_config() {
    SolverConfig cfg;
    cfg.lipschitz_mode = LipschitzMode::Analytic;
    cfg.max_iters = 300;
    cfg.grad_tol = 1e-6;
    cfg.monotone_stop = false;
    cfg.record_iterates = true;
    return cfg;
}

SolverConfig oracle_config() {
    SolverConfig cfg = compliant_config();
    cfg.max_iters = 30000;  // 100x the check budget
    cfg.grad_tol = 1e-10;
    cfg.record_iterates = false;
    return cfg;
}

bool wanted(const std::vector<std::string>& checks, const std::string& name) {
    return checks.empty() || std::find(checks.begin(), checks.end(), name) != checks.end();
}

}  // namespace

std::vector<CheckOutcome> run_random_suite(std::uint64_t seed,
                                           const std::vector<std::string>& checks) {
    static const std::vector<std::string> kAll = {"max-decrease", "gd-sublinear",
                                                  "gd-geometric", "prox-lemma",
                                                  "prox-sublinear", "prox-exponential"};
    for (const auto& c : checks)
        if (std::find(kAll.begin(), kAll.end(), c) == kAll.end())
            throw std::invalid_argument("unknown check '" + c + "'");

    SuiteInstance inst = make_suite_instance(seed);
    std::vector<CheckOutcome> outcomes;
    auto add = [&](const std::string& name, BoundReport rep) {
        CheckOutcome oc;
        oc.name = name;
        oc.status = rep.passed() ? CheckStatus::Passed : CheckStatus::Failed;
        oc.report = std::move(rep);
        outcomes.push_back(std::move(oc));
    };

    const bool need_gd = wanted(checks, "max-decrease") || wanted(checks, "gd-sublinear") ||
                         wanted(checks, "gd-geometric");
    const bool need_prox = wanted(checks, "prox-lemma") || wanted(checks, "prox-sublinear") ||
                           wanted(checks, "prox-exponential");

    if (need_gd) {
        SolveResult trace = gd_solve(inst.smooth, compliant_config());
        if (wanted(checks, "max-decrease"))
            add("max-decrease", check_max_decrease(inst.smooth, trace));
        Vec x_star;
        if (wanted(checks, "gd-sublinear") || wanted(checks, "gd-geometric"))
            x_star = gd_solve(inst.smooth, oracle_config()).final_x;
        if (wanted(checks, "gd-sublinear"))
            add("gd-sublinear", check_sublinear_gd(inst.smooth, trace, x_star));
        if (wanted(checks, "gd-geometric")) {
            const StrongConvexityEstimate mu = estimate_strong_convexity(inst.smooth);
            if (!mu.valid) {
                CheckOutcome oc;
                oc.name = "gd-geometric";
                oc.status = CheckStatus::Skipped;
                oc.reason = "instance not strongly convex";
                outcomes.push_back(std::move(oc));
            } else {
                add("gd-geometric", check_geometric_gd(inst.smooth, trace, x_star, mu));
            }
        }
    }

    if (need_prox) {
        SolveResult trace = prox_gd_constant_solve(inst.lasso, compliant_config());
        if (wanted(checks, "prox-lemma")) {
            Rng zrng(derive_stream(seed, 17));
            std::vector<Vec> zs(20, Vec(inst.lasso.d()));
            for (auto& z : zs)
                for (double& v : z) v = zrng.normal();
            add("prox-lemma", check_prox_descent_lemma(inst.lasso, trace, zs));
        }
        if (wanted(checks, "prox-sublinear") || wanted(checks, "prox-exponential")) {
            const Vec x_star = prox_gd_constant_solve(inst.lasso, oracle_config()).final_x;
            if (wanted(checks, "prox-sublinear"))
                add("prox-sublinear", check_sublinear_prox(inst.lasso, trace, x_star));
            if (wanted(checks, "prox-exponential")) {
                const StrongConvexityEstimate mu = estimate_strong_convexity(inst.lasso);
                if (!mu.valid) {
                    CheckOutcome oc;
                    oc.name = "prox-exponential";
                    oc.status = CheckStatus::Skipped;
                    oc.reason = "instance not strongly convex";
                    outcomes.push_back(std::move(oc));
                } else {
                    add("prox-exponential",
                        check_exponential_prox(inst.lasso, trace,
                                               composite_value(inst.lasso, x_star), mu));
                }
            }
        }
    }
    return outcomes;
}

namespace {

std::vector<CheckOutcome> run_dataset_checks(const LassoProblem& lasso,
                                             const std::vector<std::string>& checks,
                                             std::uint64_t seed) {
    LassoProblem smooth = lasso;
    smooth.alpha = 0.0;

    SolverConfig cfg = compliant_config();
    cfg.max_iters = 150;
    SolverConfig ocfg = oracle_config();
    ocfg.max_iters = 15000;

    std::vector<CheckOutcome> outcomes;
    auto add = [&](const std::string& name, BoundReport rep) {
        CheckOutcome oc;
        oc.name = name;
        oc.status = rep.passed() ? CheckStatus::Passed : CheckStatus::Failed;
        oc.report = std::move(rep);
        outcomes.push_back(std::move(oc));
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        CheckOutcome oc;
        oc.name = name;
        oc.status = CheckStatus::Skipped;
        oc.reason = why;
        outcomes.push_back(std::move(oc));
    };

    const StrongConvexityEstimate mu = estimate_strong_convexity(lasso);

    const bool need_gd = wanted(checks, "max-decrease") || wanted(checks, "gd-sublinear") ||
                         wanted(checks, "gd-geometric");
    if (need_gd) {
        SolveResult trace = gd_solve(smooth, cfg);
        if (wanted(checks, "max-decrease")) add("max-decrease", check_max_decrease(smooth, trace));
        Vec x_star;
        if (wanted(checks, "gd-sublinear") || wanted(checks, "gd-geometric"))
            x_star = gd_solve(smooth, ocfg).final_x;
        if (wanted(checks, "gd-sublinear"))
            add("gd-sublinear", check_sublinear_gd(smooth, trace, x_star));
        if (wanted(checks, "gd-geometric")) {
            if (!mu.valid)
                skip("gd-geometric", "dataset not strongly convex");
            else
                add("gd-geometric", check_geometric_gd(smooth, trace, x_star, mu));
        }
    }

    const bool need_prox = wanted(checks, "prox-lemma") || wanted(checks, "prox-sublinear") ||
                           wanted(checks, "prox-exponential");
    if (need_prox) {
        SolveResult trace = prox_gd_constant_solve(lasso, cfg);
        if (wanted(checks, "prox-lemma")) {
            Rng zrng(derive_stream(seed, 17));
            std::vector<Vec> zs(20, Vec(lasso.d()));
            for (auto& z : zs)
                for (double& v : z) v = zrng.normal();
            add("prox-lemma", check_prox_descent_lemma(lasso, trace, zs));
        }
        if (wanted(checks, "prox-sublinear") || wanted(checks, "prox-exponential")) {
            const Vec x_star = prox_gd_constant_solve(lasso, ocfg).final_x;
            if (wanted(checks, "prox-sublinear"))
                add("prox-sublinear", check_sublinear_prox(lasso, trace, x_star));
            if (wanted(checks, "prox-exponential")) {
                if (!mu.valid)
                    skip("prox-exponential", "dataset not strongly convex");
                else
                    add("prox-exponential",
                        check_exponential_prox(lasso, trace, composite_value(lasso, x_star), mu));
            }
        }
    }
    return outcomes;
}

}  // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<CheckOutcome> all;
    try {
        if (opt.random_suite) {
            for (std::size_t i = 0; i < opt.instances; ++i) {
                auto outcomes = run_random_suite(opt.seed + i, opt.checks);
                all.insert(all.end(), std::make_move_iterator(outcomes.begin()),
                           std::make_move_iterator(outcomes.end()));
            }
        } else if (!opt.dataset.empty()) {
            SolveOptions so;
            so.dataset = opt.dataset;
            so.target = opt.target;
            LoadedDataset loaded = load_any_dataset(so);
            all = run_dataset_checks(loaded.ds.problem, opt.checks, opt.seed);
        } else {
            err << "verify: need --random-suite or a dataset\n";
            return kExitUsage;
        }
    } catch (const std::invalid_argument& e) {
        err << "verify: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "verify: " << e.what() << '\n';
        return kExitData;
    }

    // Aggregate per check name across instances.
    struct Agg {
        std::size_t passed = 0, failed = 0, skipped = 0, checked = 0;
        double worst_slack = 0.0;
        std::string reason;
    };
    std::vector<std::pair<std::string, Agg>> aggs;
    auto find = [&aggs](const std::string& name) -> Agg& {
        for (auto& [n, a] : aggs)
            if (n == name) return a;
        aggs.emplace_back(name, Agg{});
        return aggs.back().second;
    };
    for (const CheckOutcome& oc : all) {
        Agg& a = find(oc.name);
        a.checked += oc.report.checked;
        switch (oc.status) {
            case CheckStatus::Passed: ++a.passed; break;
            case CheckStatus::Failed:
                ++a.failed;
                a.worst_slack = std::max(a.worst_slack, oc.report.worst_slack());
                break;
            case CheckStatus::Skipped:
                ++a.skipped;
                a.reason = oc.reason;
                break;
        }
    }

    bool any_failed = false;
    for (const auto& [name, a] : aggs) {
        if (a.failed > 0) {
            any_failed = true;
            out << "FAIL " << name << " (" << a.failed << " failing instances, worst slack "
                << a.worst_slack << ")\n";
        } else if (a.passed > 0) {
            out << "PASS " << name << " (" << a.passed << " instances, " << a.checked
                << " inequalities)\n";
        } else {
            out << "SKIP " << name << ": " << a.reason << '\n';
        }
    }

    if (!opt.json_out.empty()) {
        json j = json::array();
        for (const CheckOutcome& oc : all) {
            json o;
            o["name"] = oc.name;
            o["status"] = oc.status == CheckStatus::Passed   ? "passed"
                          : oc.status == CheckStatus::Failed ? "failed"
                                                             : "skipped";
            if (oc.status == CheckStatus::Skipped)
                o["reason"] = oc.reason;
            else
                o["report"] = json::parse(oc.report.to_json());
            j.push_back(std::move(o));
        }
        std::ofstream jf(opt.json_out);
        jf << j.dump(2) << '\n';
    }

    return any_failed ? kExitVerify : kExitOk;
}

int cmd_export(const ExportOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.runs.empty() || opt.out.empty()) {
        err << "export: need --runs and --out\n";
        return kExitUsage;
    }
    if (opt.format != "csv" && opt.format != "json") {
        err << "export: format must be csv or json\n";
        return kExitUsage;
    }

    struct Run {
        std::string method;
        std::vector<std::array<std::string, 6>> rows;  // k,F,grad_norm,lambda,dist,elapsed
    };
    std::vector<Run> runs;
    std::string dataset_id;
    double f_best = DBL_MAX;

    try {
        for (const std::string& path : opt.runs) {
            std::ifstream jf(path);
            if (!jf) throw DataError("cannot open run file '" + path + "'");
            json j = json::parse(jf);
            const std::string id = j.at("dataset").at("id").get<std::string>();
            if (dataset_id.empty())
                dataset_id = id;
            else if (dataset_id != id)
                throw DataError("runs mix different datasets ('" + dataset_id + "' vs '" + id +
                                "')");
            Run run;
            run.method = j.at("method").get<std::string>();
            std::string trace_path = j.at("trace_csv").get<std::string>();
            if (!fs::path(trace_path).is_absolute() && !fs::exists(trace_path))
                trace_path = (fs::path(path).parent_path() / trace_path).string();
            std::ifstream tf(trace_path);
            if (!tf) throw DataError("cannot open trace file '" + trace_path + "'");
            std::string line;
            std::getline(tf, line);  // header
            while (std::getline(tf, line)) {
                if (line.empty()) continue;
                std::array<std::string, 6> cells;
                std::size_t start = 0, ci = 0;
                for (std::size_t i = 0; i <= line.size() && ci < 6; ++i) {
                    if (i == line.size() || line[i] == ',') {
                        cells[ci++] = line.substr(start, i - start);
                        start = i + 1;
                    }
                }
                f_best = std::min(f_best, std::strtod(cells[1].c_str(), nullptr));
                run.rows.push_back(std::move(cells));
            }
            runs.push_back(std::move(run));
        }
    } catch (const std::exception& e) {
        err << "export: " << e.what() << '\n';
        return kExitData;
    }

    auto excess = [&](double F) {
        const double e = F - f_best;
        return std::pair<double, bool>{std::max(e, DBL_EPSILON), e < DBL_EPSILON};
    };

    if (opt.format == "csv") {
        std::ofstream cf(opt.out);
        cf << "method,k,F,grad_norm,lambda,dist_to_opt,elapsed_s,excess_F,clipped\n";
        for (const Run& r : runs)
            for (const auto& row : r.rows) {
                const auto [e, clipped] = excess(std::strtod(row[1].c_str(), nullptr));
                cf << r.method << ',' << row[0] << ',' << row[1] << ',' << row[2] << ','
                   << row[3] << ',' << row[4] << ',' << row[5] << ',' << fmt17(e) << ','
                   << (clipped ? 1 : 0) << '\n';
            }
    } else {
        json j;
        j["dataset_id"] = dataset_id;
        j["f_best"] = f_best;
        j["series"] = json::array();
        for (const Run& r : runs) {
            json s;
            s["method"] = r.method;
            s["rows"] = json::array();
            for (const auto& row : r.rows) {
                const double F = std::strtod(row[1].c_str(), nullptr);
                const auto [e, clipped] = excess(F);
                json o{{"k", std::strtoull(row[0].c_str(), nullptr, 10)},
                       {"F", F},
                       {"grad_norm", std::strtod(row[2].c_str(), nullptr)},
                       {"lambda", std::strtod(row[3].c_str(), nullptr)},
                       {"elapsed_s", std::strtod(row[5].c_str(), nullptr)},
                       {"excess_F", e},
                       {"clipped", clipped}};
                if (!row[4].empty()) o["dist_to_opt"] = std::strtod(row[4].c_str(), nullptr);
                s["rows"].push_back(std::move(o));
            }
            j["series"].push_back(std::move(s));
        }
        std::ofstream jf(opt.out);
        jf << j.dump(2) << '\n';
    }

    out << "wrote " << opt.out << " (" << runs.size() << " runs)\n";
    return kExitOk;
}

}  // namespace proxkit::cli
