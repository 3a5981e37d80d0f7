#pragma once

#include <iosfwd>

#include "proxkit/data.hpp"
#include "proxkit/theory.hpp"

namespace proxkit::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitVerify = 4;

struct GenOptions {
    SyntheticSpec spec;
    std::string out_dir = "cache";
};
int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

struct SolveOptions {
    std::string dataset;
    std::string target = "target";
    std::string method = "prox-const";  // gd | prox-const | prox-var | adam
    double alpha = 0.01;
    SolverConfig cfg;
    AdamConfig adam;
    bool standardize_csv = false;
    bool log_target = false;
    std::string out_prefix = "run";
};
int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err);

struct BenchOptions {
    std::vector<std::string> datasets;
    std::vector<std::string> methods = {"prox-const", "prox-var"};
    std::size_t repeats = 7;
    double alpha = 0.01;
    SolverConfig cfg;
    AdamConfig adam;
    std::string out_csv;
    bool parallel = false;
};
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

enum class CheckStatus { Passed, Failed, Skipped };

struct CheckOutcome {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    std::string reason;  // set when skipped
    BoundReport report;
};

/// The six bound checks on one compliant random instance per seed.
/// `checks` empty means all of them.
std::vector<CheckOutcome> run_random_suite(std::uint64_t seed,
                                           const std::vector<std::string>& checks = {});

struct VerifyOptions {
    bool random_suite = false;
    std::string dataset;
    std::string target = "target";
    std::uint64_t seed = 7;
    std::size_t instances = 20;
    std::vector<std::string> checks;
    std::string json_out;
};
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

struct ExportOptions {
    std::vector<std::string> runs;
    std::string format = "csv";
    std::string out;
};
int cmd_export(const ExportOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace proxkit::cli
