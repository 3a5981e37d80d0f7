#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace proxkit {

using Vec = std::vector<double>;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix. Problem sizes here are small enough that
/// nothing fancier than contiguous storage is warranted.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Mat identity(std::size_t n);
};

double norm2(const Vec& v);
double dot(const Vec& a, const Vec& b);

Vec matvec(const Mat& A, const Vec& x);
Vec matvec_transpose(const Mat& A, const Vec& y);

enum class StopReason { MaxIters, GradTol, NonMonotone };
const char* to_string(StopReason r);

struct TraceRecord {
    std::size_t k = 0;
    double objective = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;
    std::optional<double> dist_to_opt;
    double elapsed_s = 0.0;
};

struct IterationTrace {
    std::vector<TraceRecord> records;
    // Filled only when the solver is asked to keep iterates (theory checks
    // need them); aligned index-for-index with records.
    std::vector<Vec> iterates;
};

struct SolveResult {
    Vec final_x;
    std::size_t iterations = 0;
    StopReason stop_reason = StopReason::MaxIters;
    IterationTrace trace;
};

}  // namespace proxkit
