#include "proxkit/core.hpp"

#include <cmath>

namespace proxkit {

Mat Mat::identity(std::size_t n) {
    Mat I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw DimensionError("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec matvec(const Mat& A, const Vec& x) {
    if (A.cols != x.size())
        throw DimensionError("matvec: cols(A) != dim(x)");
    Vec y(A.rows, 0.0);
    const double* a = A.data.data();
    for (std::size_t i = 0; i < A.rows; ++i) {
        double s = 0.0;
        const double* row = a + i * A.cols;
        for (std::size_t j = 0; j < A.cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vec matvec_transpose(const Mat& A, const Vec& y) {
    if (A.rows != y.size())
        throw DimensionError("matvec_transpose: rows(A) != dim(y)");
    Vec x(A.cols, 0.0);
    const double* a = A.data.data();
    for (std::size_t i = 0; i < A.rows; ++i) {
        const double yi = y[i];
        const double* row = a + i * A.cols;
        for (std::size_t j = 0; j < A.cols; ++j) x[j] += row[j] * yi;
    }
    return x;
}

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::MaxIters: return "MaxIters";
        case StopReason::GradTol: return "GradTol";
        case StopReason::NonMonotone: return "NonMonotone";
    }
    return "Unknown";
}

}  // namespace proxkit
