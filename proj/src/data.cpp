#include "proxkit/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "proxkit/rng.hpp"

namespace proxkit {

namespace {

constexpr char kMagic[4] = {'P', 'X', 'G', '1'};

std::string column_label(const LabeledDataset& ds, std::size_t j) {
    if (ds.column_names && j < ds.column_names->size()) return (*ds.column_names)[j];
    return "column " + std::to_string(j);
}

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

Mat ar_correlation_cholesky(std::size_t d, double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("ar_correlation_cholesky: need 0 <= rho < 1");
    Mat C(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            C(i, j) = std::pow(rho, std::abs(static_cast<double>(i) - static_cast<double>(j)));

    Mat Q(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = C(i, j);
            for (std::size_t t = 0; t < j; ++t) s -= Q(i, t) * Q(j, t);
            if (i == j) {
                if (s <= 0.0)
                    throw DataError("ar_correlation_cholesky: matrix not positive definite");
                Q(i, j) = std::sqrt(s);
            } else {
                Q(i, j) = s / Q(j, j);
            }
        }
    }
    return Q;
}

LabeledDataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.s > spec.d)
        throw std::invalid_argument("generate_synthetic: s must be <= d");
    const std::size_t d = spec.d, m = spec.m;

    Rng rng_x(derive_stream(spec.seed, 0));
    Rng rng_a(derive_stream(spec.seed, 1));
    Rng rng_noise(derive_stream(spec.seed, 2));

    Vec x_star(d, 0.0);
    for (std::size_t i = 0; i < spec.s; ++i) x_star[i] = rng_x.uniform_open01();

    const Mat Q = ar_correlation_cholesky(d, spec.rho);
    Mat A(m, d);
    Vec z(d);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < d; ++j) z[j] = rng_a.normal();
        double* row = &A.data[r * d];
        for (std::size_t i = 0; i < d; ++i) {
            double s = 0.0;
            const double* qi = &Q.data[i * d];
            for (std::size_t j = 0; j <= i; ++j) s += qi[j] * z[j];
            row[i] = s;
        }
    }

    Vec b = matvec(A, x_star);
    for (std::size_t r = 0; r < m; ++r) b[r] += rng_noise.normal();

    LabeledDataset ds;
    ds.problem = LassoProblem(std::move(A), std::move(b), 0.01);
    ds.ground_truth = std::move(x_star);
    ds.spec = spec;
    return ds;
}

LabeledDataset load_csv(const std::string& path, const std::string& target_column) {
    std::ifstream in(path);
    if (!in)
        throw DataError("load_csv: cannot open '" + path + "'");

    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cell += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    cell += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            } else if (c != '\r') {
                cell += c;
            }
        }
        cells.push_back(cell);
        return cells;
    };

    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw DataError("load_csv: '" + path + "' has no header row");
    const std::vector<std::string> header = split(line);

    std::size_t target_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == target_column) target_idx = j;
    if (target_idx == header.size())
        throw DataError("load_csv: target column '" + target_column + "' not found in '" + path + "'");

    std::vector<std::string> feature_names;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != target_idx) feature_names.push_back(header[j]);

    std::vector<double> values;
    Vec b;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != header.size())
            throw DataError("load_csv: row " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const std::string& cell = cells[j];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw DataError("load_csv: non-numeric value '" + cell + "' at row " +
                                std::to_string(line_no) + ", column '" + header[j] + "'");
            if (j == target_idx)
                b.push_back(v);
            else
                values.push_back(v);
        }
    }
    if (b.empty())
        throw DataError("load_csv: '" + path + "' has no data rows");

    const std::size_t d = feature_names.size();
    Mat A(b.size(), d);
    A.data = std::move(values);

    LabeledDataset ds;
    ds.problem = LassoProblem(std::move(A), std::move(b), 0.01);
    ds.column_names = std::move(feature_names);
    return ds;
}

void write_csv(const LabeledDataset& ds, const std::string& path,
               const std::string& target_column) {
    std::ofstream out(path);
    if (!out)
        throw DataError("write_csv: cannot open '" + path + "' for writing");
    const std::size_t d = ds.problem.d();
    std::string buf;
    for (std::size_t j = 0; j < d; ++j) {
        buf += (ds.column_names && j < ds.column_names->size()) ? (*ds.column_names)[j]
                                                                : "f" + std::to_string(j);
        buf += ',';
    }
    buf += target_column;
    buf += '\n';
    for (std::size_t r = 0; r < ds.problem.m(); ++r) {
        for (std::size_t j = 0; j < d; ++j) {
            format_double(buf, ds.problem.A(r, j));
            buf += ',';
        }
        format_double(buf, ds.problem.b[r]);
        buf += '\n';
    }
    out << buf;
}

std::pair<LabeledDataset, StandardizeStats> standardize(
    const LabeledDataset& ds, const std::optional<StandardizeStats>& stats) {
    const std::size_t m = ds.problem.m(), d = ds.problem.d();
    StandardizeStats st;
    if (stats) {
        st = *stats;
        if (st.feature_mean.size() != d || st.feature_sd.size() != d)
            throw DimensionError("standardize: stats dimension mismatch");
    } else {
        st.feature_mean.assign(d, 0.0);
        st.feature_sd.assign(d, 0.0);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t j = 0; j < d; ++j) st.feature_mean[j] += ds.problem.A(r, j);
        for (std::size_t j = 0; j < d; ++j) st.feature_mean[j] /= static_cast<double>(m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t j = 0; j < d; ++j) {
                const double e = ds.problem.A(r, j) - st.feature_mean[j];
                st.feature_sd[j] += e * e;
            }
        for (std::size_t j = 0; j < d; ++j) {
            st.feature_sd[j] = std::sqrt(st.feature_sd[j] / static_cast<double>(m));
            if (st.feature_sd[j] == 0.0)
                throw DataError("standardize: zero-variance column '" + column_label(ds, j) + "'");
        }
        double tm = 0.0;
        for (double v : ds.problem.b) tm += v;
        tm /= static_cast<double>(m);
        double tv = 0.0;
        for (double v : ds.problem.b) tv += (v - tm) * (v - tm);
        st.target_mean = tm;
        st.target_sd = std::sqrt(tv / static_cast<double>(m));
        if (st.target_sd == 0.0)
            throw DataError("standardize: zero-variance target column");
    }

    LabeledDataset out = ds;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < d; ++j)
            out.problem.A(r, j) = (ds.problem.A(r, j) - st.feature_mean[j]) / st.feature_sd[j];
    for (std::size_t r = 0; r < m; ++r)
        out.problem.b[r] = (ds.problem.b[r] - st.target_mean) / st.target_sd;
    return {std::move(out), std::move(st)};
}

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& ds,
                                                           double fraction,
                                                           std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("train_test_split: fraction must be in (0,1)");
    const std::size_t m = ds.problem.m();
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(fraction * static_cast<double>(m)));
    if (n_train == 0 || n_train == m)
        throw DataError("train_test_split: fraction " + std::to_string(fraction) +
                        " produces an empty split for " + std::to_string(m) + " rows");

    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    Rng rng(seed);
    for (std::size_t i = m - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
        std::swap(idx[i], idx[j]);
    }
    std::vector<std::size_t> train(idx.begin(), idx.begin() + n_train);
    std::vector<std::size_t> test(idx.begin() + n_train, idx.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());

    auto take = [&](const std::vector<std::size_t>& rows) {
        const std::size_t d = ds.problem.d();
        Mat A(rows.size(), d);
        Vec b(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::memcpy(&A.data[r * d], &ds.problem.A.data[rows[r] * d], d * sizeof(double));
            b[r] = ds.problem.b[rows[r]];
        }
        LabeledDataset out;
        out.problem = LassoProblem(std::move(A), std::move(b), ds.problem.alpha);
        out.ground_truth = ds.ground_truth;
        out.column_names = ds.column_names;
        return out;
    };
    return {take(train), take(test)};
}

void save_dataset(const LabeledDataset& ds, const std::string& path) {
    if (!ds.spec || !ds.ground_truth)
        throw DataError("save_dataset: only synthetic datasets are cached");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("save_dataset: cannot open '" + path + "' for writing");
    const SyntheticSpec& sp = *ds.spec;
    out.write(kMagic, 4);
    const std::uint64_t header[4] = {sp.d, sp.m, sp.s, sp.seed};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    out.write(reinterpret_cast<const char*>(ds.problem.A.data.data()),
              static_cast<std::streamsize>(ds.problem.A.data.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(ds.problem.b.data()),
              static_cast<std::streamsize>(ds.problem.b.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(ds.ground_truth->data()),
              static_cast<std::streamsize>(ds.ground_truth->size() * sizeof(double)));
    if (!out)
        throw DataError("save_dataset: write failed for '" + path + "'");
}

LabeledDataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("load_dataset: cannot open '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("load_dataset: '" + path + "' is not a PXG1 dataset file");
    std::uint64_t header[4];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in)
        throw DataError("load_dataset: truncated header in '" + path + "'");
    SyntheticSpec sp;
    sp.d = header[0];
    sp.m = header[1];
    sp.s = header[2];
    sp.seed = header[3];

    Mat A(sp.m, sp.d);
    Vec b(sp.m);
    Vec x_star(sp.d);
    in.read(reinterpret_cast<char*>(A.data.data()),
            static_cast<std::streamsize>(A.data.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(b.data()),
            static_cast<std::streamsize>(b.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(x_star.data()),
            static_cast<std::streamsize>(x_star.size() * sizeof(double)));
    if (!in)
        throw DataError("load_dataset: truncated payload in '" + path + "'");

    LabeledDataset ds;
    ds.problem = LassoProblem(std::move(A), std::move(b), 0.01);
    ds.ground_truth = std::move(x_star);
    ds.spec = sp;
    return ds;
}

std::string spec_hash(const SyntheticSpec& spec) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    };
    std::uint64_t rho_bits;
    std::memcpy(&rho_bits, &spec.rho, sizeof(rho_bits));
    mix(spec.d);
    mix(spec.m);
    mix(spec.s);
    mix(spec.seed);
    mix(rho_bits);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace proxkit
