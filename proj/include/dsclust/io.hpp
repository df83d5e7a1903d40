#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "dsclust/affinity.hpp"
#include "dsclust/error.hpp"
#include "dsclust/simplex.hpp"

namespace dsclust {

/// Shortest decimal representation that round-trips the exact double,
/// locale-independent ('.' decimal separator always).
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Locale-independent parse of a full token; returns false on trailing junk.
inline bool parse_double(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    if (first == last) return false;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace detail

/// Points CSV: one point per row, comma-separated reals. A non-numeric
/// first row is treated as a header and skipped.
inline PointCloud read_points_csv(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty()) throw InvalidInputError("points file is empty: " + path);

    std::size_t first_row = 0;
    {
        double v;
        const auto fields = detail::split_csv_line(lines[0]);
        bool numeric = true;
        for (const auto& f : fields)
            if (!parse_double(f, v)) numeric = false;
        if (!numeric) first_row = 1;
    }
    if (first_row >= lines.size())
        throw InvalidInputError("points file has a header but no data rows: " + path);

    const std::size_t d = detail::split_csv_line(lines[first_row]).size();
    const std::size_t m = lines.size() - first_row;
    Matrix pts(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < m; ++r) {
        const auto fields = detail::split_csv_line(lines[first_row + r]);
        if (fields.size() != d)
            throw InvalidInputError("row " + std::to_string(first_row + r + 1) + " has " +
                                    std::to_string(fields.size()) + " columns, expected " +
                                    std::to_string(d));
        for (std::size_t c = 0; c < d; ++c) {
            double v;
            if (!parse_double(fields[c], v))
                throw InvalidInputError("cannot parse number at row " +
                                        std::to_string(first_row + r + 1) + ", column " +
                                        std::to_string(c + 1));
            pts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    PointCloud pc{std::move(pts)};
    validate_points(pc);
    return pc;
}

/// Affinity CSV: square comma-separated matrix.
inline Matrix read_affinity_csv(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty()) throw InvalidInputError("affinity file is empty: " + path);
    const std::size_t n = lines.size();
    Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const auto fields = detail::split_csv_line(lines[r]);
        if (fields.size() != n)
            throw InvalidInputError("affinity matrix is not square: row " +
                                    std::to_string(r + 1) + " has " +
                                    std::to_string(fields.size()) + " columns, expected " +
                                    std::to_string(n));
        for (std::size_t c = 0; c < n; ++c) {
            double v;
            if (!parse_double(fields[c], v))
                throw InvalidInputError("cannot parse number at row " + std::to_string(r + 1) +
                                        ", column " + std::to_string(c + 1));
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return a;
}

inline void write_points_csv(const std::string& path, const Matrix& pts,
                             const std::vector<int>* labels = nullptr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    for (Eigen::Index r = 0; r < pts.rows(); ++r) {
        for (Eigen::Index c = 0; c < pts.cols(); ++c) {
            if (c > 0) out << ',';
            out << format_double(pts(r, c));
        }
        if (labels) out << ',' << (*labels)[static_cast<std::size_t>(r)];
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

/// Deterministic cross-platform Gaussian sampler: mt19937_64 uniforms fed
/// through the Box-Muller transform (std::normal_distribution is
/// implementation-defined and would break byte-identical outputs).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    double uniform01() {
        // 53 random bits -> [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Synthetic blobs: for each center in order, pts_per_center points drawn as
/// center + unit-variance Gaussian noise per coordinate. Returns the points
/// and the generating-center index of each row.
inline std::pair<Matrix, std::vector<int>> generate_blobs(const Matrix& centers,
                                                          int pts_per_center,
                                                          std::uint64_t seed) {
    if (centers.rows() < 1) throw InvalidParameterError("generate_blobs: need >= 1 center");
    if (pts_per_center < 1)
        throw InvalidParameterError("generate_blobs: need >= 1 point per center");
    const Eigen::Index d = centers.cols();
    const Eigen::Index m = centers.rows() * pts_per_center;
    Matrix pts(m, d);
    std::vector<int> labels(static_cast<std::size_t>(m));
    GaussianSource noise(seed);
    Eigen::Index row = 0;
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        for (int p = 0; p < pts_per_center; ++p, ++row) {
            for (Eigen::Index j = 0; j < d; ++j) pts(row, j) = centers(c, j) + noise.next();
            labels[static_cast<std::size_t>(row)] = static_cast<int>(c);
        }
    }
    return {std::move(pts), std::move(labels)};
}

}  // namespace dsclust
