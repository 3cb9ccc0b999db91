#include "oat/orthogonal_array.hpp"

#include "oat/errors.hpp"
#include "oat/galois_field.hpp"

#include <algorithm>
#include <string>

namespace oat {

namespace {

// Keeps pathological requests from allocating huge tables. An array at both
// caps is still ~10^7 ints, well within desk scale.
constexpr long kMaxRows = 100000;
constexpr long kMaxCells = 10000000;

// Normalized representatives of the projective points of GF(h)^t: nonzero
// vectors whose first nonzero coordinate is 1, in lexicographic order.
std::vector<std::vector<int>> projective_columns(int order, int t) {
    std::vector<std::vector<int>> columns;
    std::vector<int> v(static_cast<std::size_t>(t), 0);
    while (true) {
        int first_nonzero = -1;
        for (int i = 0; i < t; ++i) {
            if (v[static_cast<std::size_t>(i)] != 0) {
                first_nonzero = i;
                break;
            }
        }
        if (first_nonzero >= 0 && v[static_cast<std::size_t>(first_nonzero)] == 1) {
            columns.push_back(v);
        }
        // lexicographic increment, last coordinate fastest
        int pos = t - 1;
        while (pos >= 0 && v[static_cast<std::size_t>(pos)] == order - 1) {
            v[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
        ++v[static_cast<std::size_t>(pos)];
    }
    return columns;
}

long column_capacity(int order, int t) {
    long width = 0;
    long power = 1;
    for (int i = 0; i < t; ++i) {
        power *= order;
    }
    width = (power - 1) / (order - 1);
    return width;
}

} // namespace

long max_constructible_factors(int levels) {
    if (!GaloisField::is_prime_power(levels)) {
        return 0;
    }
    long best = 0;
    long rows = static_cast<long>(levels) * levels;
    for (int t = 2; rows <= kMaxRows; ++t, rows *= levels) {
        const long width = column_capacity(levels, t);
        const long usable = std::min(width, kMaxCells / rows);
        best = std::max(best, usable);
    }
    return best;
}

OrthogonalArray construct_oa(int levels, int factors) {
    if (levels < 2) {
        throw Error(ErrorKind::UnsupportedLevels, "need at least 2 levels");
    }
    if (factors < 1) {
        throw Error(ErrorKind::TooManyFactors, "need at least 1 factor");
    }
    if (!GaloisField::is_prime_power(levels)) {
        throw Error(ErrorKind::UnsupportedLevels,
                    std::to_string(levels) +
                        " levels: not a prime power and no catalog entry applies");
    }
    const GaloisField field(levels);

    // Smallest t >= 2 whose projective space has at least k points.
    int t = 2;
    long rows = static_cast<long>(levels) * levels;
    while (column_capacity(levels, t) < factors) {
        ++t;
        rows *= levels;
        if (rows > kMaxRows) {
            throw Error(ErrorKind::TooManyFactors,
                        std::to_string(factors) + " factors at " + std::to_string(levels) +
                            " levels exceeds the construction bound");
        }
    }
    if (rows * factors > kMaxCells) {
        throw Error(ErrorKind::TooManyFactors,
                    "array would exceed " + std::to_string(kMaxCells) + " cells");
    }

    auto columns = projective_columns(levels, t);
    columns.resize(static_cast<std::size_t>(factors));

    OrthogonalArray array;
    array.levels = levels;
    array.factors = factors;
    array.rows = static_cast<int>(rows);
    array.strength = 2;
    array.index_lambda = static_cast<int>(rows / (static_cast<long>(levels) * levels));
    array.entries.assign(static_cast<std::size_t>(rows),
                         std::vector<int>(static_cast<std::size_t>(factors), 0));

    std::vector<int> v(static_cast<std::size_t>(t), 0);
    for (long r = 0; r < rows; ++r) {
        long digits = r;
        for (int i = 0; i < t; ++i) {
            v[static_cast<std::size_t>(i)] = static_cast<int>(digits % levels);
            digits /= levels;
        }
        for (int c = 0; c < factors; ++c) {
            int dot = 0;
            for (int i = 0; i < t; ++i) {
                dot = field.add(dot, field.mul(v[static_cast<std::size_t>(i)],
                                               columns[static_cast<std::size_t>(c)]
                                                      [static_cast<std::size_t>(i)]));
            }
            array.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = dot + 1;
        }
    }
    return array;
}

OaVerification verify_oa(const OrthogonalArray& array) {
    OaVerification report;
    const int h = array.levels;
    const int k = array.factors;
    const int n = array.rows;

    auto fail = [&report](const std::string& message) {
        if (report.first_violation.empty()) {
            report.first_violation = message;
        }
    };

    if (h < 2 || k < 1 || n < 1 ||
        array.entries.size() != static_cast<std::size_t>(n)) {
        report.first_violation = "malformed array dimensions";
        return report;
    }
    for (const auto& row : array.entries) {
        if (row.size() != static_cast<std::size_t>(k)) {
            report.first_violation = "ragged row";
            return report;
        }
        for (int value : row) {
            if (value < 1 || value > h) {
                report.first_violation =
                    "entry " + std::to_string(value) + " outside [1, " + std::to_string(h) + "]";
                return report;
            }
        }
    }
    if (n % (h * h) != 0) {
        fail("row count " + std::to_string(n) + " not divisible by h^2");
    }

    report.expected_column_count = n / h;
    report.expected_pair_count = n / (h * h);

    report.column_counts.assign(static_cast<std::size_t>(k),
                                std::vector<int>(static_cast<std::size_t>(h), 0));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
            ++report.column_counts[static_cast<std::size_t>(c)]
                                  [static_cast<std::size_t>(array.at(r, c) - 1)];
        }
    }
    for (int c = 0; c < k; ++c) {
        for (int level = 1; level <= h; ++level) {
            const int count = report.column_counts[static_cast<std::size_t>(c)]
                                                  [static_cast<std::size_t>(level - 1)];
            if (count != report.expected_column_count) {
                fail("column " + std::to_string(c + 1) + ": level " + std::to_string(level) +
                     " appears " + std::to_string(count) + " times, expected " +
                     std::to_string(report.expected_column_count));
            }
        }
    }

    for (int c1 = 0; c1 < k; ++c1) {
        for (int c2 = c1 + 1; c2 < k; ++c2) {
            std::vector<std::vector<int>> counts(static_cast<std::size_t>(h),
                                                 std::vector<int>(static_cast<std::size_t>(h), 0));
            for (int r = 0; r < n; ++r) {
                ++counts[static_cast<std::size_t>(array.at(r, c1) - 1)]
                        [static_cast<std::size_t>(array.at(r, c2) - 1)];
            }
            for (int a = 1; a <= h; ++a) {
                for (int b = 1; b <= h; ++b) {
                    const int count =
                        counts[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
                    if (count != report.expected_pair_count) {
                        fail("columns (" + std::to_string(c1 + 1) + ", " + std::to_string(c2 + 1) +
                             "): pair (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") appears " + std::to_string(count) + " times, expected " +
                             std::to_string(report.expected_pair_count));
                    }
                }
            }
            report.pair_columns.emplace_back(c1 + 1, c2 + 1);
            report.pair_counts.push_back(std::move(counts));
        }
    }

    report.pass = report.first_violation.empty();
    return report;
}

OrthogonalArray canonical_row_sort(const OrthogonalArray& array) {
    OrthogonalArray sorted = array;
    std::sort(sorted.entries.begin(), sorted.entries.end());
    return sorted;
}

} // namespace oat
