#pragma once

#include <string>
#include <vector>

namespace oat {

/// Strength-2 orthogonal array over equal-level factors.
///
/// Entries are 1-based level indices, matching the usual printed form of
/// these tables; the 0-based field elements used during construction are
/// shifted at this boundary and nowhere else.
struct OrthogonalArray {
    int levels = 0;        // h
    int factors = 0;       // k (columns)
    int rows = 0;          // N
    int strength = 2;
    int index_lambda = 0;  // N / h^2
    std::vector<std::vector<int>> entries; // rows x factors, values in [1, h]

    int at(int row, int factor) const {
        return entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(factor)];
    }
};

/// Result of checking the two composition principles. Violations are report
/// content, not errors: an unbalanced array yields pass == false.
struct OaVerification {
    bool pass = false;
    int expected_column_count = 0; // N / h
    int expected_pair_count = 0;   // N / h^2 (the index lambda)
    std::string first_violation;   // empty when pass

    // column_counts[c][level-1] = occurrences of level in column c
    std::vector<std::vector<int>> column_counts;
    // pair_counts[pair][a-1][b-1] for column pairs (c1 < c2) in row-major
    // order of (c1, c2); pair_columns lists the (c1, c2) for each entry.
    std::vector<std::pair<int, int>> pair_columns;
    std::vector<std::vector<std::vector<int>>> pair_counts;
};

/// Rao-Hamming construction of a strength-2 array with k columns over h
/// levels. Picks the smallest t >= 2 with k <= (h^t - 1)/(h - 1), giving
/// N = h^t rows; for k <= h + 1 this is the classic h^2-row table.
///
/// Rows are the vectors of GF(h)^t enumerated with the first coordinate as
/// the least significant base-h digit; columns are the normalized nonzero
/// vectors (first nonzero coordinate equal to 1) in lexicographic order,
/// truncated to the first k. Entry (r, c) is the inner product, plus one.
/// The output is deterministic: identical (h, k) yields identical entries.
OrthogonalArray construct_oa(int levels, int factors);

/// Exhaustive check of both composition principles with exact counts.
OaVerification verify_oa(const OrthogonalArray& array);

/// Copy with rows sorted lexicographically; two arrays are row-permutation
/// equivalent iff their canonical forms have equal entries.
OrthogonalArray canonical_row_sort(const OrthogonalArray& array);

/// Largest k constructible for h with the row-count caps applied, or 0 when
/// h is not a supported prime power.
long max_constructible_factors(int levels);

} // namespace oat
